__all__ = [
    'FatCantorError',
    'PreconditionError',
    'UnboundedError',
    'BudgetError',
]


class FatCantorError(Exception):
    pass


class PreconditionError(FatCantorError, ValueError):
    pass


class UnboundedError(PreconditionError):
    pass


class BudgetError(FatCantorError, RuntimeError):
    """
    Raised when a stage cap or a search budget runs out before the requested
    result is certified.

    Args:
        message (str): human-readable diagnostics
        partial (dict): best partial result obtained before the budget ran out
        suggested_stage (int): a stage that fits into the cap, if one exists
    """

    def __init__(self, message: str, partial: dict = None, suggested_stage: int = None):
        super().__init__(message)
        self.partial = partial or {}
        self.suggested_stage = suggested_stage
