import logging
from dataclasses import dataclass
from typing import List, Sequence

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.ring.expressions import RingExpr, Gen, Union, Diff
from fatcantor.ring.ring import CantorRing

__all__ = [
    'RnFamily',
    'generate_rn',
    'DEFAULT_REFERENCE_STAGE',
    'DEFAULT_MAX_EXPRESSIONS',
]

logger = logging.getLogger(__name__)

DEFAULT_REFERENCE_STAGE = 4
DEFAULT_MAX_EXPRESSIONS = 2000


@dataclass(frozen=True)
class RnFamily(object):
    """
    Level n of the increasing family R_1 = pool, R_{k+1} = {A | B, A - B}.

    `merged` counts candidates dropped because their stage set at
    `reference_stage` coincided with an earlier one; distinct sets that only
    agree at that stage are merged too.
    """
    level: int
    expressions: List[RingExpr]
    reference_stage: int
    candidates: int
    merged: int


def generate_rn(ring: CantorRing,
                pool: Sequence[Gen],
                n: int,
                reference_stage: int = DEFAULT_REFERENCE_STAGE,
                max_expressions: int = DEFAULT_MAX_EXPRESSIONS) -> RnFamily:
    """
    Enumerates R_n over a pool of generators.

    Level k+1 keeps every member of level k (A | A = A) followed by the new
    sets A | B and A - B for A, B in level k, in that order. A candidate is
    kept when its canonical stage set differs from all kept ones; the first
    expression producing a set stays its representative.

    Args:
        ring (CantorRing): evaluator of stage sets
        pool (Sequence[Gen]): the generators of R_1
        n (int): level, n >= 1
        reference_stage (int): stage of the deduplication key
        max_expressions (int): budget on the size of any level

    Returns:
        RnFamily
    """
    if n < 1:
        raise PreconditionError(f'Levels start at 1, got {n}.')
    if not pool:
        raise PreconditionError('Empty generator pool.')
    if not all(isinstance(g, Gen) for g in pool):
        raise PreconditionError('The pool must consist of generators.')

    seen = {}
    level = []
    candidates = 0

    def admit(e: RingExpr):
        nonlocal candidates
        candidates += 1
        key = ring.approx_set(e, reference_stage)
        if key in seen:
            return
        seen[key] = e
        level.append(e)
        if len(level) > max_expressions:
            raise BudgetError(
                f'R_n enumeration exceeded {max_expressions} expressions.',
                partial={'level': k, 'count': len(level), 'candidates': candidates},
            )

    k = 1
    for g in pool:
        admit(g)

    for k in range(2, n + 1):
        previous = list(level)
        for a in previous:
            for b in previous:
                admit(Union(a, b))
                admit(Diff(a, b))
        logger.debug(f'R_{k}: {len(level)} sets from {candidates} candidates.')

    return RnFamily(
        level=n,
        expressions=level,
        reference_stage=reference_stage,
        candidates=candidates,
        merged=candidates - len(level),
    )
