import logging
from dataclasses import dataclass
from fractions import Fraction

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry import Box, to_fraction
from fatcantor.cantor import CantorSchedule, DEFAULT_MAX_STAGE_EXPONENT, limit_measure
from fatcantor.ring import CantorRing, Gen, MeasureBounds, RingExpr, clip_to_box

__all__ = [
    'LevelSolution',
    'range_function',
    'solve_level',
    'DEFAULT_MAX_BISECTIONS',
    'DEFAULT_MAX_RANGE_STAGE',
]

logger = logging.getLogger(__name__)

DEFAULT_MAX_BISECTIONS = 200
DEFAULT_MAX_RANGE_STAGE = 256


@dataclass(frozen=True)
class LevelSolution(object):
    x: Fraction
    target: Fraction
    tol: Fraction
    bounds: MeasureBounds
    iterations: int

    @property
    def midpoint(self) -> Fraction:
        return (self.bounds.lower + self.bounds.upper) / 2


def _half_space_part(schedule: CantorSchedule, x: Fraction) -> RingExpr:
    d = schedule.d
    whole = Gen((Fraction(0),) * d, Box.unit(d))
    return clip_to_box(whole, Box.half_space(d, 0, x, upper=False))


def range_function(schedule: CantorSchedule, x, stage: int = None, tol=None,
                   max_stage: int = DEFAULT_MAX_RANGE_STAGE,
                   max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT) -> MeasureBounds:
    """
    Certified bounds for F(x) = lambda(C^d & {x_1 < x}): C^d clipped to the
    half-space, then the ring's certified bounds.

    With `stage` the bounds are those of one stage and both are nondecreasing
    in x. With `tol` the stage is deepened from 0 until the bounds are at most
    `tol` wide; stages past the box cap fall back to cell counting.
    """
    ring = CantorRing(schedule, max_stage_exponent)
    e = _half_space_part(schedule, to_fraction(x))

    if stage is not None:
        return ring.certified_bounds(e, stage)

    if tol is None:
        raise PreconditionError('range_function needs a stage or a tolerance.')
    tol = to_fraction(tol)
    if tol <= 0:
        raise PreconditionError(f'Tolerance must be positive, got {tol}.')

    best = None
    for n in range(max_stage + 1):
        best = ring.certified_bounds(e, n)
        if best.width <= tol:
            return best
    raise BudgetError(f'Range bounds wider than {tol} at stage {max_stage}.', partial={'bounds': best})


def solve_level(schedule: CantorSchedule, target, tol, max_bisections: int = DEFAULT_MAX_BISECTIONS) -> LevelSolution:
    """
    Bisection on [0, 1] for x with |midpoint of F(x) bounds - target| <= tol;
    bounds are evaluated to width tol / 4.
    """
    target, tol = to_fraction(target), to_fraction(tol)
    limit = limit_measure(schedule)
    if not 0 < target < limit:
        raise PreconditionError(f'Target must lie in (0, {limit}), got {target}.')
    if tol <= 0:
        raise PreconditionError(f'Tolerance must be positive, got {tol}.')

    lo, hi = Fraction(0), Fraction(1)
    for iteration in range(1, max_bisections + 1):
        x = (lo + hi) / 2
        bounds = range_function(schedule, x, tol=tol / 4)
        midpoint = (bounds.lower + bounds.upper) / 2
        logger.debug(f'Bisection {iteration}: F({x}) in [{bounds.lower}, {bounds.upper}].')
        if abs(midpoint - target) <= tol:
            return LevelSolution(x, target, tol, bounds, iteration)
        if midpoint < target:
            lo = x
        else:
            hi = x

    raise BudgetError(f'No level found after {max_bisections} bisections.',
                      partial={'lo': lo, 'hi': hi})
