import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Tuple

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry import Box, BoxUnion, to_fraction
from fatcantor.cantor import (
    CantorSchedule,
    DEFAULT_MAX_STAGE_EXPONENT,
    stage_approx_within,
    stage_defect,
    leaf_measure_bounds,
)
from fatcantor.ring.expressions import RingExpr, Gen
from fatcantor.ring.clipping import clip_to_box

__all__ = [
    'MeasureBounds',
    'SplitReport',
    'ClipReport',
    'CantorRing',
]


@dataclass(frozen=True)
class MeasureBounds(object):
    lower: Fraction
    upper: Fraction
    stage: int
    leaf_count: int

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value) -> bool:
        return self.lower <= to_fraction(value) <= self.upper

    def meets(self, other: 'MeasureBounds') -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def tighten(self, lower: Fraction, upper: Fraction) -> 'MeasureBounds':
        return MeasureBounds(max(self.lower, lower), min(self.upper, upper), self.stage, self.leaf_count)


@dataclass(frozen=True)
class SplitReport(object):
    """lambda(S) against lambda(S & A) + lambda(S & A^c) at one stage."""
    stage: int
    half_space: Box
    whole: Fraction
    inside: Fraction
    outside: Fraction

    @property
    def holds(self) -> bool:
        return self.whole == self.inside + self.outside


@dataclass(frozen=True)
class ClipReport(object):
    stage: int
    box: Box
    clipped_measure: Fraction
    intersected_measure: Fraction
    identical: bool


@lru_cache(maxsize=4096)
def _leaf_approx(schedule: CantorSchedule, leaf: Gen, n: int) -> BoxUnion:
    if leaf.clip.is_empty:
        return BoxUnion.empty(schedule.d)
    return stage_approx_within(schedule, n, leaf.clip, leaf.x).clip(leaf.clip)


def _possible(evaluate: Callable) -> Callable[[Tuple[bool, ...]], bool]:
    """
    Membership vector m -> whether some a <= m (componentwise) satisfies the
    expression. The true leaf memberships of a point are always below its
    stage memberships.
    """
    @lru_cache(maxsize=None)
    def possible(m: Tuple[bool, ...]) -> bool:
        choices = [(False, True) if mi else (False,) for mi in m]
        return any(evaluate(a) for a in product(*choices))

    return possible


class CantorRing(object):
    """
    Stage evaluation and certified measures of ring expressions over one
    fat Cantor schedule.

    Args:
        schedule (CantorSchedule): the generating Cantor set
        max_stage_exponent (int): cap on n * d for stage evaluation
    """

    def __init__(self, schedule: CantorSchedule, max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT):
        self.schedule = schedule
        self.max_stage_exponent = max_stage_exponent
        self.log = logging.getLogger(__name__)

    @property
    def d(self) -> int:
        return self.schedule.d

    def _check_dim(self, e: RingExpr):
        if e.dim != self.d:
            raise PreconditionError(f'Expression dimension {e.dim} vs schedule dimension {self.d}.')

    def _check(self, e: RingExpr, n: int):
        self._check_dim(e)
        self.schedule.check_stage(n, self.max_stage_exponent)

    def leaf_approx(self, leaf: Gen, n: int) -> BoxUnion:
        self._check(leaf, n)
        return _leaf_approx(self.schedule, leaf, n)

    def approx_set(self, e: RingExpr, n: int) -> BoxUnion:
        """
        The stage-n set: every leaf replaced by (A_n^d + x) & J, the tree
        evaluated exactly in one n-ary sweep.
        """
        self._check(e, n)
        leaves, evaluate = e.predicate()
        operands = [_leaf_approx(self.schedule, leaf, n) for leaf in leaves]
        return BoxUnion.combine(operands, lru_cache(maxsize=None)(evaluate), self.d)

    def measure_bounds(self, e: RingExpr, n: int) -> MeasureBounds:
        self._check(e, n)
        leaves, evaluate = e.predicate()
        operands = [_leaf_approx(self.schedule, leaf, n) for leaf in leaves]

        approx = BoxUnion.combine(operands, lru_cache(maxsize=None)(evaluate), self.d)
        possible = BoxUnion.combine(operands, _possible(evaluate), self.d)

        slack = len(leaves) * stage_defect(self.schedule, n)
        measure = approx.measure()
        lower = max(Fraction(0), measure - slack)
        upper = min(possible.measure(), measure + slack)

        self.log.debug(f'Stage {n}: lambda(S_n) = {measure}, slack {slack}, bounds [{lower}, {upper}].')
        return MeasureBounds(lower, upper, n, e.leaf_count)

    def certified_bounds(self, e: RingExpr, n: int) -> MeasureBounds:
        """
        measure_bounds, tightened by cell counting when e is a single
        generator. Past the box cap a single generator keeps the cell count
        alone, which needs no stage set.
        """
        if not isinstance(e, Gen):
            return self.measure_bounds(e, n)
        if n * self.d <= self.max_stage_exponent:
            return self.measure_bounds(e, n).tighten(*leaf_measure_bounds(self.schedule, e.x, e.clip, n))
        self._check_dim(e)
        return MeasureBounds(*leaf_measure_bounds(self.schedule, e.x, e.clip, n), n, 1)

    def premeasure(self, e: RingExpr, tol) -> MeasureBounds:
        """
        Deepens n = 1, 2, ... until the certified bounds are at most `tol`
        wide. Raises BudgetError with the best bounds once the stage cap is hit.
        """
        tol = to_fraction(tol)
        if tol <= 0:
            raise PreconditionError(f'Tolerance must be positive, got {tol}.')

        best = None
        n = 1
        while n * self.d <= self.max_stage_exponent:
            bounds = self.certified_bounds(e, n)
            if best is None or bounds.width < best.width:
                best = bounds
            if bounds.width <= tol:
                self.log.debug(f'Premeasure reached width {bounds.width} at stage {n}.')
                return bounds
            n += 1

        raise BudgetError(
            f'Stage cap 2^{self.max_stage_exponent} reached before width {tol}.',
            partial={'bounds': best},
            suggested_stage=self.max_stage_exponent // self.d,
        )

    def split_identity_check(self, e: RingExpr, half_space: Box, n: int) -> SplitReport:
        if half_space.half_space_axis is None:
            raise PreconditionError(f'{half_space} is not an axis half-space.')
        complement = half_space.complement_half_space()

        whole = self.approx_set(e, n).measure()
        inside = self.approx_set(clip_to_box(e, half_space), n).measure()
        outside = self.approx_set(clip_to_box(e, complement), n).measure()

        report = SplitReport(n, half_space, whole, inside, outside)
        if not report.holds:
            self.log.error(f'Splitting failed at stage {n}: {whole} != {inside} + {outside}.')
        return report

    def clip_check(self, e: RingExpr, box: Box, n: int) -> ClipReport:
        clipped = self.approx_set(clip_to_box(e, box), n)
        intersected = self.approx_set(e, n).clip(box)
        return ClipReport(
            stage=n,
            box=box,
            clipped_measure=clipped.measure(),
            intersected_measure=intersected.measure(),
            identical=clipped == intersected,
        )
