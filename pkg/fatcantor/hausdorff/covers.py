"""
Explicit delta-covers and their gauge sums: exact upper bounds for
nu_delta^*(E) = inf sum h(diam E_j) over covers by sets of diameter < delta.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Sequence, Tuple

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry import BoxUnion, ExtendedRational, grid_boxes, sqrt_rational, to_fraction
from fatcantor.cantor import (
    CantorSchedule,
    DEFAULT_MAX_STAGE_EXPONENT,
    stage_approx,
)
from fatcantor.hausdorff.gauge import Gauge, cube_diameter

__all__ = [
    'DeltaCover',
    'DiamVolumeReport',
    'cantor_cover',
    'nu_delta_upper',
    'stage_trend',
    'diam_volume_check',
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeltaCover(object):
    """
    `count` cubes of one side length, `corners` listing their lower corners.
    `stage` is the Cantor stage (or the dyadic exponent of the side for box
    unions); `delta` is None for stage covers built without a delta.
    """
    d: int
    side: Fraction
    count: int
    corners: Tuple[Tuple[Fraction, ...], ...]
    gauge: Gauge
    gauge_sum: ExtendedRational
    stage: int
    delta: Optional[Fraction] = None

    @property
    def diameter(self) -> ExtendedRational:
        return cube_diameter(self.side, self.d)


def _check_delta(delta) -> Fraction:
    delta = to_fraction(delta)
    if delta <= 0:
        raise PreconditionError(f'delta must be positive, got {delta}.')
    return delta


def _below(side: Fraction, d: int, delta: Fraction) -> bool:
    # side * sqrt(d) < delta
    return side * side * d < delta * delta


def cantor_cover(schedule: CantorSchedule, gauge: Gauge, n: int,
                 max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT,
                 with_corners: bool = True, delta: Fraction = None) -> DeltaCover:
    """The 2^(n d) closed stage-n cells of C^d as a cover."""
    d = schedule.d
    side = schedule.interval_length(n)
    count = 2 ** (n * d)
    corners = ()
    if with_corners:
        corners = tuple(box.lo for box in stage_approx(schedule, n, max_stage_exponent))
    gauge_sum = gauge(cube_diameter(side, d)) * count
    return DeltaCover(d, side, count, corners, gauge, gauge_sum, n, delta)


def nu_delta_upper(target, gauge: Gauge, delta, stage_cap: int, stage: int = None,
                   max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT) -> Tuple[DeltaCover, ExtendedRational]:
    """
    A cover by cubes of diameter < delta and its gauge sum.

    For a CantorSchedule the cover is the set of stage-n cells, n the least
    stage with l_n sqrt(d) < delta, or `stage` when given. For a BoxUnion
    every box is chopped into a grid of cubes of side 2^-j anchored at its
    lower corner, j the least such exponent.

    Returns:
        (DeltaCover, gauge sum)
    """
    delta = _check_delta(delta)

    if isinstance(target, CantorSchedule):
        d = target.d
        if stage is None:
            stage = next((n for n in range(stage_cap + 1) if _below(target.interval_length(n), d, delta)), None)
            if stage is None:
                raise BudgetError(
                    f'No stage up to {stage_cap} has cells of diameter below {delta}.',
                    partial={'stage_cap': stage_cap, 'delta': delta},
                )
        elif not _below(target.interval_length(stage), d, delta):
            raise PreconditionError(f'Stage {stage} cells have diameter >= {delta}.')
        cover = cantor_cover(target, gauge, stage, max_stage_exponent, delta=delta)
        return cover, cover.gauge_sum

    if isinstance(target, BoxUnion):
        return _box_union_cover(target, gauge, delta, stage_cap, max_stage_exponent)

    raise PreconditionError(f'Cannot cover a {type(target).__name__}.')


def _box_union_cover(u: BoxUnion, gauge: Gauge, delta: Fraction, stage_cap: int,
                     max_stage_exponent: int) -> Tuple[DeltaCover, ExtendedRational]:
    d = u.dim
    if u.is_empty:
        cover = DeltaCover(d, Fraction(0), 0, (), gauge, ExtendedRational(0), 0, delta)
        return cover, cover.gauge_sum
    if not u.is_bounded:
        raise PreconditionError('Cannot cover an unbounded union by finitely many cubes.')

    j = next((j for j in range(stage_cap + 1) if _below(Fraction(1, 2 ** j), d, delta)), None)
    if j is None:
        raise BudgetError(f'Dyadic side 2^-{stage_cap} is not below delta {delta}.',
                          partial={'stage_cap': stage_cap, 'delta': delta})
    side = Fraction(1, 2 ** j)

    counts = [tuple(ceil(w / side) for w in box.widths) for box in u.boxes]
    total = sum(_product(c) for c in counts)
    if total > 2 ** max_stage_exponent:
        raise BudgetError(f'Cover needs {total} cubes, above the cap 2^{max_stage_exponent}.',
                          partial={'cubes': total, 'side': side})

    corners = tuple(
        cube.lo
        for box, c in zip(u.boxes, counts)
        for cube in grid_boxes(box.lo, (side,) * d, c)
    )
    gauge_sum = gauge(cube_diameter(side, d)) * total
    cover = DeltaCover(d, side, total, corners, gauge, gauge_sum, j, delta)
    return cover, gauge_sum


def _product(values: Sequence[int]) -> int:
    result = 1
    for v in values:
        result *= v
    return result


def stage_trend(schedule: CantorSchedule, gauge: Gauge, stages: Sequence[int]) -> List[DeltaCover]:
    """
    Stage covers for several stages: upper bounds for nu_delta^* with delta
    just above the cell diameter, approaching the Hausdorff value from above
    as delta shrinks.
    """
    return [cantor_cover(schedule, gauge, n, with_corners=False) for n in stages]


@dataclass(frozen=True)
class DiamVolumeReport(object):
    """lambda(E) <= (diam E)^d: E fits into an axis cube of side diam E."""
    measure: Fraction
    diameter_squared: Fraction
    diameter: ExtendedRational
    diameter_power: ExtendedRational

    @property
    def holds(self) -> bool:
        return self.measure <= self.diameter_power


def diam_volume_check(u: BoxUnion) -> DiamVolumeReport:
    squared = u.diameter_squared()
    diameter = sqrt_rational(squared)
    return DiamVolumeReport(
        measure=u.measure(),
        diameter_squared=squared,
        diameter=diameter,
        diameter_power=diameter ** u.dim,
    )
