from fractions import Fraction
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import Sequence, Tuple

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry.boxes import Box, BoxUnion, grid_boxes
from fatcantor.geometry.rationals import to_vector

__all__ = [
    'TileReport',
    'tile_check',
]


@dataclass(frozen=True)
class TileReport(object):
    """
    Exact tiling of a rescaled box by translates of one refinement box.

    The base box I = [0, a) and its rescaling I_q = [0, q*a) are both tiled
    by translates of R = [0, a_1/s_1) x ... (q_i = p_i/s_i in lowest terms),
    so any translation invariant measure satisfies mu(I_q) = (prod q_i) mu(I).
    """

    base: Box
    scales: Tuple[Fraction, ...]
    scaled: Box
    refinement: Box
    base_count: int
    count: int
    refinement_measure: Fraction
    scaled_measure: Fraction
    union_matches: bool
    base_union_matches: bool

    @property
    def measure_matches(self) -> bool:
        return self.count * self.refinement_measure == self.scaled_measure

    @property
    def ok(self) -> bool:
        return self.union_matches and self.base_union_matches and self.measure_matches


def tile_check(base: Box, scales: Sequence, max_translates: int = 100_000) -> TileReport:
    scales = to_vector(scales)
    if len(scales) != base.dim:
        raise PreconditionError(f'Need {base.dim} scale factors, got {len(scales)}.')
    if any(q <= 0 for q in scales):
        raise PreconditionError(f'Scale factors must be positive: {scales}.')
    if not base.is_bounded or base.is_empty:
        raise PreconditionError(f'Base box {base} must be bounded with nonempty interior.')

    widths = base.widths
    origin = (Fraction(0),) * base.dim
    anchored = Box(origin, widths)
    scaled = Box(origin, tuple(q * a for q, a in zip(scales, widths)))

    step = tuple(a / q.denominator for a, q in zip(widths, scales))
    counts = tuple(q.numerator for q in scales)
    base_counts = tuple(q.denominator for q in scales)

    count = reduce(mul, counts, 1)
    base_count = reduce(mul, base_counts, 1)
    if max(count, base_count) > max_translates:
        raise BudgetError(
            f'Tiling needs {max(count, base_count)} translates, above the limit {max_translates}.',
            partial={'count': count, 'base_count': base_count},
        )

    refinement = Box(origin, step)
    tiles = BoxUnion.from_boxes(grid_boxes(origin, step, counts), base.dim)
    base_tiles = BoxUnion.from_boxes(grid_boxes(origin, step, base_counts), base.dim)

    return TileReport(
        base=anchored,
        scales=scales,
        scaled=scaled,
        refinement=refinement,
        base_count=base_count,
        count=count,
        refinement_measure=refinement.volume(),
        scaled_measure=scaled.volume(),
        union_matches=tiles == BoxUnion.of(scaled),
        base_union_matches=base_tiles == BoxUnion.of(anchored),
    )
