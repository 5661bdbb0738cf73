import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, BoxUnion, to_fraction, to_vector
from fatcantor.packing.dyadic import CubeFamily, MergeStep, merge, round_to_dyadic

__all__ = [
    'Placement',
    'PackingLayout',
    'pack_cover',
    'verify_layout',
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Placement(object):
    j: int
    t: Tuple[Fraction, ...]


@dataclass(frozen=True)
class PackingLayout(object):
    placements: Tuple[Placement, ...]
    target: Box
    merge_tree: Tuple[MergeStep, ...]
    selected: int
    alpha: Fraction
    rounded_volume: Fraction
    family_volume: Fraction


def pack_cover(family: CubeFamily, target_side=Fraction(1, 2), alpha=Fraction(1)) -> PackingLayout:
    """
    Covers [0, alpha * target_side]^d by translates of the family's cubes.

    Sides are rescaled by 1/alpha and rounded down to powers of two, equal
    cubes are merged, and the smallest merged cube of rescaled side >= 1/2
    (ties by lowest id) is placed at the origin. Its merge tree is unfolded
    into translates of the original cubes, keeping only the sub-cubes that
    meet the target.

    Args:
        family (CubeFamily): cubes [0, a_j]^d
        target_side (Fraction): 0 < target_side <= 1/2
        alpha (Fraction): scale, alpha > 0

    Returns:
        PackingLayout
    """
    target_side, alpha = to_fraction(target_side), to_fraction(alpha)
    if not 0 < target_side <= Fraction(1, 2):
        raise PreconditionError(f'Target side must lie in (0, 1/2], got {target_side}.')
    if alpha <= 0:
        raise PreconditionError(f'Scale must be positive, got {alpha}.')

    d = family.d
    scaled = family.rescaled(alpha)
    volume = scaled.volume
    if volume < 1:
        raise PreconditionError(f'Sum of (a_j / alpha)^d is {volume}, covering needs at least 1.')

    rounded = round_to_dyadic(scaled.sides)
    rounded_volume = sum((s ** d for _, s in rounded), Fraction(0))
    assert rounded_volume * 2 ** d >= volume

    result = merge([k for k, _ in rounded], d)
    assert sum((c.side ** d for c in result.final), Fraction(0)) == rounded_volume
    assert max(Counter(c.level for c in result.final).values()) <= 2 ** d - 1

    adequate = [c for c in result.final if c.side >= Fraction(1, 2)]
    # with all sides below 1/2 the levels -2, -3, ... hold at most 2^d - 1 cubes each,
    # so the volume would stay below 2^-d
    assert adequate, 'no merged cube of side >= 1/2'
    selected = min(adequate, key=lambda c: (c.side, c.id))

    target = Box((Fraction(0),) * d, (alpha * target_side,) * d)
    placements = _unfold(result.children(), selected.id, selected.level, (Fraction(0),) * d,
                         len(family), target, alpha)

    layout = PackingLayout(
        placements=tuple(placements),
        target=target,
        merge_tree=result.steps,
        selected=selected.id,
        alpha=alpha,
        rounded_volume=rounded_volume,
        family_volume=family.volume,
    )
    assert verify_layout(layout, family), 'layout does not cover the target'
    logger.debug(f'Packed {len(family)} cubes with {len(placements)} placements.')
    return layout


def _unfold(children, cube_id: int, level: int, corner: Tuple[Fraction, ...], n_inputs: int,
            target: Box, alpha: Fraction) -> List[Placement]:
    side = Fraction(2) ** level
    box = Box(tuple(alpha * c for c in corner), tuple(alpha * (c + side) for c in corner))
    if box.intersect(target).is_empty:
        return []
    if cube_id < n_inputs:
        return [Placement(cube_id, box.lo)]

    step = children[cube_id]
    placements = []
    for child, offset in zip(step.constituents, step.offsets):
        child_corner = tuple(c + o for c, o in zip(corner, offset))
        placements += _unfold(children, child, step.level, child_corner, n_inputs, target, alpha)
    return placements


def verify_layout(layout: PackingLayout, family: CubeFamily) -> bool:
    """
    Exact check that every placement is a translate of a distinct input cube
    and that the placed half-open cubes cover the half-open target (so the
    closed cubes cover the closed target).
    """
    indices = [p.j for p in layout.placements]
    if len(set(indices)) != len(indices):
        return False
    if any(not 0 <= j < len(family) for j in indices):
        return False

    boxes = []
    for p in layout.placements:
        t = to_vector(p.t)
        if len(t) != family.d:
            return False
        side = family.sides[p.j]
        boxes.append(Box(t, tuple(x + side for x in t)))

    placed = BoxUnion.from_boxes(boxes, family.d)
    return BoxUnion.of(layout.target).issubset(placed)
