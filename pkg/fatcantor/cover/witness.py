"""
Uncovered-box witnesses: an open sub-box of a solid target that misses
every element of a finite family of ring elements.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, BoxUnion, OpenBox
from fatcantor.cantor import (
    CantorSchedule,
    GapCertificate,
    NeedsDeeperStage,
    DEFAULT_MAX_STAGE_EXPONENT,
    DEFAULT_WITNESS_MARGIN,
    find_gap,
    stage_approx_within,
)
from fatcantor.ring import RingExpr, Gen
from fatcantor.cover.hull import positive_hull

__all__ = [
    'WitnessStrategy',
    'LeafCertificate',
    'UncoveredWitness',
    'find_uncovered_box',
    'verify_witness',
]

logger = logging.getLogger(__name__)


class WitnessStrategy(Enum):
    SEQUENTIAL = 'sequential'
    SWEEP = 'sweep'


@dataclass(frozen=True)
class LeafCertificate(object):
    """
    Why the witness misses leaf `leaf` of the hull of element `element`:
    its closed clip is missed (stage None), or no closed stage-`stage` cell
    of the translate meets the box. Sequential witnesses also carry the gap.
    """
    element: int
    leaf: int
    stage: Optional[int] = None
    gap: Optional[GapCertificate] = None


@dataclass(frozen=True)
class UncoveredWitness(object):
    box: OpenBox
    stage: int
    certificates: Tuple[LeafCertificate, ...]
    strategy: WitnessStrategy = WitnessStrategy.SEQUENTIAL


def _hull_leaves(elements: Sequence[RingExpr]) -> List[Tuple[int, int, Gen]]:
    return [
        (i, k, leaf)
        for i, e in enumerate(elements)
        for k, leaf in enumerate(positive_hull(e).leaves())
    ]


def _misses_clip(box: OpenBox, leaf: Gen) -> bool:
    return leaf.clip.is_empty or box.misses(leaf.clip)


def _initial_box(target: Box, margin: Fraction) -> OpenBox:
    if not target.is_bounded or target.is_empty:
        raise PreconditionError(f'Target {target} must be bounded with positive side lengths.')
    box = target.interior()
    for axis in range(box.dim):
        box = box.shrink(axis, margin)
    return box


def _sequential(schedule: CantorSchedule, box: OpenBox, leaves, stage_cap: int, margin: Fraction):
    certificates = []
    for i, k, leaf in leaves:
        if _misses_clip(box, leaf):
            certificates.append(LeafCertificate(i, k))
            continue
        result = find_gap(schedule, leaf.x, box, stage_cap, margin)
        if isinstance(result, NeedsDeeperStage):
            logger.debug(f'No gap up to stage {stage_cap} for element {i}, leaf {k}.')
            return result
        box = result.box
        certificates.append(LeafCertificate(i, k, result.stage, result))

    stage = max((c.stage for c in certificates if c.stage is not None), default=0)
    return UncoveredWitness(box, stage, tuple(certificates), WitnessStrategy.SEQUENTIAL)


def _sweep(schedule: CantorSchedule, box: OpenBox, leaves, stage_cap: int, margin: Fraction,
           max_stage_exponent: int):
    """
    Exact complement of all closed leaf cells inside `box`, stage by stage;
    the first remaining canonical box, shrunk on every axis, is the witness.
    """
    relevant = [(i, k, leaf) for i, k, leaf in leaves if not _misses_clip(box, leaf)]
    last_stage = min(stage_cap, max_stage_exponent // schedule.d)
    region = BoxUnion.of(box.as_box())

    for n in range(last_stage + 1):
        cells = [stage_approx_within(schedule, n, box, leaf.x) for _, _, leaf in relevant]
        remaining = BoxUnion.combine([region] + cells, _outside_all, schedule.d)
        if remaining.is_empty:
            continue

        first = remaining.boxes[0]
        witness = first.interior()
        for axis in range(witness.dim):
            witness = witness.shrink(axis, margin)

        certificates = tuple(
            LeafCertificate(i, k, None if _misses_clip(witness, leaf) else n)
            for i, k, leaf in leaves
        )
        return UncoveredWitness(witness, n, certificates, WitnessStrategy.SWEEP)

    return NeedsDeeperStage(last_stage)


def _outside_all(membership: Tuple[bool, ...]) -> bool:
    return membership[0] and not any(membership[1:])


def find_uncovered_box(schedule: CantorSchedule,
                       target: Box,
                       elements: Sequence[RingExpr],
                       stage_cap: int,
                       margin: Fraction = DEFAULT_WITNESS_MARGIN,
                       sweep_fallback: bool = True,
                       max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT):
    """
    Open box inside the target's interior that misses every element.

    The target interior is shrunk by `margin` on every axis; then every leaf
    of every element's positive hull is processed in order (elements first,
    leaves second), and the box is replaced by a gap witness of that leaf's
    translate whenever it still meets the leaf's closed clip. When a leaf
    needs a stage above `stage_cap`, the exact sweep over stage cells is
    tried if `sweep_fallback` is set.

    Returns:
        UncoveredWitness or NeedsDeeperStage
    """
    box = _initial_box(target, margin)
    for e in elements:
        if e.dim != schedule.d:
            raise PreconditionError(f'Element dimension {e.dim} vs schedule dimension {schedule.d}.')

    leaves = _hull_leaves(elements)
    result = _sequential(schedule, box, leaves, stage_cap, margin)
    if isinstance(result, UncoveredWitness) or not sweep_fallback:
        return result

    logger.debug('Sequential shrinking ran out of stages, trying the stage sweep.')
    return _sweep(schedule, box, leaves, stage_cap, margin, max_stage_exponent)


def verify_witness(schedule: CantorSchedule,
                   target: Box,
                   elements: Sequence[RingExpr],
                   witness: UncoveredWitness) -> bool:
    """
    Exact replay from the witness box and stage alone: the box lies in the
    target interior and, for every hull leaf, misses the closed clip or all
    closed stage cells of the translate. Stage sets decrease, so checking at
    the witness stage covers every per-leaf stage below it.
    """
    box = witness.box
    if not target.is_bounded or not box.within(target.interior()):
        return False
    for _, _, leaf in _hull_leaves(elements):
        if _misses_clip(box, leaf):
            continue
        if not box.misses_all(stage_approx_within(schedule, witness.stage, box, leaf.x)):
            return False
    return True
