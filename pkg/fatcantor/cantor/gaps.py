import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from fatcantor.errors import PreconditionError
from fatcantor.cantor.schedule import CantorSchedule, gaps_meeting, stage_approx_within
from fatcantor.geometry import Box, OpenBox, to_vector, to_fraction

__all__ = [
    'GapCertificate',
    'NeedsDeeperStage',
    'find_gap',
    'verify_gap_certificate',
    'as_open_box',
    'DEFAULT_WITNESS_MARGIN',
]

logger = logging.getLogger(__name__)

DEFAULT_WITNESS_MARGIN = Fraction(1, 4)


@dataclass(frozen=True)
class GapCertificate(object):
    """Open box inside a stage-`stage` gap of C^d + t along `axis`."""
    stage: int
    box: OpenBox
    axis: int


@dataclass(frozen=True)
class NeedsDeeperStage(object):
    stage: int


def as_open_box(j: Union[Box, OpenBox]) -> OpenBox:
    if isinstance(j, OpenBox):
        return j
    if isinstance(j, Box):
        return j.interior()
    raise PreconditionError(f'Expected a box, got {type(j).__name__}.')


def find_gap(schedule: CantorSchedule,
             t: Sequence,
             j: Union[Box, OpenBox],
             stage_cap: int,
             margin: Fraction = DEFAULT_WITNESS_MARGIN) -> Union[GapCertificate, NeedsDeeperStage]:
    """
    Finds an open sub-box of j that misses C^d + t.

    Stages are tried in increasing order, axes in order within a stage, and
    the leftmost gap of that stage meeting j along the axis is used. The
    witness is j restricted to the gap along that axis and shrunk by
    `margin` of the restricted side on both ends, so its closure stays
    inside the open gap.

    Args:
        schedule (CantorSchedule): the Cantor set
        t (Sequence): translation vector
        j (Box or OpenBox): box with positive side lengths
        stage_cap (int): deepest stage to try
        margin (Fraction): relative shrink, 0 < margin < 1/2

    Returns:
        GapCertificate or NeedsDeeperStage(stage_cap)
    """
    t = to_vector(t)
    j = as_open_box(j)
    margin = to_fraction(margin)
    if j.dim != schedule.d or len(t) != schedule.d:
        raise PreconditionError(f'Dimension mismatch: schedule {schedule.d}, box {j.dim}, shift {len(t)}.')
    if not 0 < margin < Fraction(1, 2):
        raise PreconditionError(f'Witness margin must lie in (0, 1/2), got {margin}.')

    for m in range(stage_cap + 1):
        for axis in range(schedule.d):
            shift = t[axis]
            gaps = gaps_meeting(schedule, m, j.lo[axis] - shift, j.hi[axis] - shift)
            if not gaps:
                continue
            g_lo, g_hi = gaps[0]
            restricted = j.restrict(axis, g_lo + shift, g_hi + shift)
            witness = restricted.shrink(axis, margin)
            logger.debug(f'Gap of stage {m} on axis {axis} for {j}: {witness}')
            return GapCertificate(stage=m, box=witness, axis=axis)

    return NeedsDeeperStage(stage_cap)


def verify_gap_certificate(schedule: CantorSchedule, t: Sequence, certificate: GapCertificate,
                           inside: Union[Box, OpenBox] = None) -> bool:
    """
    Exact replay: no closed stage cell of A_m^d + t meets the open witness
    (and the witness lies in `inside` when given).
    """
    box = certificate.box
    if inside is not None and not box.within(as_open_box(inside)):
        return False
    cells = stage_approx_within(schedule, certificate.stage, box, t)
    return box.misses_all(cells)
