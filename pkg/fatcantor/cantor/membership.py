from enum import Enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from fatcantor.cantor.schedule import CantorSchedule
from fatcantor.errors import PreconditionError
from fatcantor.geometry import to_vector

__all__ = [
    'MembershipStatus',
    'Membership',
    'membership',
    'line_membership',
]


class MembershipStatus(Enum):
    IN = 'in'
    OUT = 'out'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Membership(object):
    """
    Outcome of the stage trace of a point.

    IN: stage at which the last coordinate became a surviving-interval
    endpoint (endpoints are never removed later). OUT: first stage at which
    a coordinate lies in a removed open gap, `axis` naming that coordinate.
    UNKNOWN: the stage cap that ran out.
    """
    status: MembershipStatus
    stage: int
    axis: Optional[int] = None

    @property
    def is_in(self) -> bool:
        return self.status is MembershipStatus.IN

    @property
    def is_out(self) -> bool:
        return self.status is MembershipStatus.OUT


def line_membership(schedule: CantorSchedule, x: Fraction, stage_cap: int) -> Membership:
    if x < 0 or x > 1:
        return Membership(MembershipStatus.OUT, 0)

    a, b = Fraction(0), Fraction(1)
    if x == a or x == b:
        return Membership(MembershipStatus.IN, 0)

    for k in range(1, stage_cap + 1):
        length = schedule.interval_length(k)
        left_end = a + length
        right_start = left_end + schedule.removal(k)
        if x < left_end:
            b = left_end
        elif x == left_end or x == right_start:
            return Membership(MembershipStatus.IN, k)
        elif x < right_start:
            return Membership(MembershipStatus.OUT, k)
        else:
            a = right_start
    return Membership(MembershipStatus.UNKNOWN, stage_cap)


def membership(schedule: CantorSchedule, x: Sequence, stage_cap: int) -> Membership:
    """
    Three-valued decision of x in C^d by tracing every coordinate down the
    stages up to `stage_cap`.

    >>> membership(CantorSchedule(), ['1/2'], 8).status
    <MembershipStatus.OUT: 'out'>
    """
    x = to_vector(x)
    if len(x) != schedule.d:
        raise PreconditionError(f'Point has dimension {len(x)}, schedule has {schedule.d}.')
    if stage_cap < 0:
        raise PreconditionError(f'Stage cap must be nonnegative, got {stage_cap}.')

    results = [line_membership(schedule, xi, stage_cap) for xi in x]

    outs = [(r.stage, axis) for axis, r in enumerate(results) if r.is_out]
    if outs:
        stage, axis = min(outs)
        return Membership(MembershipStatus.OUT, stage, axis)
    if all(r.is_in for r in results):
        return Membership(MembershipStatus.IN, max(r.stage for r in results))
    return Membership(MembershipStatus.UNKNOWN, stage_cap)
