"""
Symmetric fat Cantor sets with removal lengths r_k = c * rho^k.

Stage n of the 1-D construction keeps 2^n closed intervals of equal length
l_n; each stage-(n-1) interval loses its open middle of length r_n. The
d-dimensional set is the d-fold product, and its stage approximation is the
product of 1-D stages.
"""

import logging
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import List, Sequence, Tuple

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry import Box, BoxUnion, INF, NEG_INF, to_fraction, to_vector, is_finite

__all__ = [
    'CantorSchedule',
    'stage_intervals',
    'stage_approx',
    'stage_approx_within',
    'intervals_meeting',
    'gaps_meeting',
    'limit_measure',
    'stage_measure',
    'stage_defect',
    'DEFAULT_MAX_STAGE_EXPONENT',
]

logger = logging.getLogger(__name__)

DEFAULT_MAX_STAGE_EXPONENT = 16


@dataclass(frozen=True)
class CantorSchedule(object):
    d: int = 1
    c: Fraction = Fraction(1)
    rho: Fraction = Fraction(1, 4)

    def __post_init__(self):
        c, rho = to_fraction(self.c), to_fraction(self.rho)
        object.__setattr__(self, 'c', c)
        object.__setattr__(self, 'rho', rho)

        if not isinstance(self.d, int) or self.d < 1:
            raise PreconditionError(f'Dimension must be a positive integer, got {self.d!r}.')
        if c <= 0 or rho <= 0:
            raise PreconditionError(f'c and rho must be positive, got c={c}, rho={rho}.')
        if 2 * rho >= 1:
            raise PreconditionError(f'Need 2 rho < 1, got rho={rho}.')
        if c * rho / (1 - 2 * rho) >= 1:
            raise PreconditionError(
                f'Total removed length c rho / (1 - 2 rho) = {c * rho / (1 - 2 * rho)} must be < 1.'
            )

    def removal(self, k: int) -> Fraction:
        """Length r_k of the open middle removed from every interval at stage k >= 1."""
        if k < 1:
            raise PreconditionError(f'Removal stages start at 1, got {k}.')
        return self.c * self.rho ** k

    def line_measure(self, n: int) -> Fraction:
        """lambda_1(A_n) = 1 - sum_{k<=n} 2^{k-1} r_k."""
        _check_stage(n)
        two_rho = 2 * self.rho
        return 1 - self.c * self.rho * (1 - two_rho ** n) / (1 - two_rho)

    @property
    def line_limit(self) -> Fraction:
        return 1 - self.c * self.rho / (1 - 2 * self.rho)

    def interval_length(self, n: int) -> Fraction:
        return self.line_measure(n) / 2 ** n

    def cell_measure(self, n: int) -> Fraction:
        """1-D measure of the part of C inside any single stage-n interval."""
        _check_stage(n)
        return self.line_limit / 2 ** n

    @property
    def is_feasible(self) -> bool:
        # l_{k-1} - r_k = 2 l_k and l_k = lambda_1(A_k) / 2^k >= lambda_1(C) / 2^k > 0
        return self.line_limit > 0

    def check_stage(self, n: int, max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT):
        _check_stage(n)
        if n * self.d > max_stage_exponent:
            suggested = max_stage_exponent // self.d
            raise BudgetError(
                f'Stage {n} in dimension {self.d} needs 2^{n * self.d} boxes, '
                f'above the cap 2^{max_stage_exponent}; try stage {suggested}.',
                partial={'stage': n, 'd': self.d, 'max_stage_exponent': max_stage_exponent},
                suggested_stage=suggested,
            )


def _check_stage(n: int):
    if not isinstance(n, int) or n < 0:
        raise PreconditionError(f'Stage must be a nonnegative integer, got {n!r}.')


def limit_measure(schedule: CantorSchedule) -> Fraction:
    return schedule.line_limit ** schedule.d


def stage_measure(schedule: CantorSchedule, n: int) -> Fraction:
    return schedule.line_measure(n) ** schedule.d


def stage_defect(schedule: CantorSchedule, n: int) -> Fraction:
    """lambda_d(A_n^d minus C^d), exact."""
    return stage_measure(schedule, n) - limit_measure(schedule)


@lru_cache(maxsize=64)
def _left_endpoints(schedule: CantorSchedule, n: int) -> Tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(0),)
    step = schedule.interval_length(n) + schedule.removal(n)
    return tuple(x for a in _left_endpoints(schedule, n - 1) for x in (a, a + step))


def stage_intervals(schedule: CantorSchedule, n: int,
                    max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT) -> List[Tuple[Fraction, Fraction]]:
    """
    Closed surviving 1-D intervals [a, b] of stage n, left to right.

    >>> stage_intervals(CantorSchedule(), 1)
    [(Fraction(0, 1), Fraction(3, 8)), (Fraction(5, 8), Fraction(1, 1))]
    """
    _check_stage(n)
    if n > max_stage_exponent:
        raise BudgetError(f'1-D stage {n} above the cap {max_stage_exponent}.',
                          suggested_stage=max_stage_exponent)
    length = schedule.interval_length(n)
    return [(a, a + length) for a in _left_endpoints(schedule, n)]


@lru_cache(maxsize=32)
def _stage_approx(schedule: CantorSchedule, n: int) -> BoxUnion:
    length = schedule.interval_length(n)
    lefts = _left_endpoints(schedule, n)
    # separated intervals: the product in lexicographic order is already canonical
    boxes = tuple(
        Box._trusted(corner, tuple(a + length for a in corner))
        for corner in product(lefts, repeat=schedule.d)
    )
    return BoxUnion(boxes, schedule.d)


def stage_approx(schedule: CantorSchedule, n: int,
                 max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT) -> BoxUnion:
    """A_n^d as a half-open box union; the closures of its boxes are the closed stage cells."""
    schedule.check_stage(n, max_stage_exponent)
    return _stage_approx(schedule, n)


def intervals_meeting(schedule: CantorSchedule, n: int, lo, hi) -> List[Fraction]:
    """
    Left endpoints of the closed stage-n intervals meeting the closed window
    [lo, hi], found by descending only into intervals that meet the window.
    `lo` and `hi` may be infinity markers.
    """
    _check_stage(n)
    lefts = [Fraction(0)] if lo <= 1 and hi >= 0 else []
    for k in range(1, n + 1):
        length = schedule.interval_length(k)
        step = length + schedule.removal(k)
        lefts = [x for a in lefts for x in (a, a + step) if x <= hi and x + length >= lo]
    return lefts


def stage_approx_within(schedule: CantorSchedule, n: int, window, shift: Sequence = None) -> BoxUnion:
    """
    The boxes of A_n^d + shift whose closures meet the closure of `window`
    (a Box or an OpenBox), without materializing the whole stage.
    """
    d = schedule.d
    shift = to_vector(shift) if shift is not None else (Fraction(0),) * d
    if len(shift) != d or window.dim != d:
        raise PreconditionError(f'Dimension mismatch: schedule {d}, shift {len(shift)}, window {window.dim}.')

    length = schedule.interval_length(n)
    per_axis = []
    for lo, hi, t in zip(window.lo, window.hi, shift):
        lefts = intervals_meeting(schedule, n, lo - t if is_finite(lo) else lo, hi - t if is_finite(hi) else hi)
        if not lefts:
            return BoxUnion.empty(d)
        per_axis.append([a + t for a in lefts])

    boxes = tuple(
        Box._trusted(corner, tuple(a + length for a in corner))
        for corner in product(*per_axis)
    )
    return BoxUnion(boxes, d)


def gaps_meeting(schedule: CantorSchedule, m: int, lo, hi) -> List[Tuple]:
    """
    Open 1-D gaps removed exactly at stage m that meet the open interval (lo, hi),
    left to right. Stage 0 gaps are the two unbounded components outside [0, 1].
    """
    if m == 0:
        gaps = [(NEG_INF, Fraction(0)), (Fraction(1), INF)]
    else:
        left_length = schedule.interval_length(m)
        removed = schedule.removal(m)
        gaps = [(a + left_length, a + left_length + removed)
                for a in intervals_meeting(schedule, m - 1, lo, hi)]
    return [(g_lo, g_hi) for g_lo, g_hi in gaps
            if g_lo < hi and lo < g_hi]


