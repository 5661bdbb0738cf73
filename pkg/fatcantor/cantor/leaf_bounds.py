from fractions import Fraction
from typing import Sequence, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.cantor.schedule import CantorSchedule
from fatcantor.geometry import Box, to_vector

__all__ = [
    'line_cell_bounds',
    'leaf_measure_bounds',
]


def line_cell_bounds(schedule: CantorSchedule, n: int, lo, hi) -> Tuple[Fraction, Fraction]:
    """
    Bounds for lambda_1(C cap [lo, hi)).

    Every stage-n interval holds the same share cell_measure(n) of C. Whole
    subtrees inside the window are counted without descending; cells cut by
    a window end contribute at most min(share, overlap).
    """
    cell = schedule.cell_measure(n)
    full = 0
    partial = Fraction(0)
    nodes = [Fraction(0)]
    for k in range(n + 1):
        length = schedule.interval_length(k)
        children = []
        for a in nodes:
            if a >= hi or a + length <= lo:
                continue
            if lo <= a and a + length <= hi:
                full += 2 ** (n - k)
                continue
            if k == n:
                partial += min(cell, min(hi, a + length) - max(lo, a))
            else:
                step = schedule.interval_length(k + 1) + schedule.removal(k + 1)
                children += [a, a + step]
        nodes = children
    return full * cell, full * cell + partial


def leaf_measure_bounds(schedule: CantorSchedule, x: Sequence, clip: Box, n: int) -> Tuple[Fraction, Fraction]:
    """
    Certified bounds lower <= lambda_d((C^d + x) cap clip) <= upper from the
    stage-n cell count; both converge to the exact value as n grows.
    """
    x = to_vector(x)
    if len(x) != schedule.d or clip.dim != schedule.d:
        raise PreconditionError(f'Dimension mismatch: schedule {schedule.d}, shift {len(x)}, clip {clip.dim}.')
    if clip.is_empty:
        return Fraction(0), Fraction(0)

    lower, upper = Fraction(1), Fraction(1)
    for lo, hi, t in zip(clip.lo, clip.hi, x):
        line_lower, line_upper = line_cell_bounds(schedule, n, lo - t, hi - t)
        lower *= line_lower
        upper *= line_upper
    return lower, upper
