"""
The chain from a delta-cover of K = C^d to a cube packing: truncate the
cover, replace every set by a cube of equal diameter, pack the rescaled
cubes over a target cube and compare gauge sums.

The ball constant of the volume bound is replaced by the enclosing axis cube,
lambda(E) <= (diam E)^d, so every quantity lives in Q[sqrt(d)].
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, BoxUnion, ExtendedRational, sqrt_rational, to_fraction
from fatcantor.cantor import CantorSchedule, DEFAULT_MAX_STAGE_EXPONENT, limit_measure, stage_measure
from fatcantor.packing import CubeFamily, PackingLayout, pack_cover
from fatcantor.hausdorff.gauge import Gauge, cube_diameter
from fatcantor.hausdorff.covers import DeltaCover, nu_delta_upper

__all__ = [
    'InequalityCheck',
    'CorollaryReport',
    'rational_alpha',
    'corollary_pipeline',
    'VOLUME_CONSTANT',
    'DEFAULT_ALPHA_BITS',
]

logger = logging.getLogger(__name__)

VOLUME_CONSTANT = 'C_d = 1 (enclosing axis cube)'
DEFAULT_ALPHA_BITS = 32


@dataclass(frozen=True)
class InequalityCheck(object):
    name: str
    lhs: object
    relation: str
    rhs: object
    informational: bool = False

    @property
    def holds(self) -> bool:
        if self.relation == '<=':
            return self.lhs <= self.rhs
        if self.relation == '<':
            return self.lhs < self.rhs
        if self.relation == '==':
            return self.lhs == self.rhs
        if self.relation == '>=':
            return self.lhs >= self.rhs
        raise ValueError(f'Unknown relation {self.relation!r}.')


@dataclass(frozen=True)
class CorollaryReport(object):
    d: int
    a: Fraction
    delta: Fraction
    cover: DeltaCover
    truncation: int
    cube_side: Fraction
    alpha_power: ExtendedRational
    alpha: Fraction
    alpha_exact: bool
    layout: PackingLayout
    checks: Tuple[InequalityCheck, ...]
    constant: str = VOLUME_CONSTANT

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks if not c.informational)


def _exact_root(value: Fraction, d: int) -> Optional[Fraction]:
    def root(n: int) -> Optional[int]:
        try:
            r = round(n ** (1 / d))
        except OverflowError:
            return None
        for candidate in (r - 1, r, r + 1):
            if candidate >= 0 and candidate ** d == n:
                return candidate
        return None

    if value < 0:
        return None
    num, den = root(value.numerator), root(value.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def rational_alpha(alpha_power: ExtendedRational, d: int, bits: int = DEFAULT_ALPHA_BITS) -> Tuple[Fraction, bool]:
    """
    A rational alpha' with alpha'^d <= alpha^d: the exact root when alpha^d
    is the d-th power of a rational, otherwise the largest multiple of 2^-bits
    below alpha (found by bisection with exact comparisons).

    Returns:
        (alpha', exact)
    """
    if alpha_power.sign() <= 0:
        raise PreconditionError(f'alpha^d must be positive, got {alpha_power}.')
    if alpha_power.is_rational:
        exact = _exact_root(alpha_power.a, d)
        if exact is not None:
            return exact, True

    scale = 2 ** bits
    hi = scale
    while alpha_power >= Fraction(hi, scale) ** d:
        hi *= 2
    lo = 0
    # invariant: (lo / scale)^d <= alpha^d < (hi / scale)^d
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if Fraction(mid, scale) ** d <= alpha_power:
            lo = mid
        else:
            hi = mid
    if lo == 0:
        raise PreconditionError(f'alpha is below 2^-{bits}; increase the precision.')
    return Fraction(lo, scale), False


def _truncation(half_a: Fraction, diameter_power: ExtendedRational, count: int) -> int:
    """Least m <= count with half_a < m * diameter_power."""
    lo, hi = 0, count
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if half_a < diameter_power * mid:
            hi = mid
        else:
            lo = mid
    return hi


def corollary_pipeline(schedule: CantorSchedule,
                       gauge: Gauge,
                       delta,
                       a,
                       stage_cap: int,
                       stage: int = None,
                       alpha_bits: int = DEFAULT_ALPHA_BITS,
                       max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT) -> CorollaryReport:
    """
    Args:
        schedule (CantorSchedule): K = C^d
        gauge (Gauge): h
        delta (Fraction): cover diameter bound
        a (Fraction): lower bound for lambda(K), 0 < a <= limit_measure
        stage_cap (int): deepest stage for the delta-cover
        stage (int): explicit cover stage
        alpha_bits (int): precision of alpha' when alpha is irrational

    Returns:
        CorollaryReport with every inequality of the chain and both exact sides
    """
    a = to_fraction(a)
    d = schedule.d
    limit = limit_measure(schedule)
    if a <= 0:
        raise PreconditionError(f'a must be positive (alpha would vanish), got {a}.')
    if a > limit:
        raise PreconditionError(f'a = {a} exceeds lambda(K) = {limit}.')

    cover, gauge_sum = nu_delta_upper(schedule, gauge, delta, stage_cap, stage, max_stage_exponent)
    side = cover.side
    diameter = cover.diameter
    diameter_power = diameter ** d

    half_a = a / 2
    truncation = _truncation(half_a, diameter_power, cover.count)

    cube_side = side
    cube_diam = cube_diameter(cube_side, d)

    # alpha^d = d^(-d/2) * a / 2
    alpha_power = half_a / sqrt_rational(d) ** d
    alpha, alpha_exact = rational_alpha(alpha_power, d, alpha_bits)

    family = CubeFamily((cube_side,) * truncation, d)
    scaled_volume = family.rescaled(alpha).volume
    layout = pack_cover(family, Fraction(1, 2), alpha)
    placed = BoxUnion.from_boxes(
        [Box(p.t, tuple(t + cube_side for t in p.t)) for p in layout.placements], d)
    uncovered = BoxUnion.of(layout.target).subtract(placed).measure()

    truncated_gauge = gauge(cube_diam) * truncation

    checks = (
        InequalityCheck('a <= lambda(K)', a, '<=', limit),
        InequalityCheck('lambda(K) <= sum lambda(E_j)', limit, '<=', stage_measure(schedule, cover.stage)),
        InequalityCheck('lambda(E_j) <= diam(E_j)^d', side ** d, '<=', diameter_power),
        InequalityCheck('a <= sum diam(E_j)^d', a, '<=', diameter_power * cover.count),
        InequalityCheck("a/2 < sum_{j<=n'} diam(E_j)^d", half_a, '<', diameter_power * truncation),
        InequalityCheck("a/2 >= sum_{j<n'} diam(E_j)^d", half_a, '>=', diameter_power * (truncation - 1)),
        InequalityCheck('diam Q_j = diam E_j', cube_diam, '==', diameter),
        InequalityCheck("alpha'^d <= alpha^d", alpha ** d, '<=', alpha_power),
        InequalityCheck("sum (side(Q_j) / alpha')^d >= 1", scaled_volume, '>=', Fraction(1)),
        InequalityCheck("uncovered measure of [0, alpha'/2]^d", uncovered, '==', Fraction(0)),
        InequalityCheck("sum_{j<=n'} h(diam Q_j) <= sum_j h(diam E_j)", truncated_gauge, '<=', gauge_sum),
        InequalityCheck("sum_{j<=n'} h(diam Q_j) <= a + 1", truncated_gauge, '<=', a + 1, informational=True),
    )

    report = CorollaryReport(
        d=d,
        a=a,
        delta=to_fraction(delta),
        cover=cover,
        truncation=truncation,
        cube_side=cube_side,
        alpha_power=alpha_power,
        alpha=alpha,
        alpha_exact=alpha_exact,
        layout=layout,
        checks=checks,
    )
    for check in checks:
        if not check.holds:
            log = logger.info if check.informational else logger.error
            log(f'Check failed: {check.name}: {check.lhs} {check.relation} {check.rhs}')
    return report
