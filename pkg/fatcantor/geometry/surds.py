from fractions import Fraction
from functools import total_ordering
from math import isqrt

import mpmath

from fatcantor.geometry.rationals import to_fraction, format_rational

__all__ = [
    'ExtendedRational',
    'sqrt_rational',
]


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _square_part(n: int):
    """
    Split a positive integer n = k^2 * m with m squarefree.

    Trial division stops at the cube root of the unfactored rest, which then
    has at most two prime factors and is either a square or squarefree.
    """
    k, m, rest = 1, 1, n
    f = 2
    while f * f * f <= rest:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        k *= f ** (e // 2)
        if e % 2:
            m *= f
        f += 1
    root = isqrt(rest)
    if root * root == rest:
        k *= root
    else:
        m *= rest
    return k, m


@total_ordering
class ExtendedRational(object):
    """
    Exact element a + b·√r of the quadratic field ℚ[√r], r a positive integer.

    Cube diameters in dimension d live in ℚ[√d] (side·√d). Values with b = 0
    are plain rationals and combine with any radicand. Perfect-square
    radicands are folded into the rational part on construction.
    """

    __slots__ = ('_a', '_b', '_r')

    def __init__(self, a=0, b=0, radicand: int = 1):
        a, b = to_fraction(a), to_fraction(b)
        radicand = int(radicand)
        if radicand <= 0:
            raise ValueError(f'Radicand must be positive, got {radicand}.')

        k, m = _square_part(radicand)
        b = b * k
        if m == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            m = 1

        self._a, self._b, self._r = a, b, m

    @classmethod
    def sqrt_of(cls, value, multiplier=1) -> 'ExtendedRational':
        """multiplier·√value for a nonnegative rational value, radicand normalized to an integer."""
        return sqrt_rational(value) * to_fraction(multiplier)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> int:
        return self._r

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def _coerce(self, other) -> 'ExtendedRational':
        if isinstance(other, ExtendedRational):
            return other
        return ExtendedRational(to_fraction(other))

    def _common_radicand(self, other: 'ExtendedRational') -> int:
        if self._b == 0:
            return other._r
        if other._b == 0 or other._r == self._r:
            return self._r
        raise ValueError(f'Cannot combine values from ℚ[√{self._r}] and ℚ[√{other._r}].')

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        r = self._common_radicand(other)
        return ExtendedRational(self._a + other._a, self._b + other._b, r)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedRational(-self._a, -self._b, self._r)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        r = self._common_radicand(other)
        a = self._a * other._a + self._b * other._b * r
        b = self._a * other._b + self._b * other._a
        return ExtendedRational(a, b, r)

    __rmul__ = __mul__

    @property
    def conjugate(self) -> 'ExtendedRational':
        return ExtendedRational(self._a, -self._b, self._r)

    @property
    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._r

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.sign() == 0:
            raise ZeroDivisionError('division by zero in ℚ[√r]')
        r = self._common_radicand(other)
        numerator = self * other.conjugate
        n = other.norm
        return ExtendedRational(numerator._a / n, numerator._b / n, r)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError('Only nonnegative integer powers are supported.')
        result, base = ExtendedRational(1), self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of a + b·√r by comparing a² against b²·r."""
        sa, sb = _sign(self._a), _sign(self._b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: the larger magnitude wins
        return sa * _sign(self._a * self._a - self._b * self._b * self._r)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if self._b == 0 and other._b == 0:
            return self._a == other._a
        return _compare(self, other) == 0

    def __lt__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return _compare(self, other) < 0

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        # b·√r is determined by b²·r and the sign of b, whatever the radicand form
        return hash((self._a, self._b * self._b * self._r, _sign(self._b)))

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            return mpmath.mpf(self._a.numerator) / self._a.denominator + \
                   mpmath.mpf(self._b.numerator) / self._b.denominator * mpmath.sqrt(self._r)

    def __repr__(self):
        if self._b == 0:
            return f'ExtendedRational({format_rational(self._a)})'
        return f'ExtendedRational({format_rational(self._a)} + {format_rational(self._b)}·√{self._r})'

    def __str__(self):
        if self._b == 0:
            return format_rational(self._a)
        return f'{format_rational(self._a)}+{format_rational(self._b)}*sqrt({self._r})'


def _compare(x: ExtendedRational, y: ExtendedRational) -> int:
    if x._b == 0 or y._b == 0 or x._r == y._r:
        return (x - y).sign()
    # different radicands: compare a + b√r with c + e√s by moving rationals to one side
    # a - c + b√r - e√s; compare b√r against (c - a) + e√s by squaring with sign care
    lhs = ExtendedRational(0, x._b, x._r)
    rhs = ExtendedRational(y._a - x._a, y._b, y._r)
    sl, sr = lhs.sign(), rhs.sign()
    if sl != sr:
        return (sl > sr) - (sl < sr)
    if sl == 0:
        return 0
    # both sides share a sign: compare squares, flip when negative
    sq = (lhs * lhs).a - rhs * rhs
    return sl * sq.sign()


def sqrt_rational(value) -> ExtendedRational:
    """
    Exact √value for a nonnegative rational, as b·√r with r a positive integer.

    >>> sqrt_rational(Fraction(1, 2))
    ExtendedRational(0/1 + 1/2·√2)
    """
    value = to_fraction(value)
    if value < 0:
        raise ValueError(f'Square root of a negative value {value}.')
    if value == 0:
        return ExtendedRational(0)
    p, q = value.numerator, value.denominator
    # √(p/q) = √(p·q) / q
    n = p * q
    root = isqrt(n)
    if root * root == n:
        return ExtendedRational(Fraction(root, q))
    return ExtendedRational(0, Fraction(1, q), n)
