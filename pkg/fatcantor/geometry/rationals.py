from fractions import Fraction
from typing import Iterable, Tuple, Union

__all__ = [
    'Infinity',
    'INF',
    'NEG_INF',
    'Coordinate',
    'to_fraction',
    'to_coordinate',
    'to_vector',
    'format_rational',
    'format_coordinate',
    'parse_rational',
    'parse_coordinate',
    'is_finite',
    'floor_log2',
]


class Infinity(object):
    """
    Signed infinity marker for unbounded box sides.

    Compares against Fraction and int exactly and absorbs finite translations,
    so half-spaces can flow through the box algebra. It is not a number:
    multiplying or measuring it is an error.
    """

    __slots__ = ('_sign',)

    _instances = {}

    def __new__(cls, sign: int):
        sign = 1 if sign > 0 else -1
        if sign not in cls._instances:
            instance = super().__new__(cls)
            object.__setattr__(instance, '_sign', sign)
            cls._instances[sign] = instance
        return cls._instances[sign]

    def __reduce__(self):
        return Infinity, (self._sign,)

    def __setattr__(self, key, value):
        raise AttributeError('Infinity is immutable.')

    @property
    def sign(self) -> int:
        return self._sign

    def __repr__(self):
        return 'INF' if self._sign > 0 else 'NEG_INF'

    def __str__(self):
        return 'inf' if self._sign > 0 else '-inf'

    def __hash__(self):
        return hash(('Infinity', self._sign))

    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return self is not other

    def __lt__(self, other):
        if self is other:
            return False
        return self._sign < 0

    def __le__(self, other):
        return self is other or self._sign < 0

    def __gt__(self, other):
        if self is other:
            return False
        return self._sign > 0

    def __ge__(self, other):
        return self is other or self._sign > 0

    def __neg__(self):
        return Infinity(-self._sign)

    def __add__(self, other):
        if isinstance(other, Infinity) and other is not self:
            raise ArithmeticError('inf - inf is undefined')
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Infinity):
            return self + (-other)
        return self

    def __rsub__(self, other):
        return -self


INF = Infinity(1)
NEG_INF = Infinity(-1)

Coordinate = Union[Fraction, Infinity]


def is_finite(value: Coordinate) -> bool:
    return not isinstance(value, Infinity)


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Infinity):
        raise ValueError('Expected a finite rational, got an infinity marker.')
    if isinstance(value, float):
        raise TypeError(f'Floating point value {value!r} is not accepted; use "p/q" strings.')
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def to_coordinate(value) -> Coordinate:
    if isinstance(value, Infinity):
        return value
    if isinstance(value, str) and value.strip() in ('inf', '+inf', '-inf'):
        return parse_coordinate(value)
    return to_fraction(value)


def to_vector(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


def format_rational(value) -> str:
    value = to_fraction(value)
    return f'{value.numerator}/{value.denominator}'


def format_coordinate(value: Coordinate) -> str:
    if isinstance(value, Infinity):
        return str(value)
    return format_rational(value)


def parse_rational(text: str) -> Fraction:
    text = str(text).strip()
    if '.' in text or 'e' in text.lower():
        raise ValueError(f'Decimal notation is not exact: {text!r}; use "p/q".')
    if '/' in text:
        num, den = text.split('/')
        den = int(den)
        if den == 0:
            raise ValueError(f'Zero denominator in {text!r}.')
        return Fraction(int(num), den)
    return Fraction(int(text))


def parse_coordinate(text: str) -> Coordinate:
    text = str(text).strip()
    if text in ('inf', '+inf'):
        return INF
    if text == '-inf':
        return NEG_INF
    return parse_rational(text)


def floor_log2(value: Fraction) -> int:
    """
    Exact floor(log_2(value)) for a positive rational.

    >>> floor_log2(Fraction(3, 8))
    -2
    >>> floor_log2(Fraction(1, 2))
    -1
    >>> floor_log2(Fraction(1))
    0
    """
    value = to_fraction(value)
    if value <= 0:
        raise ValueError(f'floor_log2 needs a positive value, got {value}.')
    k = value.numerator.bit_length() - value.denominator.bit_length()
    if Fraction(2) ** k > value:
        k -= 1
    elif Fraction(2) ** (k + 1) <= value:
        k += 1
    return k
