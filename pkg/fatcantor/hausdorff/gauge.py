from dataclasses import dataclass

from fatcantor.errors import PreconditionError
from fatcantor.geometry import ExtendedRational, sqrt_rational, to_fraction

__all__ = [
    'Gauge',
    'cube_diameter',
]


def cube_diameter(side, d: int) -> ExtendedRational:
    """side * sqrt(d), exact."""
    return sqrt_rational(d) * to_fraction(side)


@dataclass(frozen=True)
class Gauge(object):
    """Power gauge h(t) = t^s evaluated exactly on values of Q[sqrt(r)]."""
    s: int = 1

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise PreconditionError(f'Gauge exponent must be a positive integer, got {self.s!r}.')

    def __call__(self, t) -> ExtendedRational:
        if not isinstance(t, ExtendedRational):
            t = ExtendedRational(to_fraction(t))
        if t.sign() < 0:
            raise PreconditionError(f'Gauge argument must be nonnegative, got {t}.')
        return t ** self.s

    def __str__(self):
        return f't^{self.s}'
