"""
Seeded random instances for the property suites of the CLI and the tests.

All values are exact rationals on fixed grids: numpy only draws the
integers, Fraction builds the numbers.
"""

from fractions import Fraction
from math import ceil, floor
from typing import List, Tuple

import numpy as np

from fatcantor.geometry import Box, BoxUnion
from fatcantor.ring import RingExpr, Gen, Union, Diff, Inter
from fatcantor.packing import CubeFamily

__all__ = [
    'make_rng',
    'random_rational',
    'random_box',
    'random_box_union',
    'random_gen',
    'random_expr',
    'random_half_space',
    'random_cube_family',
    'random_tiling_instance',
    'GRID',
]

GRID = 16

_NODES = (Union, Diff, Inter)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rational(rng: np.random.Generator, lo, hi, denominator: int = GRID) -> Fraction:
    """Uniform on the grid (1/denominator) Z within [lo, hi]."""
    k_lo = ceil(Fraction(lo) * denominator)
    k_hi = floor(Fraction(hi) * denominator)
    return Fraction(int(rng.integers(k_lo, k_hi + 1)), denominator)


def random_box(rng: np.random.Generator, d: int, lo=Fraction(-1, 4), hi=Fraction(5, 4),
               denominator: int = GRID) -> Box:
    """A box with positive widths and corners on the grid inside [lo, hi]^d."""
    lows, highs = [], []
    for _ in range(d):
        a = random_rational(rng, lo, hi - Fraction(1, denominator), denominator)
        b = random_rational(rng, a + Fraction(1, denominator), hi, denominator)
        lows.append(a)
        highs.append(b)
    return Box(tuple(lows), tuple(highs))


def random_box_union(rng: np.random.Generator, d: int, max_boxes: int = 4) -> BoxUnion:
    count = int(rng.integers(1, max_boxes + 1))
    return BoxUnion.from_boxes([random_box(rng, d) for _ in range(count)], d)


def random_gen(rng: np.random.Generator, d: int) -> Gen:
    x = tuple(random_rational(rng, Fraction(-1, 2), Fraction(1, 2), 8) for _ in range(d))
    return Gen(x, random_box(rng, d))


def random_expr(rng: np.random.Generator, d: int, max_leaves: int = 8) -> RingExpr:
    """A random binary tree with between 1 and max_leaves generator leaves."""
    leaves = int(rng.integers(1, max_leaves + 1))
    return _random_tree(rng, d, leaves)


def _random_tree(rng: np.random.Generator, d: int, leaves: int) -> RingExpr:
    if leaves == 1:
        return random_gen(rng, d)
    left = int(rng.integers(1, leaves))
    node = _NODES[int(rng.integers(len(_NODES)))]
    return node(_random_tree(rng, d, left), _random_tree(rng, d, leaves - left))


def random_half_space(rng: np.random.Generator, d: int) -> Box:
    axis = int(rng.integers(d))
    threshold = random_rational(rng, Fraction(-1, 4), Fraction(5, 4))
    upper = bool(rng.integers(2))
    return Box.half_space(d, axis, threshold, upper)


def random_cube_family(rng: np.random.Generator, d: int, max_count: int = 64) -> CubeFamily:
    """
    Mixed dyadic and non-dyadic sides in (0, 1/2], drawn until the volume
    reaches 1; a unit cube closes the family if max_count is reached first.
    """
    sides: List[Fraction] = []
    volume = Fraction(0)
    while volume < 1 and len(sides) < max_count - 1:
        if rng.integers(2):
            side = Fraction(1, 2 ** int(rng.integers(1, 5)))
        else:
            side = Fraction(int(rng.integers(1, 25)), 48)
        sides.append(side)
        volume += side ** d
    if volume < 1:
        sides.append(Fraction(1))
    return CubeFamily(tuple(sides), d)


def random_tiling_instance(rng: np.random.Generator, d: int) -> Tuple[Box, Tuple[Fraction, ...]]:
    """A base box and positive rational scale factors p/s with p, s <= 6."""
    base = random_box(rng, d, Fraction(0), Fraction(1), 8)
    scales = tuple(Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 7))) for _ in range(d))
    return base, scales
