import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.geometry import floor_log2, to_fraction

__all__ = [
    'CubeFamily',
    'DyadicCube',
    'MergeStep',
    'MergeResult',
    'round_to_dyadic',
    'merge',
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeFamily(object):
    """Cubes [0, a_j]^d given by their sides."""
    sides: Tuple[Fraction, ...]
    d: int

    def __post_init__(self):
        sides = tuple(to_fraction(a) for a in self.sides)
        object.__setattr__(self, 'sides', sides)
        if self.d < 1:
            raise PreconditionError(f'Dimension must be positive, got {self.d}.')
        if any(a <= 0 for a in sides):
            raise PreconditionError(f'Cube sides must be positive: {[str(a) for a in sides]}.')

    def __len__(self):
        return len(self.sides)

    @property
    def volume(self) -> Fraction:
        return sum((a ** self.d for a in self.sides), Fraction(0))

    def rescaled(self, alpha: Fraction) -> 'CubeFamily':
        return CubeFamily(tuple(a / alpha for a in self.sides), self.d)


@dataclass(frozen=True)
class DyadicCube(object):
    """Cube of side 2^level; ids below the input count are rounded inputs."""
    id: int
    level: int

    @property
    def side(self) -> Fraction:
        return Fraction(2) ** self.level


@dataclass(frozen=True)
class MergeStep(object):
    """2^d cubes of side 2^level arranged into cube `result` at the given offsets."""
    level: int
    constituents: Tuple[int, ...]
    result: int
    offsets: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class MergeResult(object):
    final: Tuple[DyadicCube, ...]
    steps: Tuple[MergeStep, ...]

    def children(self) -> Dict[int, MergeStep]:
        return {step.result: step for step in self.steps}


def round_to_dyadic(sides: Sequence) -> List[Tuple[int, Fraction]]:
    """
    (k_j, 2^k_j) with 2^k_j <= a_j < 2^(k_j + 1).

    >>> round_to_dyadic(['3/8'])
    [(-2, Fraction(1, 4))]
    """
    result = []
    for a in sides:
        a = to_fraction(a)
        if a <= 0:
            raise PreconditionError(f'Cube side must be positive, got {a}.')
        k = floor_log2(a)
        result.append((k, Fraction(2) ** k))
    return result


def merge(levels: Sequence[int], d: int) -> MergeResult:
    """
    Repeatedly arranges 2^d equal cubes into one of twice the side until
    every level holds at most 2^d - 1 cubes. Each step takes the 2^d lowest
    ids at the smallest level that has enough cubes and places them at the
    lexicographic sub-cube offsets; new cubes get ids n, n + 1, ...
    """
    group = 2 ** d
    live = {i: DyadicCube(i, k) for i, k in enumerate(levels)}
    next_id = len(levels)
    steps = []

    while True:
        by_level = {}
        for cube_id in sorted(live):
            by_level.setdefault(live[cube_id].level, []).append(cube_id)
        eligible = [k for k, ids in by_level.items() if len(ids) >= group]
        if not eligible:
            break

        level = min(eligible)
        constituents = tuple(by_level[level][:group])
        side = Fraction(2) ** level
        offsets = tuple(tuple(side * b for b in bits) for bits in product(range(2), repeat=d))

        for cube_id in constituents:
            del live[cube_id]
        live[next_id] = DyadicCube(next_id, level + 1)
        steps.append(MergeStep(level, constituents, next_id, offsets))
        next_id += 1

    final = tuple(live[i] for i in sorted(live))
    logger.debug(f'Merged {len(levels)} cubes in {len(steps)} steps into {len(final)} cubes.')
    return MergeResult(final, tuple(steps))
