"""
Symbolic elements of the ring generated by the clipped translates (C + x) cap J.

Leaves are `Gen` nodes; `Union`, `Diff` and `Inter` combine two
sub-expressions. Expressions are immutable and hashable, so identical
leaves are recognized wherever they occur.
"""

from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, to_vector

__all__ = [
    'RingExpr',
    'Gen',
    'Union',
    'Diff',
    'Inter',
    'empty_expr',
    'union_all',
]


class RingExpr(object):
    """Base of the expression tree."""

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def leaves(self) -> List['Gen']:
        raise NotImplementedError

    @property
    def leaf_count(self) -> int:
        return len(self.leaves())

    def distinct_leaves(self) -> List['Gen']:
        return list(dict.fromkeys(self.leaves()))

    @property
    def is_pure_positive(self) -> bool:
        """Only Gen and Union nodes."""
        raise NotImplementedError

    def evaluate(self, membership: Dict['Gen', bool]) -> bool:
        raise NotImplementedError

    def predicate(self) -> Tuple[List['Gen'], Callable[[Tuple[bool, ...]], bool]]:
        """
        The distinct leaves and a function mapping a membership vector over
        them to membership in the denoted set.
        """
        leaves = self.distinct_leaves()

        def evaluate(vector: Tuple[bool, ...]) -> bool:
            return self.evaluate(dict(zip(leaves, vector)))

        return leaves, evaluate

    def __or__(self, other: 'RingExpr') -> 'RingExpr':
        return Union(self, other)

    def __sub__(self, other: 'RingExpr') -> 'RingExpr':
        return Diff(self, other)

    def __and__(self, other: 'RingExpr') -> 'RingExpr':
        return Inter(self, other)


@dataclass(frozen=True)
class Gen(RingExpr):
    """The generator (C^d + x) cap clip; the clip may have infinite sides."""

    x: Tuple[Fraction, ...]
    clip: Box

    def __post_init__(self):
        x = to_vector(self.x)
        object.__setattr__(self, 'x', x)
        if not isinstance(self.clip, Box):
            raise PreconditionError(f'Generator clip must be a Box, got {type(self.clip).__name__}.')
        if len(x) != self.clip.dim:
            raise PreconditionError(f'Translation has dimension {len(x)}, clip has {self.clip.dim}.')

    @property
    def dim(self) -> int:
        return len(self.x)

    def leaves(self) -> List['Gen']:
        return [self]

    @property
    def is_pure_positive(self) -> bool:
        return True

    def evaluate(self, membership: Dict['Gen', bool]) -> bool:
        return membership[self]

    def __repr__(self):
        return f'Gen(x={[str(v) for v in self.x]}, clip={self.clip})'


@dataclass(frozen=True)
class _Binary(RingExpr):
    left: RingExpr
    right: RingExpr

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise PreconditionError(f'Operands of dimensions {self.left.dim} and {self.right.dim}.')

    @property
    def dim(self) -> int:
        return self.left.dim

    def leaves(self) -> List[Gen]:
        return self.left.leaves() + self.right.leaves()


@dataclass(frozen=True)
class Union(_Binary):
    @property
    def is_pure_positive(self) -> bool:
        return self.left.is_pure_positive and self.right.is_pure_positive

    def evaluate(self, membership: Dict[Gen, bool]) -> bool:
        return self.left.evaluate(membership) or self.right.evaluate(membership)


@dataclass(frozen=True)
class Diff(_Binary):
    @property
    def is_pure_positive(self) -> bool:
        return False

    def evaluate(self, membership: Dict[Gen, bool]) -> bool:
        return self.left.evaluate(membership) and not self.right.evaluate(membership)


@dataclass(frozen=True)
class Inter(_Binary):
    @property
    def is_pure_positive(self) -> bool:
        return False

    def evaluate(self, membership: Dict[Gen, bool]) -> bool:
        return self.left.evaluate(membership) and self.right.evaluate(membership)


def empty_expr(dim: int) -> Gen:
    """A generator with an empty clip; denotes the empty set."""
    zero = (Fraction(0),) * dim
    return Gen(zero, Box(zero, zero))


def union_all(expressions: Sequence[RingExpr]) -> RingExpr:
    if not expressions:
        raise PreconditionError('Union of an empty list of expressions.')
    result = expressions[0]
    for e in expressions[1:]:
        result = Union(result, e)
    return result
