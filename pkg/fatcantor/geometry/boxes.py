"""
Exact axis-aligned boxes and canonical finite box unions.

All boxes of the algebra are half-open, [lo_1, hi_1) x ... x [lo_d, hi_d):
faces are null for the Lebesgue measure and half-open boxes tile exactly.
Topological certificates use `OpenBox` together with `OpenBox.misses`, which
treats the other box as closed.

A `BoxUnion` is always in canonical form: the recursive slab decomposition of
its set along axis 0, then axis 1, ..., with adjacent slabs of identical
cross-section merged. Equal sets therefore have identical box tuples.
"""

from fractions import Fraction
from dataclasses import dataclass
from functools import reduce
from itertools import product
from operator import mul
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from fatcantor.errors import UnboundedError, PreconditionError
from fatcantor.geometry.rationals import (
    Coordinate,
    INF,
    NEG_INF,
    is_finite,
    to_coordinate,
    to_fraction,
    to_vector,
)

__all__ = [
    'Box',
    'OpenBox',
    'BoxUnion',
    'grid_boxes',
]

Predicate = Callable[[Tuple[bool, ...]], bool]


@dataclass(frozen=True)
class Box(object):
    lo: Tuple[Coordinate, ...]
    hi: Tuple[Coordinate, ...]

    def __post_init__(self):
        lo = tuple(to_coordinate(v) for v in self.lo)
        hi = tuple(to_coordinate(v) for v in self.hi)

        if len(lo) != len(hi) or not lo:
            raise PreconditionError(f'Box bounds have incompatible dimensions: {len(lo)} vs {len(hi)}.')
        for l, h in zip(lo, hi):
            if l is INF or h is NEG_INF:
                raise PreconditionError('A box side cannot start at +inf or end at -inf.')
            if l > h:
                raise PreconditionError(f'Box side [{l}, {h}) has lo > hi.')

        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    @classmethod
    def _trusted(cls, lo: tuple, hi: tuple) -> 'Box':
        box = object.__new__(cls)
        object.__setattr__(box, 'lo', lo)
        object.__setattr__(box, 'hi', hi)
        return box

    @classmethod
    def cube(cls, corner: Sequence, side) -> 'Box':
        corner = to_vector(corner)
        side = to_fraction(side)
        return cls(corner, tuple(c + side for c in corner))

    @classmethod
    def unit(cls, dim: int) -> 'Box':
        return cls((Fraction(0),) * dim, (Fraction(1),) * dim)

    @classmethod
    def whole_space(cls, dim: int) -> 'Box':
        return cls((NEG_INF,) * dim, (INF,) * dim)

    @classmethod
    def half_space(cls, dim: int, axis: int, threshold, upper: bool) -> 'Box':
        """
        {x: x_axis >= threshold} when upper, else {x: x_axis < threshold}.
        """
        if not 0 <= axis < dim:
            raise PreconditionError(f'Axis {axis} out of range for dimension {dim}.')
        threshold = to_fraction(threshold)
        lo, hi = [NEG_INF] * dim, [INF] * dim
        if upper:
            lo[axis] = threshold
        else:
            hi[axis] = threshold
        return cls(tuple(lo), tuple(hi))

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def is_empty(self) -> bool:
        return any(l >= h for l, h in zip(self.lo, self.hi))

    @property
    def is_bounded(self) -> bool:
        return all(is_finite(v) for v in self.lo + self.hi)

    @property
    def widths(self) -> Tuple[Fraction, ...]:
        self._require_bounded()
        return tuple(h - l for l, h in zip(self.lo, self.hi))

    @property
    def half_space_axis(self) -> Optional[int]:
        """The axis of an axis half-space box (exactly one finite bound), otherwise None."""
        finite = [(i, l, h) for i, (l, h) in enumerate(zip(self.lo, self.hi)) if is_finite(l) or is_finite(h)]
        if len(finite) != 1:
            return None
        i, l, h = finite[0]
        if is_finite(l) and is_finite(h):
            return None
        return i

    def complement_half_space(self) -> 'Box':
        axis = self.half_space_axis
        if axis is None:
            raise PreconditionError(f'{self} is not an axis half-space.')
        if is_finite(self.lo[axis]):
            return Box.half_space(self.dim, axis, self.lo[axis], upper=False)
        return Box.half_space(self.dim, axis, self.hi[axis], upper=True)

    def _require_bounded(self):
        if not self.is_bounded:
            raise UnboundedError(f'Box {self} has infinite sides.')

    def volume(self) -> Fraction:
        self._require_bounded()
        if self.is_empty:
            return Fraction(0)
        return reduce(mul, (h - l for l, h in zip(self.lo, self.hi)), Fraction(1))

    def intersect(self, other: 'Box') -> 'Box':
        _check_dims(self.dim, other.dim)
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(max(l, min(a, b)) for l, a, b in zip(lo, self.hi, other.hi))
        return Box._trusted(lo, hi)

    def translate(self, vector: Sequence) -> 'Box':
        vector = to_vector(vector)
        _check_dims(self.dim, len(vector))
        return Box._trusted(
            tuple(l + v for l, v in zip(self.lo, vector)),
            tuple(h + v for h, v in zip(self.hi, vector)),
        )

    def contains_point(self, point: Sequence) -> bool:
        point = to_vector(point)
        return all(l <= x < h for l, x, h in zip(self.lo, point, self.hi))

    def contains_box(self, other: 'Box') -> bool:
        if other.is_empty:
            return True
        return all(l <= ol and oh <= h for l, h, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def interior(self) -> 'OpenBox':
        self._require_bounded()
        return OpenBox(self.lo, self.hi)

    def __repr__(self):
        sides = ' x '.join(f'[{l}, {h})' for l, h in zip(self.lo, self.hi))
        return f'Box({sides})'


@dataclass(frozen=True)
class OpenBox(object):
    """Bounded open box with strictly positive side lengths."""

    lo: Tuple[Fraction, ...]
    hi: Tuple[Fraction, ...]

    def __post_init__(self):
        lo, hi = to_vector(self.lo), to_vector(self.hi)
        if len(lo) != len(hi) or not lo:
            raise PreconditionError('Open box bounds have incompatible dimensions.')
        if any(l >= h for l, h in zip(lo, hi)):
            raise PreconditionError(f'Open box needs positive side lengths, got lo={lo}, hi={hi}.')
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def widths(self) -> Tuple[Fraction, ...]:
        return tuple(h - l for l, h in zip(self.lo, self.hi))

    def misses(self, closed: Box) -> bool:
        """
        Exact test that this open box does not meet the closed box with the
        given bounds. Works for degenerate (zero-width) and unbounded closed boxes.
        """
        _check_dims(self.dim, closed.dim)
        return any(h <= cl or ch <= l for l, h, cl, ch in zip(self.lo, self.hi, closed.lo, closed.hi))

    def misses_all(self, closed_boxes: Iterable[Box]) -> bool:
        return all(self.misses(box) for box in closed_boxes)

    def within(self, other: 'OpenBox') -> bool:
        return all(ol <= l and h <= oh for l, h, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def restrict(self, axis: int, lo, hi) -> Optional['OpenBox']:
        """Intersection with the open slab lo < x_axis < hi, or None when it is empty."""
        new_lo = max(self.lo[axis], lo)
        new_hi = min(self.hi[axis], hi)
        if new_lo >= new_hi:
            return None
        return OpenBox(
            self.lo[:axis] + (new_lo,) + self.lo[axis + 1:],
            self.hi[:axis] + (new_hi,) + self.hi[axis + 1:],
        )

    def shrink(self, axis: int, ratio: Fraction) -> 'OpenBox':
        """Cut `ratio` of the side length from both ends of one side; 0 <= ratio < 1/2."""
        ratio = to_fraction(ratio)
        if not 0 <= ratio < Fraction(1, 2):
            raise PreconditionError(f'Shrink ratio must lie in [0, 1/2), got {ratio}.')
        margin = (self.hi[axis] - self.lo[axis]) * ratio
        return OpenBox(
            self.lo[:axis] + (self.lo[axis] + margin,) + self.lo[axis + 1:],
            self.hi[:axis] + (self.hi[axis] - margin,) + self.hi[axis + 1:],
        )

    def as_box(self) -> Box:
        return Box(self.lo, self.hi)

    def __repr__(self):
        sides = ' x '.join(f'({l}, {h})' for l, h in zip(self.lo, self.hi))
        return f'OpenBox({sides})'


@dataclass(frozen=True)
class BoxUnion(object):
    boxes: Tuple[Box, ...]
    dim: int

    @classmethod
    def from_boxes(cls, boxes: Iterable[Box], dim: int = None) -> 'BoxUnion':
        boxes = list(boxes)
        if dim is None:
            if not boxes:
                raise PreconditionError('Dimension is required for an empty list of boxes.')
            dim = boxes[0].dim
        for box in boxes:
            _check_dims(dim, box.dim)
        return cls(_canonical([boxes], _any_member, dim), dim)

    @classmethod
    def of(cls, box: Box) -> 'BoxUnion':
        return cls.from_boxes([box], box.dim)

    @classmethod
    def empty(cls, dim: int) -> 'BoxUnion':
        return cls((), dim)

    @classmethod
    def combine(cls, operands: Sequence['BoxUnion'], predicate: Predicate, dim: int = None) -> 'BoxUnion':
        """
        N-ary boolean combination: a point belongs to the result when
        `predicate(membership)` is true, membership[k] telling whether the
        point lies in operands[k]. `predicate` must be false on all-False.
        """
        if dim is None:
            if not operands:
                raise PreconditionError('Dimension is required without operands.')
            dim = operands[0].dim
        for u in operands:
            _check_dims(dim, u.dim)
        return cls(_canonical([list(u.boxes) for u in operands], predicate, dim), dim)

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    @property
    def is_bounded(self) -> bool:
        return all(box.is_bounded for box in self.boxes)

    def canonical(self) -> 'BoxUnion':
        return BoxUnion.from_boxes(self.boxes, self.dim)

    def union(self, other: 'BoxUnion') -> 'BoxUnion':
        return BoxUnion.combine((self, other), _either)

    def intersect(self, other: 'BoxUnion') -> 'BoxUnion':
        return BoxUnion.combine((self, other), _both)

    def subtract(self, other: 'BoxUnion') -> 'BoxUnion':
        return BoxUnion.combine((self, other), _first_only)

    def symmetric_difference(self, other: 'BoxUnion') -> 'BoxUnion':
        return BoxUnion.combine((self, other), _exactly_one)

    __or__ = union
    __and__ = intersect
    __sub__ = subtract
    __xor__ = symmetric_difference

    def clip(self, box: Box) -> 'BoxUnion':
        _check_dims(self.dim, box.dim)
        clipped = (b.intersect(box) for b in self.boxes)
        # intersecting every box of a canonical union with one box keeps the slab structure
        # but may leave adjacent equal slabs, so recanonicalize
        return BoxUnion.from_boxes([b for b in clipped if not b.is_empty], self.dim)

    def translate(self, vector: Sequence) -> 'BoxUnion':
        vector = to_vector(vector)
        _check_dims(self.dim, len(vector))
        return BoxUnion(tuple(box.translate(vector) for box in self.boxes), self.dim)

    def measure(self) -> Fraction:
        return sum((box.volume() for box in self.boxes), Fraction(0))

    def issubset(self, other: 'BoxUnion') -> bool:
        return self.subtract(other).is_empty

    def contains_point(self, point: Sequence) -> bool:
        point = to_vector(point)
        return any(box.contains_point(point) for box in self.boxes)

    def is_pairwise_disjoint(self) -> bool:
        boxes = self.boxes
        for i, a in enumerate(boxes):
            for b in boxes[i + 1:]:
                if not a.intersect(b).is_empty:
                    return False
        return True

    def bounding_box(self) -> Optional[Box]:
        if not self.boxes:
            return None
        lo = tuple(min(box.lo[i] for box in self.boxes) for i in range(self.dim))
        hi = tuple(max(box.hi[i] for box in self.boxes) for i in range(self.dim))
        return Box(lo, hi)

    def diameter_squared(self) -> Fraction:
        """sup |x - y|^2 over the closure of the union (0 for the empty union)."""
        if not self.is_bounded:
            raise UnboundedError('Diameter of an unbounded union.')
        best = Fraction(0)
        boxes = self.boxes
        for i, a in enumerate(boxes):
            for b in boxes[i:]:
                dist = sum(
                    (max(ah - bl, bh - al) ** 2 for al, ah, bl, bh in zip(a.lo, a.hi, b.lo, b.hi)),
                    Fraction(0),
                )
                best = max(best, dist)
        return best

    def __repr__(self):
        return f'BoxUnion(dim={self.dim}, boxes={list(self.boxes)})'


def _either(membership: Tuple[bool, ...]) -> bool:
    return membership[0] or membership[1]


def _both(membership: Tuple[bool, ...]) -> bool:
    return membership[0] and membership[1]


def _first_only(membership: Tuple[bool, ...]) -> bool:
    return membership[0] and not membership[1]


def _exactly_one(membership: Tuple[bool, ...]) -> bool:
    return membership[0] != membership[1]


def _check_dims(expected: int, actual: int):
    if expected != actual:
        raise PreconditionError(f'Dimension mismatch: {expected} vs {actual}.')


def _canonical(operands: List[List[Box]], predicate: Predicate, dim: int) -> Tuple[Box, ...]:
    operands = [[box for box in boxes if not box.is_empty] for boxes in operands]
    if not any(operands):
        return ()
    tails = _sweep(operands, predicate, 0, dim)
    return tuple(Box._trusted(tuple(s[0] for s in tail), tuple(s[1] for s in tail)) for tail in tails)


def _any_member(membership: Tuple[bool, ...]) -> bool:
    return any(membership)


def _sweep(operands: List[List[Box]], predicate: Predicate, axis: int, dim: int) -> list:
    """
    Slab sweep along `axis`. Returns the canonical list of box tails, each a
    tuple of (lo, hi) pairs for axes `axis`..dim-1, in lexicographic order.
    """
    events = {}
    for k, boxes in enumerate(operands):
        for box in boxes:
            events.setdefault(box.lo[axis], []).append((k, box, True))
            events.setdefault(box.hi[axis], []).append((k, box, False))

    cuts = sorted(events)
    active = [dict() for _ in operands]
    last_axis = axis == dim - 1
    slabs = []

    for x0, x1 in zip(cuts, cuts[1:]):
        for k, box, starts in events[x0]:
            if starts:
                active[k][id(box)] = box
            else:
                active[k].pop(id(box), None)

        if last_axis:
            tails = [()] if predicate(tuple(bool(a) for a in active)) else []
        elif any(active):
            tails = _sweep([list(a.values()) for a in active], predicate, axis + 1, dim)
        else:
            tails = []

        if not tails:
            continue
        if slabs and slabs[-1][1] == x0 and slabs[-1][2] == tails:
            slabs[-1][1] = x1
        else:
            slabs.append([x0, x1, tails])

    return [((x0, x1),) + tail for x0, x1, tails in slabs for tail in tails]


def grid_boxes(corner: Sequence, step: Sequence, counts: Sequence[int]) -> List[Box]:
    """All boxes corner + k * step, 0 <= k_i < counts_i, of size `step`, in lexicographic order."""
    corner, step = to_vector(corner), to_vector(step)
    return [
        Box._trusted(
            tuple(c + k * s for c, k, s in zip(corner, ks, step)),
            tuple(c + (k + 1) * s for c, k, s in zip(corner, ks, step)),
        )
        for ks in product(*(range(n) for n in counts))
    ]


