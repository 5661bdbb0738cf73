import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, BoxUnion
from fatcantor.ring import CantorRing, RingExpr, clip_to_box
from fatcantor.cover.hull import positive_hull
from fatcantor.cover.witness import UncoveredWitness, find_uncovered_box

__all__ = [
    'CoverCheck',
    'CoverAttempt',
    'NoCover',
    'verify_cover',
    'check_cover',
    'outer_upper',
    'DEFAULT_SEARCH_BUDGET',
]

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 256


@dataclass(frozen=True)
class CoverCheck(object):
    """
    covers_outer_hulls: the stage set of the target lies inside the union of
    the stage sets of the element hulls. stage_robust: the true target lies
    inside the true union, certified leaf by leaf.
    """
    stage: int
    covers_outer_hulls: bool
    stage_robust: bool
    uncovered_measure: Fraction

    @property
    def verified(self) -> bool:
        return self.covers_outer_hulls and self.stage_robust


@dataclass(frozen=True)
class CoverAttempt(object):
    target: RingExpr
    elements: Tuple[RingExpr, ...]
    indices: Tuple[int, ...]
    stage: int
    total_premeasure_upper: Fraction
    verified: bool
    examined: int = 0

    @property
    def is_infinite(self) -> bool:
        return False


@dataclass(frozen=True)
class NoCover(object):
    """No verified cover within the budget; stands for an infinite outer measure."""
    reason: str
    stage: int
    examined: int = 0
    witness: Optional[object] = field(default=None)

    @property
    def is_infinite(self) -> bool:
        return True


def _target_set(ring: CantorRing, target, stage: int) -> BoxUnion:
    if isinstance(target, BoxUnion):
        return target
    if isinstance(target, Box):
        return BoxUnion.of(target)
    return ring.approx_set(target, stage)


def _hull_union(ring: CantorRing, elements: Sequence[RingExpr], stage: int) -> BoxUnion:
    hulls = [ring.approx_set(positive_hull(e), stage) for e in elements]
    return BoxUnion.combine(hulls, any, ring.d) if hulls else BoxUnion.empty(ring.d)


def verify_cover(ring: CantorRing, target, elements: Sequence[RingExpr], stage: int) -> bool:
    """Exact inclusion of the target in the union of the elements' stage-`stage` outer hulls."""
    target_set = _target_set(ring, target, stage)
    if target_set.dim != ring.d:
        raise PreconditionError(f'Target dimension {target_set.dim} vs schedule dimension {ring.d}.')
    return target_set.issubset(_hull_union(ring, elements, stage))


def _leaf_inclusion(ring: CantorRing, target: RingExpr, elements: Sequence[RingExpr], stage: int) -> bool:
    """
    Every hull leaf (C + x) & J of the target sits, at this stage, inside the
    clips of element leaves with the same translation x. Then C + x & J is
    inside their union, because C lies in every stage set.
    """
    if not all(e.is_pure_positive for e in elements):
        return False
    clips_by_shift = {}
    for e in elements:
        for leaf in e.leaves():
            clips_by_shift.setdefault(leaf.x, []).append(leaf.clip)

    for leaf in positive_hull(target).distinct_leaves():
        approx = ring.leaf_approx(leaf, stage)
        if approx.is_empty:
            continue
        clips = [c for c in clips_by_shift.get(leaf.x, []) if not c.is_empty]
        if not clips:
            return False
        if not approx.issubset(BoxUnion.from_boxes(clips, ring.d)):
            return False
    return True


def check_cover(ring: CantorRing, target, elements: Sequence[RingExpr], stage: int) -> CoverCheck:
    target_set = _target_set(ring, target, stage)
    uncovered = target_set.subtract(_hull_union(ring, elements, stage))
    covers = uncovered.is_empty
    robust = covers and isinstance(target, RingExpr) and _leaf_inclusion(ring, target, elements, stage)
    return CoverCheck(stage, covers, robust, uncovered.measure())


def outer_upper(ring: CantorRing,
                target,
                pool: Sequence[RingExpr],
                stage: int,
                budget: int = DEFAULT_SEARCH_BUDGET,
                clip: Box = None,
                witness_stage_cap: int = 12):
    """
    Finite-cover upper bound for the outer measure of `target`.

    The pool is searched prefix by prefix. When element k joins, a greedy
    pass over the first k elements picks elements by marginal covered
    measure of the target's stage set (ties by pool index). Then the subsets
    whose largest index is k are examined by size and lexicographic index.
    The verified cover with the least sum of certified upper premeasures is
    carried from one prefix to the next, so a longer pool never reports a
    larger total. At most `budget` subsets are enumerated; greedy candidates
    are not counted.

    A Box target is never covered by ring elements; the result is NoCover
    with an uncovered witness attached.

    Returns:
        CoverAttempt or NoCover
    """
    if isinstance(target, Box):
        witness = find_uncovered_box(ring.schedule, target, pool, witness_stage_cap,
                                     max_stage_exponent=ring.max_stage_exponent)
        reason = 'solid target' if isinstance(witness, UncoveredWitness) else 'solid target, witness inconclusive'
        return NoCover(reason, stage, 0, witness)

    if clip is not None:
        pool = [clip_to_box(e, clip) for e in pool]
    pool = list(pool)
    uppers = [ring.certified_bounds(e, stage).upper for e in pool]
    target_set = _target_set(ring, target, stage)
    hulls = [ring.approx_set(positive_hull(e), stage) for e in pool]

    best = None
    examined = 0
    enumerated = 0

    def consider(indices: Tuple[int, ...]):
        nonlocal best, examined
        total = sum((uppers[i] for i in indices), Fraction(0))
        if best is not None and total >= best.total_premeasure_upper:
            return
        examined += 1
        elements = tuple(pool[i] for i in indices)
        if check_cover(ring, target, elements, stage).verified:
            best = CoverAttempt(target, elements, indices, stage, total, True)
            logger.debug(f'Verified cover {indices} with total {total}.')

    for newest in range(len(pool)):
        greedy = _greedy(target_set, hulls[:newest + 1])
        if greedy is not None:
            consider(greedy)
        for size in range(newest + 1):
            for rest in combinations(range(newest), size):
                if enumerated >= budget:
                    break
                enumerated += 1
                consider(rest + (newest,))

    if best is None:
        logger.warning(f'No verified cover among {examined} candidate subsets.')
        return NoCover('no verified cover within budget', stage, examined)

    return CoverAttempt(best.target, best.elements, best.indices, stage,
                        best.total_premeasure_upper, True, examined)


def _greedy(remaining: BoxUnion, hulls: List[BoxUnion]) -> Optional[Tuple[int, ...]]:
    chosen = []
    while not remaining.is_empty:
        gains = [
            (remaining.intersect(h).measure(), -i)
            for i, h in enumerate(hulls) if i not in chosen
        ]
        if not gains:
            return None
        gain, neg_index = max(gains)
        if gain == 0:
            return None
        chosen.append(-neg_index)
        remaining = remaining.subtract(hulls[-neg_index])
    return tuple(sorted(chosen))
