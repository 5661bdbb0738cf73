from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry import Box
from fatcantor.cantor import CantorSchedule, limit_measure
from fatcantor.ring import (
    CantorRing,
    Diff,
    Gen,
    Inter,
    Union,
    clip_to_box,
    empty_expr,
    generate_rn,
    union_all,
)
from fatcantor.sampling import make_rng, random_expr, random_half_space, random_box

F = Fraction


def shifted(x, lo, hi) -> Gen:
    return Gen((F(x),), Box((F(lo),), (F(hi),)))


@pytest.mark.parametrize('n', [1, 2, 5, 8])
def test_generator_bounds(ring, cantor_gen, n):
    bounds = ring.measure_bounds(cantor_gen, n)
    assert bounds.lower == F(1, 2)
    assert bounds.upper == F(1, 2) + F(1, 2 ** (n + 1))
    assert bounds.leaf_count == 1


def test_certified_bounds_of_generator_are_exact(ring, cantor_gen):
    bounds = ring.certified_bounds(cantor_gen, 3)
    assert (bounds.lower, bounds.upper) == (F(1, 2), F(1, 2))


def test_premeasure_stops_early(ring, cantor_gen):
    bounds = ring.premeasure(cantor_gen, F(1, 1024))
    assert bounds.stage == 1
    assert bounds.contains(F(1, 2))


def test_self_difference_is_empty(ring, cantor_gen):
    bounds = ring.measure_bounds(Diff(cantor_gen, cantor_gen), 4)
    assert (bounds.lower, bounds.upper) == (0, 0)
    assert ring.approx_set(Diff(cantor_gen, cantor_gen), 4).is_empty


def test_empty_expression(ring):
    bounds = ring.measure_bounds(empty_expr(1), 2)
    assert bounds.upper == 0


def test_plane_generator(plane_ring):
    g = Gen((0, 0), Box.unit(2))
    bounds = plane_ring.certified_bounds(g, 3)
    assert bounds.contains(limit_measure(plane_ring.schedule))
    assert bounds.width == 0


def test_generator_past_the_box_cap_uses_cell_counts():
    ring = CantorRing(CantorSchedule(), max_stage_exponent=4)
    third = Gen((0,), Box((F(0),), (F(1, 3),)))
    bounds = ring.certified_bounds(third, 30)
    assert bounds.stage == 30
    assert bounds.width <= F(1, 2 ** 30)
    assert bounds.meets(ring.certified_bounds(third, 4))
    with pytest.raises(BudgetError):
        ring.measure_bounds(third, 30)
    with pytest.raises(BudgetError):
        ring.certified_bounds(Union(third, third), 30)


def test_bounds_shrink_and_stay_consistent(ring, cantor_gen):
    e = Union(cantor_gen, shifted('1/2', '1/2', '3/2'))
    previous = None
    for n in range(1, 9):
        bounds = ring.measure_bounds(e, n)
        assert bounds.lower <= bounds.upper
        assert bounds.width <= 2 * F(1, 2 ** (n + 1)) * 2
        if previous is not None:
            assert previous.meets(bounds)
        previous = bounds


def test_premeasure_budget_error():
    ring = CantorRing(CantorSchedule(), max_stage_exponent=2)
    e = Union(Gen((0,), Box.unit(1)), shifted('1/3', '0', '2'))
    with pytest.raises(BudgetError) as info:
        ring.premeasure(e, F(1, 10 ** 6))
    assert info.value.suggested_stage == 2
    assert info.value.partial['bounds'].stage <= 2


def test_premeasure_rejects_bad_tolerance(ring, cantor_gen):
    with pytest.raises(PreconditionError):
        ring.premeasure(cantor_gen, 0)


def test_dimension_mismatch(ring):
    with pytest.raises(PreconditionError):
        ring.approx_set(Gen((0, 0), Box.unit(2)), 1)
    with pytest.raises(PreconditionError):
        Union(Gen((0,), Box.unit(1)), Gen((0, 0), Box.unit(2)))


def test_clip_to_box_pushes_to_leaves(cantor_gen):
    box = Box((F(1, 4),), (F(3, 4),))
    other = shifted('1/8', '0', '1')
    clipped = clip_to_box(Diff(Union(cantor_gen, other), other), box)
    assert clipped == Diff(Union(Gen((0,), box), Gen(('1/8',), box)), other)
    assert clipped.leaf_count == 3


def test_split_identity(plane_ring):
    e = Diff(Gen((0, 0), Box.unit(2)), Gen(('1/8', '1/4'), Box.unit(2)))
    report = plane_ring.split_identity_check(e, Box.half_space(2, 0, F(1, 3), upper=False), 3)
    assert report.holds
    with pytest.raises(PreconditionError):
        plane_ring.split_identity_check(e, Box.unit(2), 3)


def test_clip_commutes(ring, cantor_gen):
    e = Inter(cantor_gen, shifted('1/4', '-1', '2'))
    report = ring.clip_check(e, Box((F(1, 5),), (F(4, 5),)), 4)
    assert report.identical
    assert report.clipped_measure == report.intersected_measure


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16), st.integers(min_value=1, max_value=2))
def test_random_split_and_clip(seed, d):
    rng = make_rng(seed)
    ring = CantorRing(CantorSchedule(d=d))
    e = random_expr(rng, d, max_leaves=4)
    stage = 3 if d == 1 else 2
    assert ring.split_identity_check(e, random_half_space(rng, d), stage).holds
    assert ring.clip_check(e, random_box(rng, d), stage).identical


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16))
def test_random_bounds_bracket_deeper_stage(seed):
    rng = make_rng(seed)
    ring = CantorRing(CantorSchedule())
    e = random_expr(rng, 1, max_leaves=4)
    coarse, fine = ring.measure_bounds(e, 3), ring.measure_bounds(e, 7)
    assert coarse.meets(fine)
    assert fine.lower <= fine.upper


def test_generate_rn_levels(ring, cantor_gen):
    pool = [cantor_gen, shifted('1/2', '0', '2')]
    first = generate_rn(ring, pool, 1)
    assert first.expressions == pool
    assert first.merged == 0

    second = generate_rn(ring, pool, 2)
    assert second.expressions[:2] == pool
    assert second.candidates == 2 + 2 * 2 * 2
    # A - A is empty and A | A repeats A
    assert second.merged > 0
    assert len(second.expressions) == second.candidates - second.merged


def test_generate_rn_budget(ring, cantor_gen):
    pool = [cantor_gen, shifted('1/2', '0', '2'), shifted('1/4', '0', '1')]
    with pytest.raises(BudgetError):
        generate_rn(ring, pool, 3, max_expressions=5)


def test_generate_rn_validation(ring, cantor_gen):
    with pytest.raises(PreconditionError):
        generate_rn(ring, [cantor_gen], 0)
    with pytest.raises(PreconditionError):
        generate_rn(ring, [], 1)
    with pytest.raises(PreconditionError):
        generate_rn(ring, [Union(cantor_gen, cantor_gen)], 1)


def test_union_all(cantor_gen):
    other = shifted('1/2', '0', '2')
    assert union_all([cantor_gen, other]) == Union(cantor_gen, other)
    with pytest.raises(PreconditionError):
        union_all([])
