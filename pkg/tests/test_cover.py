from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, OpenBox
from fatcantor.cantor import CantorSchedule, GapCertificate, NeedsDeeperStage
from fatcantor.ring import CantorRing, Diff, Gen, Inter, Union
from fatcantor.cover import (
    CoverAttempt,
    NoCover,
    UncoveredWitness,
    WitnessStrategy,
    check_cover,
    find_uncovered_box,
    grid_pool,
    infinite_cube_report,
    outer_upper,
    positive_hull,
    verify_cover,
    verify_witness,
)
from fatcantor.sampling import make_rng, random_gen

F = Fraction


def test_positive_hull(cantor_gen):
    other = Gen(('1/2',), Box.unit(1))
    assert positive_hull(cantor_gen) is cantor_gen
    assert positive_hull(Diff(cantor_gen, other)) == cantor_gen
    assert positive_hull(Union(Inter(cantor_gen, other), other)) == Union(cantor_gen, other)


def test_grid_pool():
    pool = grid_pool(2, 5)
    assert len(pool) == 5
    assert pool[0].x == (0, 0)
    assert pool[3].x == (F(1, 3), F(0))
    assert grid_pool(1, 0) == []
    assert [g.x for g in grid_pool(3, 8)][-1] == (F(1, 2),) * 3


def test_empty_family_witness(schedule):
    witness = find_uncovered_box(schedule, Box.unit(1), [], 6)
    assert witness.box == OpenBox((F(1, 4),), (F(3, 4),))
    assert witness.stage == 0
    assert witness.certificates == ()


def test_witness_for_the_set_itself(schedule, cantor_gen):
    witness = find_uncovered_box(schedule, Box.unit(1), [cantor_gen], 6)
    assert isinstance(witness, UncoveredWitness)
    assert witness.box == OpenBox((F(7, 16),), (F(9, 16),))
    certificate = witness.certificates[0]
    assert certificate.stage == 1
    assert certificate.gap == GapCertificate(1, witness.box, 0)
    assert verify_witness(schedule, Box.unit(1), [cantor_gen], witness)


def test_witness_ignores_subtrahends(schedule, cantor_gen):
    other = Gen(('1/4',), Box.unit(1))
    elements = [Diff(cantor_gen, other), Union(other, Gen(('-1/3',), Box.unit(1)))]
    witness = find_uncovered_box(schedule, Box.unit(1), elements, 10)
    assert isinstance(witness, UncoveredWitness)
    assert len(witness.certificates) == 3
    assert verify_witness(schedule, Box.unit(1), elements, witness)


def test_forged_witness_rejected(schedule, cantor_gen):
    forged = UncoveredWitness(OpenBox((F(0),), (F(1, 2),)), 1, ())
    assert not verify_witness(schedule, Box.unit(1), [cantor_gen], forged)
    outside = UncoveredWitness(OpenBox((F(1, 2),), (F(2),)), 0, ())
    assert not verify_witness(schedule, Box.unit(1), [], outside)


def test_needs_deeper_stage_then_sweep(schedule, cantor_gen):
    target = Box((F(0),), (F(5, 32),))
    assert find_uncovered_box(schedule, target, [cantor_gen], 1, sweep_fallback=False) == NeedsDeeperStage(1)
    swept = find_uncovered_box(schedule, target, [cantor_gen], 3, sweep_fallback=True)
    assert isinstance(swept, UncoveredWitness)
    assert verify_witness(schedule, target, [cantor_gen], swept)


def test_plane_pool_witness(plane_schedule):
    pool = grid_pool(2, 4)
    target = Box.unit(2)
    # no stage-0 gap meets the shrunk cube
    assert find_uncovered_box(plane_schedule, target, pool, 0, sweep_fallback=False) == NeedsDeeperStage(0)
    witness = find_uncovered_box(plane_schedule, target, pool, 4)
    assert verify_witness(plane_schedule, target, pool, witness)


def test_unbounded_target_rejected(schedule, cantor_gen):
    with pytest.raises(PreconditionError):
        find_uncovered_box(schedule, Box.half_space(1, 0, 0, upper=True), [cantor_gen], 4)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16), st.integers(min_value=1, max_value=2),
       st.integers(min_value=1, max_value=3))
def test_random_families_have_verified_witnesses(seed, d, count):
    rng = make_rng(seed)
    schedule = CantorSchedule(d=d)
    elements = [random_gen(rng, d) for _ in range(count)]
    witness = find_uncovered_box(schedule, Box.unit(d), elements, 12)
    assert isinstance(witness, UncoveredWitness)
    assert verify_witness(schedule, Box.unit(d), elements, witness)


def test_infinite_cube_report(plane_schedule):
    report = infinite_cube_report(plane_schedule, 3, 8)
    assert report.exhaustive
    assert len(report.rows) == 7
    assert report.inconclusive == 0
    assert report.all_verified


def test_infinite_cube_report_large_pool(schedule):
    report = infinite_cube_report(schedule, 4, 16, exhaustive_limit=3)
    assert not report.exhaustive
    assert [row.subset for row in report.rows] == [(0, 1, 2, 3)]
    assert report.all_verified


def test_infinite_cube_report_empty_pool(schedule):
    report = infinite_cube_report(schedule, 0, 4)
    assert report.rows[0].subset == ()
    assert report.rows[0].result.strategy is WitnessStrategy.SEQUENTIAL
    assert report.witnesses == 1


def test_cover_search_finds_the_generator(ring, cantor_gen):
    attempt = outer_upper(ring, cantor_gen, grid_pool(1, 4), 6)
    assert isinstance(attempt, CoverAttempt)
    assert attempt.indices == (0,)
    assert attempt.total_premeasure_upper == F(1, 2)
    assert verify_cover(ring, cantor_gen, attempt.elements, 6)


def test_longer_pool_never_raises_the_total(ring, cantor_gen):
    halves = [Gen((0,), Box((F(0),), (F(1, 2),))), Gen((0,), Box((F(1, 2),), (F(1),)))]
    shorter = outer_upper(ring, cantor_gen, halves, 6, budget=1)
    longer = outer_upper(ring, cantor_gen, halves + [Union(cantor_gen, Gen(('1/2',), Box.unit(1)))], 6, budget=1)
    assert isinstance(shorter, CoverAttempt)
    assert isinstance(longer, CoverAttempt)
    assert longer.total_premeasure_upper <= shorter.total_premeasure_upper
    assert longer.indices == (0, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16), st.integers(min_value=0, max_value=3),
       st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=8))
def test_cover_search_is_monotone_in_the_pool(seed, before, after, budget):
    ring = CantorRing(CantorSchedule())
    cantor_gen = Gen((F(0),), Box.unit(1))
    rng = make_rng(seed)
    pool = [random_gen(rng, 1) for _ in range(before)] + [cantor_gen]
    extra = [random_gen(rng, 1) for _ in range(after)]
    shorter = outer_upper(ring, cantor_gen, pool, 4, budget=budget)
    longer = outer_upper(ring, cantor_gen, pool + extra, 4, budget=budget)
    if isinstance(shorter, CoverAttempt):
        assert isinstance(longer, CoverAttempt)
        assert longer.total_premeasure_upper <= shorter.total_premeasure_upper


def test_cover_search_on_a_box_target(ring):
    result = outer_upper(ring, Box.unit(1), grid_pool(1, 2), 6)
    assert isinstance(result, NoCover)
    assert result.is_infinite
    assert verify_witness(ring.schedule, Box.unit(1), grid_pool(1, 2), result.witness)


def test_cover_search_without_cover(ring, cantor_gen):
    result = outer_upper(ring, cantor_gen, [Gen(('1/2',), Box.unit(1))], 4)
    assert isinstance(result, NoCover)
    assert result.examined >= 1


def test_check_cover_reports_uncovered_measure(ring, cantor_gen):
    half = Gen((0,), Box((F(0),), (F(1, 2),)))
    check = check_cover(ring, cantor_gen, [half], 2)
    assert not check.covers_outer_hulls
    assert check.uncovered_measure == F(5, 32) + F(5, 32)
    assert check_cover(ring, half, [cantor_gen], 2).verified


def test_check_cover_on_box_union_targets(ring, cantor_gen):
    check = check_cover(ring, Box((F(0),), (F(5, 32),)), [cantor_gen], 2)
    assert check.covers_outer_hulls
    assert not check.stage_robust


def test_parallel_report_matches_serial(schedule):
    serial = infinite_cube_report(schedule, 2, 8)
    parallel = infinite_cube_report(schedule, 2, 8, parallel_computation=True, max_cores=2)
    assert parallel.rows == serial.rows
