from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.geometry import Box, OpenBox
from fatcantor.cantor import (
    CantorSchedule,
    GapCertificate,
    MembershipStatus,
    NeedsDeeperStage,
    find_gap,
    gaps_meeting,
    leaf_measure_bounds,
    limit_measure,
    line_cell_bounds,
    membership,
    stage_approx,
    stage_approx_within,
    stage_defect,
    stage_intervals,
    stage_measure,
    verify_gap_certificate,
)

F = Fraction


def test_limit_measures(schedule, plane_schedule):
    assert limit_measure(schedule) == F(1, 2)
    assert limit_measure(plane_schedule) == F(1, 4)


@pytest.mark.parametrize('n', range(11))
def test_stage_measure_formula(schedule, n):
    assert stage_measure(schedule, n) == F(1, 2) + F(1, 2 ** (n + 1))
    assert stage_defect(schedule, n) == F(1, 2 ** (n + 1))


def test_stage_measure_matches_boxes(schedule, plane_schedule):
    for s in (schedule, plane_schedule):
        for n in range(5):
            assert stage_approx(s, n).measure() == stage_measure(s, n)


def test_stage_lengths(schedule):
    assert schedule.interval_length(1) == F(3, 8)
    assert schedule.interval_length(2) == F(5, 32)
    assert schedule.removal(1) == F(1, 4)


def test_stage_intervals(schedule):
    assert stage_intervals(schedule, 1) == [(F(0), F(3, 8)), (F(5, 8), F(1))]
    assert stage_intervals(schedule, 2) == [
        (F(0), F(5, 32)), (F(7, 32), F(3, 8)), (F(5, 8), F(25, 32)), (F(27, 32), F(1)),
    ]


@pytest.mark.parametrize('c, rho', [('1', '1/2'), ('2', '1/4'), ('0', '1/4'), ('1', '-1/8')])
def test_infeasible_schedules_rejected(c, rho):
    with pytest.raises(PreconditionError):
        CantorSchedule(1, c, rho)


def test_other_schedule():
    schedule = CantorSchedule(1, F(1, 2), F(1, 3))
    # removed total c rho / (1 - 2 rho) = 1/2
    assert limit_measure(schedule) == F(1, 2)
    assert stage_approx(schedule, 3).measure() == schedule.line_measure(3)


def test_stage_cap_budget(plane_schedule):
    with pytest.raises(BudgetError) as info:
        stage_approx(plane_schedule, 9)
    assert info.value.suggested_stage == 8


def test_windowed_stage_matches_clip(plane_schedule):
    window = Box((F(1, 3), F(0)), (F(3, 4), F(1, 5)))
    clipped = stage_approx(plane_schedule, 3).clip(window)
    windowed = stage_approx_within(plane_schedule, 3, window)
    assert windowed.clip(window) == clipped


def test_gaps_meeting(schedule):
    assert gaps_meeting(schedule, 1, F(0), F(1)) == [(F(3, 8), F(5, 8))]
    assert gaps_meeting(schedule, 2, F(0), F(1, 4)) == [(F(5, 32), F(7, 32))]
    assert gaps_meeting(schedule, 1, F(0), F(3, 8)) == []


@pytest.mark.parametrize('point, status, stage', [
    (['1/2'], MembershipStatus.OUT, 1),
    (['3/8'], MembershipStatus.IN, 1),
    (['0'], MembershipStatus.IN, 0),
    (['3/16'], MembershipStatus.OUT, 2),
    (['2'], MembershipStatus.OUT, 0),
])
def test_line_membership(schedule, point, status, stage):
    result = membership(schedule, point, 8)
    assert result.status is status
    assert result.stage == stage


def test_plane_membership_reports_axis(plane_schedule):
    result = membership(plane_schedule, ['0', '1/2'], 8)
    assert result.is_out
    assert result.axis == 1
    assert membership(plane_schedule, ['5/8', '1'], 8).is_in


def test_membership_unknown_below_cap(schedule):
    # 1/3 is never an endpoint of this schedule
    result = membership(schedule, ['1/3'], 0)
    assert result.status is MembershipStatus.UNKNOWN


def test_find_gap_in_unit_interval(schedule):
    certificate = find_gap(schedule, [0], Box.unit(1), 6)
    assert certificate == GapCertificate(1, OpenBox((F(7, 16),), (F(9, 16),)), 0)
    assert verify_gap_certificate(schedule, [0], certificate, Box.unit(1))


def test_find_gap_outside_the_set(schedule):
    certificate = find_gap(schedule, [F(3)], Box.unit(1), 6)
    assert certificate.stage == 0
    assert verify_gap_certificate(schedule, [F(3)], certificate)


def test_find_gap_needs_deeper_stage(schedule):
    # [0, 5/32] is a surviving stage-2 interval; its first gap is at stage 3
    assert find_gap(schedule, [0], Box((F(0),), (F(5, 32),)), 2) == NeedsDeeperStage(2)
    assert find_gap(schedule, [0], Box((F(0),), (F(5, 32),)), 3).stage == 3


def test_forged_certificate_rejected(schedule):
    forged = GapCertificate(1, OpenBox((F(1, 4),), (F(1, 2),)), 0)
    assert not verify_gap_certificate(schedule, [0], forged)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=31), st.integers(min_value=1, max_value=8),
       st.integers(min_value=-8, max_value=8), st.integers(min_value=-8, max_value=8))
def test_plane_gap_certificates_verify(start, width, t0, t1):
    schedule = CantorSchedule(d=2)
    j = OpenBox((F(start, 32), F(0)), (F(start + width, 32), F(1)))
    t = (F(t0, 16), F(t1, 16))
    certificate = find_gap(schedule, t, j, 10)
    assert isinstance(certificate, GapCertificate)
    assert verify_gap_certificate(schedule, t, certificate, j)


def test_line_cell_bounds_exact_on_whole_line(schedule):
    assert line_cell_bounds(schedule, 3, F(0), F(1)) == (F(1, 2), F(1, 2))
    assert line_cell_bounds(schedule, 3, F(2), F(3)) == (F(0), F(0))


@pytest.mark.parametrize('n', [1, 3, 6])
def test_leaf_bounds_contain_the_half(schedule, n):
    lower, upper = leaf_measure_bounds(schedule, [0], Box((F(0),), (F(1, 2),)), n)
    # C is symmetric about 1/2, so the left half carries exactly 1/4
    assert lower <= F(1, 4) <= upper


def test_leaf_bounds_tighten(plane_schedule):
    clip = Box((F(1, 10), F(1, 3)), (F(9, 10), F(1)))
    widths = []
    for n in range(1, 7):
        lower, upper = leaf_measure_bounds(plane_schedule, [F(1, 7), 0], clip, n)
        widths.append(upper - lower)
    assert all(a >= b for a, b in zip(widths, widths[1:]))
    assert widths[-1] < widths[0]
