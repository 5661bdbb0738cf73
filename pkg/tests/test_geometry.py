from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatcantor.errors import PreconditionError, UnboundedError
from fatcantor.geometry import (
    INF,
    NEG_INF,
    Box,
    BoxUnion,
    ExtendedRational,
    OpenBox,
    floor_log2,
    format_rational,
    grid_boxes,
    parse_coordinate,
    parse_rational,
    sqrt_rational,
    tile_check,
    to_fraction,
)

F = Fraction

grid_values = st.integers(min_value=-8, max_value=16).map(lambda k: F(k, 8))
small_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=50)
scale_factors = st.fractions(min_value=F(1, 4), max_value=3, max_denominator=4)


@st.composite
def boxes(draw, dim: int = 2):
    lo, hi = [], []
    for _ in range(dim):
        a = draw(grid_values)
        w = draw(st.integers(min_value=1, max_value=8))
        lo.append(a)
        hi.append(a + F(w, 8))
    return Box(tuple(lo), tuple(hi))


@st.composite
def unions(draw, dim: int = 2):
    return BoxUnion.from_boxes(draw(st.lists(boxes(dim), min_size=0, max_size=4)), dim)


def test_rationals_are_exact_strings():
    assert format_rational(3) == '3/1'
    assert format_rational(F(2, 4)) == '1/2'
    assert parse_rational('-6/4') == F(-3, 2)
    assert parse_rational(5) == F(5)
    assert parse_coordinate('-inf') is NEG_INF


def test_floats_and_decimals_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(ValueError):
        parse_rational('0.5')
    with pytest.raises(ValueError):
        parse_rational('1/0')


def test_floor_log2():
    assert floor_log2(F(1, 3)) == -2
    assert floor_log2(F(5, 8)) == -1
    assert floor_log2(F(4)) == 2


def test_infinity_orders_against_rationals():
    assert NEG_INF < F(-10 ** 9) < INF
    assert INF + F(3) is INF
    assert -INF is NEG_INF


def test_box_validation():
    with pytest.raises(PreconditionError):
        Box((F(1),), (F(0),))
    with pytest.raises(PreconditionError):
        Box((INF,), (INF,))
    assert Box((F(1),), (F(1),)).is_empty


def test_unbounded_volume_raises():
    half = Box.half_space(2, 0, F(1, 2), upper=True)
    assert not half.is_bounded
    with pytest.raises(UnboundedError):
        half.volume()
    assert half.intersect(Box.unit(2)).volume() == F(1, 2)


def test_half_space_complement():
    lower = Box.half_space(2, 1, F(1, 3), upper=False)
    assert lower.half_space_axis == 1
    upper = lower.complement_half_space()
    assert upper.lo == (NEG_INF, F(1, 3))
    assert upper.complement_half_space() == lower
    assert Box.unit(2).half_space_axis is None


def test_open_box_misses_closed_box():
    open_box = OpenBox((F(1, 4),), (F(1, 2),))
    assert open_box.misses(Box((F(1, 2),), (F(1),)))
    assert not open_box.misses(Box((F(0),), (F(1, 4) + F(1, 100),)))
    # degenerate closed box at the open boundary
    assert open_box.misses(Box((F(1, 4),), (F(1, 4),)))
    assert not open_box.misses(Box((F(1, 3),), (F(1, 3),)))


def test_open_box_restrict_and_shrink():
    box = OpenBox((F(0), F(0)), (F(1), F(1)))
    restricted = box.restrict(0, F(3, 8), F(5, 8))
    assert restricted == OpenBox((F(3, 8), F(0)), (F(5, 8), F(1)))
    assert restricted.shrink(0, F(1, 4)) == OpenBox((F(7, 16), F(0)), (F(9, 16), F(1)))
    assert box.restrict(1, F(2), F(3)) is None
    with pytest.raises(PreconditionError):
        box.shrink(0, F(1, 2))


def test_adjacent_boxes_merge():
    u = BoxUnion.from_boxes([Box((F(0),), (F(1, 2),)), Box((F(1, 2),), (F(1),))])
    assert u == BoxUnion.of(Box.unit(1))


def test_grid_union_is_the_cube():
    cells = grid_boxes((F(0), F(0)), (F(1, 3), F(1, 2)), (3, 2))
    assert len(cells) == 6
    assert BoxUnion.from_boxes(cells) == BoxUnion.of(Box.unit(2))


def test_clip_recanonicalizes():
    u = BoxUnion.from_boxes([Box((F(0), F(0)), (F(1), F(1, 2))), Box((F(0), F(1, 2)), (F(1, 2), F(1)))])
    clipped = u.clip(Box((F(0), F(0)), (F(1, 2), F(1))))
    assert clipped == BoxUnion.of(Box((F(0), F(0)), (F(1, 2), F(1))))


def test_diameter_squared():
    u = BoxUnion.from_boxes([Box((F(0), F(0)), (F(1, 4), F(1, 4))), Box((F(1), F(1)), (F(2), F(3, 2)))])
    assert u.diameter_squared() == F(4) + F(9, 4)
    assert BoxUnion.empty(2).diameter_squared() == 0


def test_combine_majority():
    a, b, c = (BoxUnion.of(Box((F(k, 4),), (F(k, 4) + F(1, 2),))) for k in range(3))
    majority = BoxUnion.combine([a, b, c], lambda m: sum(m) >= 2)
    assert majority == BoxUnion.of(Box((F(1, 4),), (F(3, 4),)))


@settings(max_examples=60, deadline=None)
@given(unions(), unions())
def test_inclusion_exclusion(a, b):
    assert (a | b).measure() + (a & b).measure() == a.measure() + b.measure()


@settings(max_examples=60, deadline=None)
@given(unions(), unions())
def test_difference_and_intersection_partition(a, b):
    assert (a - b) | (a & b) == a
    assert ((a - b) & b).is_empty
    assert (a ^ b) == (a - b) | (b - a)


@settings(max_examples=60, deadline=None)
@given(st.lists(boxes(), min_size=1, max_size=5))
def test_canonical_form_is_disjoint_and_stable(box_list):
    u = BoxUnion.from_boxes(box_list)
    assert u.is_pairwise_disjoint()
    assert u.canonical() == u
    assert BoxUnion.from_boxes(list(reversed(box_list))) == u
    assert all(u.contains_point(b.lo) for b in box_list)


@settings(max_examples=40, deadline=None)
@given(unions(), unions())
def test_issubset_matches_union(a, b):
    assert a.issubset(a | b)
    assert (a & b).issubset(a)
    assert a.issubset(b) == ((a | b) == b)


def test_extended_rational_arithmetic():
    root2 = sqrt_rational(2)
    assert root2 * root2 == 2
    assert ExtendedRational(0, 1, 8) == root2 * 2
    assert ExtendedRational(1, 1, 4) == 3
    assert (1 + root2) * (root2 - 1) == 1
    assert (root2 / (1 + root2)) == 2 - root2
    assert sqrt_rational(F(9, 4)).is_rational


@pytest.mark.parametrize('radicand, root, free', [
    (2 * 1009 ** 2, 1009, 2),
    (3 * 7919 ** 2 * 1013 ** 2, 7919 * 1013, 3),
    (1009 * 1013, 1, 1009 * 1013),
    (1009 ** 2, 1009, 1),
])
def test_large_square_factors_are_folded(radicand, root, free):
    x = ExtendedRational(0, 1, radicand)
    assert x.radicand == free
    assert x == sqrt_rational(free) * root
    assert x + sqrt_rational(free) == sqrt_rational(free) * (root + 1)
    assert x * sqrt_rational(free) == root * free


def test_extended_rational_ordering():
    root2 = sqrt_rational(2)
    assert F(141, 100) < root2 < F(142, 100)
    assert -root2 < F(-141, 100)
    assert sqrt_rational(3) > root2
    assert (root2 - F(3, 2)).sign() == -1


@settings(max_examples=80, deadline=None)
@given(small_fractions, small_fractions, small_fractions, small_fractions,
       st.sampled_from([2, 3, 5, 6]))
def test_comparison_agrees_with_high_precision(a, b, c, e, r):
    x = ExtendedRational(a, b, r)
    y = ExtendedRational(c, e, r)
    with mpmath.workdps(60):
        diff = x.to_mpf(60) - y.to_mpf(60)
    if abs(diff) > mpmath.mpf(10) ** -40:
        assert (x < y) == (diff < 0)
    else:
        assert x == y


def test_tile_check_counts():
    report = tile_check(Box((F(1, 4),), (F(5, 4),)), (F(3, 2),))
    assert report.count == 3
    assert report.base_count == 2
    assert report.refinement == Box((F(0),), (F(1, 2),))
    assert report.ok


def test_tile_check_rejects_bad_scales():
    with pytest.raises(PreconditionError):
        tile_check(Box.unit(2), (F(1),))
    with pytest.raises(PreconditionError):
        tile_check(Box.unit(1), (F(0),))


@settings(max_examples=50, deadline=None)
@given(boxes(dim=2), st.tuples(scale_factors, scale_factors))
def test_tiling_is_exact(base, scales):
    assert tile_check(base, scales).ok
