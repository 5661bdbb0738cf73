from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box
from fatcantor.packing import (
    CubeFamily,
    PackingLayout,
    Placement,
    merge,
    pack_cover,
    round_to_dyadic,
    verify_layout,
)
from fatcantor.sampling import make_rng, random_cube_family

F = Fraction


def test_round_to_dyadic():
    assert round_to_dyadic(['3/8', '1/2', '5']) == [(-2, F(1, 4)), (-1, F(1, 2)), (2, F(4))]
    with pytest.raises(PreconditionError):
        round_to_dyadic(['0'])


def test_merge_pairs_on_the_line():
    result = merge([-1, -2, -2], 1)
    assert [(c.id, c.level) for c in result.final] == [(4, 0)]
    assert [(s.level, s.constituents, s.result) for s in result.steps] == [(-2, (1, 2), 3), (-1, (0, 3), 4)]
    assert result.steps[0].offsets == ((F(0),), (F(1, 4),))


def test_merge_in_the_plane_leaves_remainders():
    result = merge([-3] * 5, 2)
    assert len(result.steps) == 1
    assert sorted(c.level for c in result.final) == [-3, -2]
    assert len(result.steps[0].offsets) == 4


def test_pack_three_cubes_on_the_line():
    family = CubeFamily(('1/2', '1/4', '1/4'), 1)
    layout = pack_cover(family)
    assert layout.placements == (Placement(0, (F(0),)),)
    assert layout.target == Box((F(0),), (F(1, 2),))
    assert layout.selected == 4
    assert layout.rounded_volume == 1
    assert verify_layout(layout, family)


def test_pack_with_scale():
    family = CubeFamily(('1/8',) * 16, 2)
    layout = pack_cover(family, target_side=F(1, 2), alpha=F(1, 4))
    assert layout.target == Box((F(0), F(0)), (F(1, 8), F(1, 8)))
    assert len(layout.placements) == 1
    assert verify_layout(layout, family)


def test_pack_rejects_small_families():
    with pytest.raises(PreconditionError):
        pack_cover(CubeFamily(('1/4', '1/4'), 1))
    with pytest.raises(PreconditionError):
        pack_cover(CubeFamily(('1',), 1), target_side=F(3, 4))
    with pytest.raises(PreconditionError):
        pack_cover(CubeFamily(('1',), 1), alpha=0)
    with pytest.raises(PreconditionError):
        CubeFamily(('1', '-1/2'), 1)


def test_forged_layouts_rejected():
    family = CubeFamily(('1/2', '1/4', '1/4'), 1)
    layout = pack_cover(family)
    short = PackingLayout((Placement(1, (F(0),)),), layout.target, layout.merge_tree, layout.selected,
                          layout.alpha, layout.rounded_volume, layout.family_volume)
    assert not verify_layout(short, family)
    repeated = PackingLayout((Placement(1, (F(0),)), Placement(1, (F(1, 4),))), layout.target,
                             layout.merge_tree, layout.selected, layout.alpha, layout.rounded_volume,
                             layout.family_volume)
    assert not verify_layout(repeated, family)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16), st.integers(min_value=1, max_value=3))
def test_random_families_pack(seed, d):
    family = random_cube_family(make_rng(seed), d)
    layout = pack_cover(family)
    assert verify_layout(layout, family)
    assert len({p.j for p in layout.placements}) == len(layout.placements)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=-6, max_value=0), min_size=1, max_size=40),
       st.integers(min_value=1, max_value=3))
def test_merge_bounds_every_level(levels, d):
    result = merge(levels, d)
    counts = Counter(c.level for c in result.final)
    assert max(counts.values()) <= 2 ** d - 1
    volume = sum(F(2) ** (k * d) for k in levels)
    assert sum(c.side ** d for c in result.final) == volume
