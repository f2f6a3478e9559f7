import pytest
from hypothesis import given
from hypothesis import strategies as st

from gjs import planar
from gjs.planar import PlanarPairing, enumerate_nc_pairings, glue_vertical, juxtapose

import oracles

seeds = st.integers(0, 2**32)


def random_pairing(data, bottom: int, top: int) -> PlanarPairing:
    return data.draw(st.sampled_from(enumerate_nc_pairings(bottom + top, bottom=bottom)))


@pytest.mark.parametrize("points", range(0, 13, 2))
def test_enumeration_matches_brute_force(points):
    for bottom in range(points + 1):
        mine = [tuple(p.pairs()) for p in enumerate_nc_pairings(points, bottom=bottom)]
        assert len(mine) == len(set(mine))
        assert set(mine) == oracles.brute_nc_pairings(bottom, points - bottom)


@pytest.mark.parametrize("points", range(0, 17, 2))
def test_enumeration_count_is_catalan(points):
    assert len(enumerate_nc_pairings(points)) == oracles.catalan(points // 2)


def test_enumeration_is_sorted_and_deterministic():
    first = enumerate_nc_pairings(8, bottom=3)
    assert [p.pairs() for p in first] == sorted(p.pairs() for p in first)
    assert first == enumerate_nc_pairings(8, bottom=3)


def test_small_enumerations():
    assert [p.pairs() for p in enumerate_nc_pairings(0)] == [[]]
    assert [p.pairs() for p in enumerate_nc_pairings(4)] == [[(0, 1), (2, 3)], [(0, 3), (1, 2)]]
    assert len(enumerate_nc_pairings(8)) == 14


@pytest.mark.parametrize("points", [1, 3, 7])
def test_odd_boundary_rejected(points):
    with pytest.raises(ValueError, match="odd boundary"):
        enumerate_nc_pairings(points)


def test_invalid_pairings_rejected():
    with pytest.raises(ValueError, match="crossing"):
        PlanarPairing.from_pairs(0, 4, [(0, 2), (1, 3)])
    with pytest.raises(ValueError):
        PlanarPairing(0, 2, (0, 1))
    with pytest.raises(ValueError):
        PlanarPairing.from_pairs(0, 4, [(0, 1)])


def test_gluing_examples():
    arc_cap, arc_cup = planar.cap(1), planar.cup(1)
    assert glue_vertical(arc_cap, arc_cup) == (planar.identity(0), 1)
    e = glue_vertical(arc_cup, arc_cap)[0]
    assert glue_vertical(e, e) == (e, 1)
    for p in enumerate_nc_pairings(6, bottom=2):
        assert glue_vertical(planar.identity(p.top), p) == (p, 0)
        assert glue_vertical(p, planar.identity(p.bottom)) == (p, 0)


def test_gluing_mismatch():
    with pytest.raises(ValueError, match="cannot glue"):
        glue_vertical(planar.identity(2), planar.identity(1))


@given(st.data())
def test_gluing_matches_path_following(data):
    middle = data.draw(st.integers(0, 4))
    top = data.draw(st.integers(0, 4).filter(lambda t: (t + middle) % 2 == 0))
    bottom = data.draw(st.integers(0, 4).filter(lambda b: (b + middle) % 2 == 0))
    upper, lower = random_pairing(data, middle, top), random_pairing(data, bottom, middle)
    glued, loops = glue_vertical(upper, lower)
    expected = oracles.glue(middle, top, upper.pairs(), bottom, middle, lower.pairs())
    assert (tuple(glued.pairs()), loops) == expected


@given(st.data())
def test_gluing_associative(data):
    sizes = [data.draw(st.integers(0, 3)) for _ in range(4)]
    for i in range(1, 4):
        if (sizes[i] + sizes[i - 1]) % 2:
            sizes[i] += 1
    a = random_pairing(data, sizes[2], sizes[3])
    b = random_pairing(data, sizes[1], sizes[2])
    c = random_pairing(data, sizes[0], sizes[1])
    ab, loops_ab = glue_vertical(a, b)
    left, loops_left = glue_vertical(ab, c)
    bc, loops_bc = glue_vertical(b, c)
    right, loops_right = glue_vertical(a, bc)
    assert left == right
    assert loops_ab + loops_left == loops_bc + loops_right


@given(st.data())
def test_juxtapose_monoid_and_mirror(data):
    shapes = [(data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))) for _ in range(3)]
    ps = [random_pairing(data, b, t + (b + t) % 2) for b, t in shapes]
    empty = planar.identity(0)
    assert juxtapose(empty, ps[0]) == ps[0] == juxtapose(ps[0], empty)
    assert juxtapose(juxtapose(ps[0], ps[1]), ps[2]) == juxtapose(ps[0], juxtapose(ps[1], ps[2]))
    assert ps[0].mirror().mirror() == ps[0]
    assert juxtapose(ps[0], ps[1]).mirror() == juxtapose(ps[1].mirror(), ps[0].mirror())
    assert tuple(ps[0].mirror().pairs()) == oracles.mirror_pairs(ps[0].bottom, ps[0].top, ps[0].pairs())


def test_juxtapose_example():
    both = juxtapose(planar.cup(1), planar.cup(1))
    assert both.pairs() == [(0, 1), (2, 3)]
    assert juxtapose(planar.identity(1), planar.identity(1)) == planar.identity(2)


def test_flip_and_mirror_of_cups():
    assert planar.cup(3).flip() == planar.cap(3)
    assert planar.cup(3).mirror() == planar.cup(3)
