import itertools

import pytest
from hypothesis import given, strategies as st

from dadcert.errors import DimensionMismatch
from dadcert.lattice import (
    CubeWindow,
    cube_gap_sq,
    cube_points,
    in_euclidean_ball,
    translate,
)


def brute_gap_sq(c1, c2, D):
    """Minimum squared distance over all point pairs of the two cubes."""
    a = CubeWindow(c1, D).points()
    b = CubeWindow(c2, D).points()
    return min(sum((x - y) ** 2 for x, y in zip(p, q)) for p in a for q in b)


def vectors(d, lo=-8, hi=8):
    return st.tuples(*[st.integers(lo, hi)] * d)


def test_cube_points_small():
    assert cube_points(0, 2) == [(0, 0)]
    pts = cube_points(1, 2)
    assert len(pts) == 9
    assert set(pts) == set(itertools.product((-1, 0, 1), repeat=2))
    assert pts == sorted(pts)


@pytest.mark.parametrize("l", range(5))
@pytest.mark.parametrize("d", [1, 2, 3])
def test_cube_cardinality(l, d):
    pts = cube_points(l, d)
    assert len(pts) == len(set(pts)) == (2 * l + 1) ** d


def test_cube_points_rejects_zero_dim():
    with pytest.raises(DimensionMismatch):
        cube_points(1, 0)


def test_translate_examples():
    S = [(1, 2), (-3, 0)]
    assert translate(S, (0, 0)) == sorted(S)
    assert translate([(1, 1)], (-1, 2)) == [(0, 3)]
    with pytest.raises(DimensionMismatch):
        translate([(1, 1)], (1,))


@given(st.lists(vectors(2), max_size=10), vectors(2))
def test_translate_inverse(S, v):
    back = translate(translate(S, v), tuple(-a for a in v))
    assert back == sorted(S)


def test_gap_examples_against_brute_force():
    c = (3, -2)
    assert cube_gap_sq(c, c, 2) == 0
    assert brute_gap_sq((0,), (13,), 2) == 81
    assert cube_gap_sq((0,), (13,), 2) == 81
    assert brute_gap_sq((0, 0), (5, 5), 1) == 18
    assert cube_gap_sq((0, 0), (5, 5), 1) == 18
    with pytest.raises(DimensionMismatch):
        cube_gap_sq((0,), (0, 0), 1)


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("D", [0, 1, 2])
def test_gap_matches_brute_force_exhaustively(d, D):
    origin = (0,) * d
    for diff in itertools.product(range(-6, 7), repeat=d):
        gap = cube_gap_sq(origin, diff, D)
        assert gap == brute_gap_sq(origin, diff, D)
        overlap = bool(set(CubeWindow(origin, D).points()) & set(CubeWindow(diff, D).points()))
        assert (gap == 0) == overlap


@given(vectors(3), vectors(3), vectors(3), st.integers(0, 3))
def test_gap_symmetric_and_translation_invariant(c1, c2, v, D):
    g = cube_gap_sq(c1, c2, D)
    assert g == cube_gap_sq(c2, c1, D)
    shift = lambda c: tuple(a + b for a, b in zip(c, v))
    assert g == cube_gap_sq(shift(c1), shift(c2), D)


def test_euclidean_ball():
    assert in_euclidean_ball((0, 0), 0)
    assert in_euclidean_ball((3, 4), 5)
    assert not in_euclidean_ball((3, 4), 4)
    for R in range(11):
        assert not in_euclidean_ball((R + 1,), R)
        assert in_euclidean_ball((R,), R)


def test_cube_window():
    w = CubeWindow((1, 1), 1)
    assert len(w) == 9
    assert (2, 0) in w and (3, 1) not in w
    assert w.intersects(CubeWindow((3, 3), 1))
    assert not w.intersects(CubeWindow((4, 1), 1))
    with pytest.raises(ValueError):
        CubeWindow((0,), -1)
