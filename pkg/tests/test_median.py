import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from yolkkit.constructions import family_nondegen, family_oddr2ok
from yolkkit.errors import EmptyElectorate, NoSecondPoint, UnsupportedDimension
from yolkkit.geometry import Direction, Hyperplane, rotate_line_about_point
from yolkkit.median import (
    Electorate,
    enumerate_limiting_median_lines,
    is_median,
    limiting_lines_degenerate,
    median_slab,
    rotate_to_limiting,
    side_counts,
)

from conftest import electorates, unit_vectors

ND, _ = family_nondegen(0.5)
TRIPLE = Electorate([(0, 0), (1, 0), (2, 0)])


def brute_limiting_lines(E):
    """Pairs of points, median check by counting, dedup by rounded canonical key."""
    P = E.array
    keys = set()
    for i, j in itertools.combinations(range(len(P)), 2):
        d = P[j] - P[i]
        if np.max(np.abs(d)) <= 1e-12:
            continue
        n = np.array([-d[1], d[0]]) / np.hypot(*d)
        b = n @ P[i]
        if n[0] < 0 or (n[0] == 0 and n[1] < 0):
            n, b = -n, -b
        s = P @ n - b
        if 2 * np.sum(s <= 1e-9) >= len(P) and 2 * np.sum(s >= -1e-9) >= len(P):
            keys.add((round(n[0], 9), round(n[1], 9), round(b, 9)))
    return keys


def test_side_counts_examples():
    # direct count on x-coordinates 2, 2, -2, -2, 1, -1 against x = 1
    assert side_counts(Hyperplane((1, 0), 1), ND) == (4, 3, 1)
    H = Hyperplane((0, 1), 0)
    assert side_counts(H, TRIPLE) == (3, 3, 3)
    assert side_counts(Hyperplane((1, 0), 1), TRIPLE) == (2, 2, 1)


@given(electorates(), unit_vectors(), st.floats(-2, 2))
def test_prop_side_count_identity(E, a, b):
    left, right, on = side_counts(Hyperplane(a, b), E)
    assert left + right - on == len(E)


def test_is_median_examples():
    assert is_median(Hyperplane((1, 0), 1), ND)
    assert is_median(Hyperplane((1, 0), -1), ND)
    single = Electorate([(0, 0)])
    assert is_median(Hyperplane((0, 1), 0), single)
    assert not is_median(Hyperplane((0, 1), 0.5), single)
    assert not is_median(Hyperplane((1, 0), 0.5), TRIPLE)


def test_median_slab_examples():
    s = median_slab(Direction((1, 0)), TRIPLE)
    assert (s.b_lo, s.b_hi) == (1, 1)
    s = median_slab(Direction((1, 0)), ND)
    assert (s.b_lo, s.b_hi) == (-1, 1)
    # oracle: sorted y-projections -.5, -.5, 0, 0, .5, .5
    s = median_slab(Direction((0, 1)), ND)
    assert (s.b_lo, s.b_hi) == (0, 0)


def test_empty_electorate():
    with pytest.raises(EmptyElectorate):
        Electorate([])


@given(electorates(), unit_vectors())
def test_prop_slab_consistency(E, a):
    s = median_slab(Direction(a), E)
    assert s.b_lo <= s.b_hi
    if len(E) % 2:
        assert s.b_lo == s.b_hi
    assert is_median(Hyperplane(a, s.b_lo), E)
    assert is_median(Hyperplane(a, s.b_hi), E)
    proj = np.sort(E.array @ np.array(a))
    step = 1e-8
    # only when the shifted offset does not land on another projection
    if np.min(np.abs(proj - (s.b_lo - step))) > 1e-9:
        assert not is_median(Hyperplane(a, s.b_lo - step), E)
    if np.min(np.abs(proj - (s.b_hi + step))) > 1e-9:
        assert not is_median(Hyperplane(a, s.b_hi + step), E)


@given(electorates(), unit_vectors())
def test_prop_median_flip(E, a):
    b = float(np.median(E.array @ np.array(a)))
    H = Hyperplane(a, b)
    assert is_median(H, E) == is_median(H.flip(), E)


@given(electorates(odd=True), unit_vectors(), unit_vectors())
def test_prop_odd_slabs_distinct(E, a1, a2):
    if abs(a1[0] * a2[1] - a1[1] * a2[0]) < 1e-6:
        return
    s1, s2 = median_slab(Direction(a1), E), median_slab(Direction(a2), E)
    assert not Hyperplane(a1, s1.b_lo).isclose(Hyperplane(a2, s2.b_lo))


def test_limiting_line_counts():
    assert len(enumerate_limiting_median_lines(ND)) == 11
    E, _ = family_oddr2ok(0.55 * math.pi, 3.0, 1e-3)
    assert len(enumerate_limiting_median_lines(E)) == 6
    tri = Electorate([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
    assert len(enumerate_limiting_median_lines(tri)) == 3


def test_limiting_collinear_single_line():
    lines = enumerate_limiting_median_lines(TRIPLE)
    assert len(lines) == 1 and lines[0] == Hyperplane((0, 1), 0)


def test_limiting_degenerate():
    E = Electorate([(1, 1), (1, 1)])
    assert limiting_lines_degenerate(E)
    assert enumerate_limiting_median_lines(E) == []
    with pytest.raises(UnsupportedDimension):
        enumerate_limiting_median_lines(Electorate([(0, 0, 0), (1, 0, 0)]))


@given(electorates())
def test_prop_limiting_matches_bruteforce(E):
    lines = enumerate_limiting_median_lines(E)
    assert len(lines) == len(brute_limiting_lines(E))
    for H in lines:
        assert is_median(H, E)
        assert np.sum(np.abs(E.array @ np.array(H.normal) - H.offset) < 1e-9) >= 2


def test_rotate_already_limiting():
    H = Hyperplane((0, 1), 0)
    res = rotate_to_limiting(H, (0, 0), TRIPLE, "ccw")
    assert res.angle == 0.0
    with pytest.raises(NoSecondPoint):
        rotate_to_limiting(H, (0, 0), Electorate([(0, 0)]), "cw")


def test_rotate_canonical_h3():
    # points on the unit circle: p3 at angle eta, another point straight left at the same height
    eta = -0.5
    p3 = (math.cos(eta), math.sin(eta))
    E = Electorate([p3, (-3.0, math.sin(eta)), (0.3, 2.0)])
    res = rotate_to_limiting(Hyperplane(p3, 1.0), p3, E, "cw")
    assert res.angle == pytest.approx(math.pi / 2 + eta, abs=1e-12)
    assert abs(res.hyperplane.normal[0]) < 1e-12


def _median_through_point(E, rng):
    n = len(E)
    for _ in range(100):
        t = rng.uniform(0, math.pi)
        a = (math.cos(t), math.sin(t))
        proj = E.array @ np.array(a)
        k = int(np.argsort(proj)[(n - 1) // 2])
        H = Hyperplane(a, float(proj[k]))
        if side_counts(H, E)[2] == 1:
            return H, E.array[k]
    raise AssertionError("no generic median line found")


def intermediate_rotations_are_median(E, rng):
    H, pivot = _median_through_point(E, rng)
    for sense in ("cw", "ccw"):
        nu = rotate_to_limiting(H, pivot, E, sense).angle
        for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
            G = rotate_line_about_point(H, pivot, frac * nu, sense)
            if not is_median(G, E):
                return False
    return True


def test_rotate_intermediate_median_100():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.choice([3, 5, 7]))
        E = Electorate(rng.uniform(size=(n, 2)))
        assert intermediate_rotations_are_median(E, rng)


@given(electorates(odd=True), st.integers(0, 1000))
def test_prop_rotation_result_contains_points(E, seed):
    rng = np.random.default_rng(seed)
    H, pivot = _median_through_point(E, rng)
    res = rotate_to_limiting(H, pivot, E, "ccw")
    assert res.hyperplane.distance(pivot) < 1e-9
    assert res.hyperplane.distance(res.second_point) < 1e-9
