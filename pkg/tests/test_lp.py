import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from yolkkit.certify import hemisphere_cover
from yolkkit.errors import EmptyConstraintSet
from yolkkit.geometry import Hyperplane, normalize_hyperplane
from yolkkit.lp import active_lines, exhaustive_minimax_lines, seidel_lp, solve_minimax_lines


def incircle(A, B, C):
    """Classical incentre / inradius from side lengths."""
    A, B, C = map(np.asarray, (A, B, C))
    a, b, c = np.linalg.norm(B - C), np.linalg.norm(A - C), np.linalg.norm(A - B)
    s = 0.5 * (a + b + c)
    area = math.sqrt(s * (s - a) * (s - b) * (s - c))
    return (a * A + b * B + c * C) / (a + b + c), area / s


def lines_of_triangle(A, B, C):
    out = []
    for p, q in ((A, B), (B, C), (C, A)):
        d = np.subtract(q, p)
        out.append(normalize_hyperplane((-d[1], d[0]), -d[1] * p[0] + d[0] * p[1]))
    return out


@st.composite
def line_sets(draw, max_m=12):
    m = draw(st.integers(min_value=2, max_value=max_m))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)
    t = rng.uniform(0, 2 * math.pi, m)
    b = rng.normal(size=m)
    return [Hyperplane((math.cos(x), math.sin(x)), y) for x, y in zip(t, b)]


def test_seidel_small_lp():
    # min -x - y  s.t. x + 2y <= 4, 3x + y <= 6, box [0, 10]^2  ->  (8/5, 6/5)
    x = seidel_lp([[1, 2], [3, 1]], [4, 6], [-1, -1], [0, 0], [10, 10])
    assert x == pytest.approx([1.6, 1.2], abs=1e-12)
    assert seidel_lp([[1, 0], [-1, 0]], [0, -1], [1, 0], [-5, -5], [5, 5]) is None


def test_triangle_incircle():
    A, B, C = (0.0, 0.0), (3.0, 0.0), (0.4, 2.5)
    c, r = incircle(A, B, C)
    ball = solve_minimax_lines(lines_of_triangle(A, B, C), 2)
    assert ball.radius == pytest.approx(r, abs=1e-12)
    assert ball.center == pytest.approx(tuple(c), abs=1e-12)


def test_parallel_lines_least_norm():
    ball = solve_minimax_lines([Hyperplane((1, 0), 1), Hyperplane((1, 0), -1)], 2)
    assert ball.radius == pytest.approx(1.0, abs=1e-12)
    assert ball.center == pytest.approx((0.0, 0.0), abs=1e-9)
    ball = solve_minimax_lines([Hyperplane((0, 1), 3), Hyperplane((0, 1), 1)], 2)
    assert ball.radius == pytest.approx(1.0, abs=1e-12)
    assert ball.center == pytest.approx((0.0, 2.0), abs=1e-9)


def test_single_line_foot():
    H = normalize_hyperplane((3, 4), 10)
    ball = solve_minimax_lines([H], 2)
    assert ball.radius == 0
    assert ball.center == pytest.approx((1.2, 1.6), abs=1e-15)


def test_empty():
    with pytest.raises(EmptyConstraintSet):
        solve_minimax_lines([], 2)


def test_three_dimensional():
    planes = [Hyperplane(v, 1.0) for v in np.eye(3)] + [Hyperplane(tuple(-np.ones(3) / math.sqrt(3)), 1.0)]
    ball = solve_minimax_lines(planes, 3)
    ref = exhaustive_minimax_lines(planes)
    assert ball.radius == pytest.approx(ref.radius, abs=1e-9)


@given(line_sets())
def test_prop_matches_exhaustive(lines):
    assert abs(solve_minimax_lines(lines).radius - exhaustive_minimax_lines(lines).radius) <= 1e-9


@given(line_sets())
def test_prop_deterministic(lines):
    assert solve_minimax_lines(lines) == solve_minimax_lines(list(lines))


@given(line_sets())
def test_prop_optimum_is_covered(lines):
    ball = solve_minimax_lines(lines)
    tight = active_lines(ball.center, ball.radius, lines, 1e-7)
    assert hemisphere_cover(ball, tight, 1e-7).covered


@given(line_sets())
def test_prop_pushing_active_line_inward(lines):
    # moving a tight line towards the centre cannot enlarge the optimum
    ball = solve_minimax_lines(lines)
    c = np.asarray(ball.center)
    for i, H in enumerate(lines):
        s = H.signed_distance(c)
        if abs(abs(s) - ball.radius) > 1e-7:
            continue
        moved = list(lines)
        moved[i] = Hyperplane(H.normal, H.offset + 1e-4 * math.copysign(1.0, s))
        assert solve_minimax_lines(moved).radius <= ball.radius + 1e-12
