import math

import pytest
from hypothesis import given, strategies as st

from yolkkit.errors import CoincidentPoints, DimensionMismatch, PivotNotOnHyperplane, ZeroNormal
from yolkkit.geometry import (
    Ball,
    Direction,
    Hyperplane,
    line_through_points,
    normalize_hyperplane,
    point_hyperplane_distance,
    rotate_line_about_point,
    tangent_hyperplane,
)

from conftest import coord, unit_vectors

S2 = math.sqrt(2.0)


@pytest.mark.parametrize(
    "a,b,na,nb",
    [
        ((2, 0), 4, (1, 0), 2),
        ((0, -3), 3, (0, 1), -1),
        ((1, 1), S2, (1 / S2, 1 / S2), 1),
    ],
)
def test_normalize_examples(a, b, na, nb):
    H = normalize_hyperplane(a, b)
    assert H.normal == pytest.approx(na, abs=1e-15)
    assert H.offset == pytest.approx(nb, abs=1e-15)


def test_normalize_zero():
    with pytest.raises(ZeroNormal):
        normalize_hyperplane((0, 0), 1)


def test_hyperplane_rejects_non_unit():
    with pytest.raises(ValueError):
        Hyperplane((1.0, 1.0), 0.0)


def test_sign_equivalence():
    H = Hyperplane((1.0, 0.0), 2.0)
    assert H == H.flip()
    assert H != Hyperplane((1.0, 0.0), -2.0)


def test_distance_examples():
    assert point_hyperplane_distance((0, 0), Hyperplane((1, 0), 1)) == 1
    assert point_hyperplane_distance((1, 0), Hyperplane((1, 0), 1)) == 0
    H = Hyperplane((1 / S2, 1 / S2), S2)
    assert point_hyperplane_distance((0, 0), H) == pytest.approx(S2, abs=1e-15)


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        point_hyperplane_distance((0, 0, 0), Hyperplane((1, 0), 1))


def test_line_through_points_examples():
    assert line_through_points((0, 0), (1, 0)) == Hyperplane((0, 1), 0)
    assert line_through_points((1, 0), (1, 5)) == Hyperplane((1, 0), 1)
    H = line_through_points((2, 1), (-2, -1 / 3))
    # slope 1/3 through (2, 1)
    assert -H.normal[0] / H.normal[1] == pytest.approx(1 / 3, abs=1e-14)
    assert H.distance((2, 1)) < 1e-12
    with pytest.raises(CoincidentPoints):
        line_through_points((1, 1), (1, 1))


def test_rotation_examples():
    H = Hyperplane((1.0, 0.0), 1.0)
    G = rotate_line_about_point(H, (1, 0), math.pi / 2, "ccw")
    assert G == Hyperplane((0, 1), 0)
    assert rotate_line_about_point(H, (1, 0), 0.0) == H
    with pytest.raises(PivotNotOnHyperplane):
        rotate_line_about_point(H, (0, 0), 0.3)


def test_rotation_to_horizontal():
    # tangent at angle eta, rotated clockwise by pi/2 + eta, is horizontal
    eta = -0.4
    p3 = (math.cos(eta), math.sin(eta))
    H3 = Hyperplane(p3, 1.0)
    G = rotate_line_about_point(H3, p3, math.pi / 2 + eta, "cw")
    assert abs(G.normal[0]) < 1e-12
    assert G.distance(p3) < 1e-12


def test_tangent_examples():
    assert tangent_hyperplane(Ball((0, 0), 1), Direction((1, 0))) == Hyperplane((1, 0), 1)
    assert tangent_hyperplane(Ball((2, 3), 0), Direction((0, 1))) == Hyperplane((0, 1), 3)
    eta = -0.7
    H = tangent_hyperplane(Ball((0, 0), 1), Direction.from_angle(eta))
    assert H == Hyperplane((math.cos(eta), math.sin(eta)), 1.0)


@given(coord, coord, unit_vectors(), coord)
def test_prop_distance_flip(x, y, a, b):
    H = Hyperplane(a, b)
    assert point_hyperplane_distance((x, y), H) == point_hyperplane_distance((x, y), H.flip())


@given(unit_vectors(), coord, st.floats(min_value=-3.0, max_value=3.0), st.sampled_from(["cw", "ccw"]))
def test_prop_rotation_roundtrip(a, t, theta, sense):
    H = Hyperplane(a, 1.5)
    pivot = (a[0] * 1.5 - a[1] * t, a[1] * 1.5 + a[0] * t)
    back = "ccw" if sense == "cw" else "cw"
    G = rotate_line_about_point(rotate_line_about_point(H, pivot, theta, sense), pivot, theta, back)
    d = math.atan2(G.normal[1], G.normal[0]) - math.atan2(H.normal[1], H.normal[0])
    assert abs(math.remainder(d, 2 * math.pi)) < 1e-9


@given(coord, coord, st.floats(min_value=0.0, max_value=5.0), unit_vectors())
def test_prop_tangent_distance(x, y, r, a):
    B = Ball((x, y), r)
    H = tangent_hyperplane(B, Direction(a))
    assert abs(H.distance(B.center) - r) < 1e-12


@given(coord, coord, coord, coord)
def test_prop_line_through_points(x1, y1, x2, y2):
    if max(abs(x1 - x2), abs(y1 - y2)) <= 1e-6:
        return
    H = line_through_points((x1, y1), (x2, y2))
    assert H.distance((x1, y1)) < 1e-12
    assert H.distance((x2, y2)) < 1e-12
