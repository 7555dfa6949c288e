"""Points, hyperplanes, balls and the handful of planar primitives built on them.

Everything here is plain float64 arithmetic.  Hyperplanes are stored as a unit
normal ``a`` and offset ``b`` describing ``{x : a.x = b}``; the pair ``(-a, -b)``
describes the same set and compares equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import (
    CoincidentPoints,
    DimensionMismatch,
    PivotNotOnHyperplane,
    UnsupportedDimension,
    ZeroNormal,
)

UNIT_TOL = 1e-12
ON_PLANE_TOL = 1e-9

Point = Tuple[float, ...]


def as_point(coords: Iterable[float]) -> Point:
    """Validate and freeze a coordinate sequence."""
    p = tuple(float(x) for x in coords)
    if len(p) < 2:
        raise DimensionMismatch(f"points need at least 2 coordinates, got {len(p)}")
    if not all(math.isfinite(x) for x in p):
        raise ValueError(f"non-finite coordinate in {p!r}")
    return p


def _vec(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


@dataclass(frozen=True, eq=False)
class Hyperplane:
    normal: Tuple[float, ...]
    offset: float

    def __post_init__(self):
        a = tuple(float(x) for x in self.normal)
        object.__setattr__(self, "normal", a)
        object.__setattr__(self, "offset", float(self.offset))
        norm = math.sqrt(sum(x * x for x in a))
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"hyperplane normal must be a unit vector (norm={norm!r})")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def flip(self) -> "Hyperplane":
        return Hyperplane(tuple(-x for x in self.normal), -self.offset)

    def canonical(self) -> "Hyperplane":
        """Sign-normalised copy: first nonzero normal coordinate positive."""
        for x in self.normal:
            if x != 0.0:
                return self if x > 0 else self.flip()
        return self

    def signed_distance(self, p) -> float:
        p = _vec(p)
        if p.shape != (self.dim,):
            raise DimensionMismatch(f"point of dim {p.shape} vs hyperplane of dim {self.dim}")
        return float(np.dot(self.normal, p) - self.offset)

    def distance(self, p) -> float:
        return abs(self.signed_distance(p))

    def isclose(self, other: "Hyperplane", tol: float = 1e-9) -> bool:
        if self.dim != other.dim:
            return False
        a, b = _vec(self.normal), _vec(other.normal)
        for s in (1.0, -1.0):
            if np.max(np.abs(a - s * b)) <= tol and abs(self.offset - s * other.offset) <= tol:
                return True
        return False

    def __eq__(self, other):
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.isclose(other, tol=UNIT_TOL)

    __hash__ = None  # equality is tolerance based

    def angle(self) -> float:
        """Angle of the normal in the plane, in (-pi, pi]."""
        if self.dim != 2:
            raise UnsupportedDimension("angle() is defined for planar lines only")
        return math.atan2(self.normal[1], self.normal[0])


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(x) for x in self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius >= 0.0:
            raise ValueError(f"ball radius must be nonnegative, got {self.radius!r}")


@dataclass(frozen=True)
class Direction:
    vector: Tuple[float, ...]

    def __post_init__(self):
        v = tuple(float(x) for x in self.vector)
        object.__setattr__(self, "vector", v)
        norm = math.sqrt(sum(x * x for x in v))
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"direction must be a unit vector (norm={norm!r})")

    @classmethod
    def from_angle(cls, theta: float) -> "Direction":
        return cls((math.cos(theta), math.sin(theta)))

    @property
    def angle(self) -> float:
        return math.atan2(self.vector[1], self.vector[0])


def normalize_hyperplane(a: Sequence[float], b: float) -> Hyperplane:
    """Scale ``(a, b)`` to a unit normal and fix the sign canonically."""
    a = _vec(a)
    norm = float(np.linalg.norm(a))
    if norm == 0.0 or not math.isfinite(norm):
        raise ZeroNormal("normal vector has zero length")
    unit = a / norm
    # renormalise once more so the stored normal passes the 1e-12 check
    unit = unit / np.linalg.norm(unit)
    return Hyperplane(tuple(unit), float(b) / norm).canonical()


def point_hyperplane_distance(p, H: Hyperplane) -> float:
    return H.distance(p)


def line_through_points(p, q) -> Hyperplane:
    p, q = _vec(p), _vec(q)
    if p.shape != (2,) or q.shape != (2,):
        raise UnsupportedDimension("line_through_points works in the plane only")
    d = q - p
    if np.max(np.abs(d)) <= UNIT_TOL:
        raise CoincidentPoints(f"points {tuple(p)} and {tuple(q)} coincide")
    a = np.array([-d[1], d[0]])
    n = a / np.linalg.norm(a)
    # anchor the offset on the midpoint to balance rounding between p and q
    return normalize_hyperplane(n, float(n @ ((p + q) / 2.0)))


def rotate_vector(v, theta: float):
    c, s = math.cos(theta), math.sin(theta)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def rotate_line_about_point(H: Hyperplane, pivot, theta: float, sense: str = "ccw") -> Hyperplane:
    """Rotate a planar line about a point lying on it.

    The returned normal is ``H.normal`` rotated by ``theta``; the sign of
    ``H`` is kept, so composing with the opposite rotation gives ``H`` back.
    """
    if H.dim != 2:
        raise UnsupportedDimension("rotation is implemented for planar lines")
    if sense not in ("cw", "ccw"):
        raise ValueError(f"sense must be 'cw' or 'ccw', got {sense!r}")
    pivot = _vec(pivot)
    if H.distance(pivot) > ON_PLANE_TOL:
        raise PivotNotOnHyperplane(f"pivot {tuple(pivot)} is {H.distance(pivot):.3g} away from the line")
    phi = theta if sense == "ccw" else -theta
    a = rotate_vector(H.normal, phi)
    norm = math.hypot(*a)
    a = (a[0] / norm, a[1] / norm)
    return Hyperplane(a, a[0] * pivot[0] + a[1] * pivot[1])


def tangent_hyperplane(B: Ball, alpha) -> Hyperplane:
    """Hyperplane with normal ``alpha`` touching ``B`` at ``c + r*alpha``."""
    a = alpha.vector if isinstance(alpha, Direction) else tuple(float(x) for x in alpha)
    if len(a) != len(B.center):
        raise DimensionMismatch("direction and ball dimensions differ")
    return Hyperplane(a, float(np.dot(a, B.center)) + B.radius)


def orientation(p, q, r) -> float:
    """Twice the signed area of triangle pqr (positive when counter-clockwise)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def wrap_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    t = math.fmod(theta, 2.0 * math.pi)
    if t < 0.0:
        t += 2.0 * math.pi
    if t >= 2.0 * math.pi:
        t = 0.0
    return t


def line_intersection(H1: Hyperplane, H2: Hyperplane):
    """Intersection point of two planar lines, or None when parallel."""
    A = np.array([H1.normal, H2.normal])
    det = float(np.linalg.det(A))
    if abs(det) <= 1e-12:
        return None
    x = np.linalg.solve(A, np.array([H1.offset, H2.offset]))
    return (float(x[0]), float(x[1]))
