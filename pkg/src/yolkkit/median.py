"""Median hyperplanes of a finite electorate.

A hyperplane is *median* when each closed halfspace holds at least half of
the ideal points (points on the hyperplane count for both sides).  Limiting
median lines are median lines through two or more ideal points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, EmptyElectorate, NoSecondPoint, UnsupportedDimension
from .geometry import (
    ON_PLANE_TOL,
    Direction,
    Hyperplane,
    Point,
    as_point,
    line_through_points,
    rotate_vector,
)

SAME_POINT_TOL = 1e-12
ANGLE_TOL = 1e-12


class Electorate:
    """Ordered multiset of ideal points sharing one dimension."""

    def __init__(self, points: Sequence[Sequence[float]]):
        pts = [as_point(p) for p in points]
        if not pts:
            raise EmptyElectorate("an electorate needs at least one ideal point")
        k = len(pts[0])
        if any(len(p) != k for p in pts):
            raise DimensionMismatch("all ideal points must share one dimension")
        arr = np.array(pts, dtype=float)
        arr.setflags(write=False)
        self._points = arr
        self._cache: dict = {}

    @property
    def array(self) -> np.ndarray:
        return self._points

    @property
    def points(self) -> List[Point]:
        return [tuple(map(float, row)) for row in self._points]

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self._points.shape[0]

    def __repr__(self) -> str:
        return f"Electorate(n={len(self)}, k={self.dim})"

    def distinct_count(self) -> int:
        return len(_distinct_indices(self._points))

    def transformed(self, fn) -> "Electorate":
        return Electorate([fn(p) for p in self.points])


@dataclass(frozen=True)
class MedianSlab:
    direction: Direction
    b_lo: float
    b_hi: float

    def lines(self) -> Tuple[Hyperplane, Hyperplane]:
        a = self.direction.vector
        return Hyperplane(a, self.b_lo), Hyperplane(a, self.b_hi)


@dataclass(frozen=True)
class RotationResult:
    hyperplane: Hyperplane
    angle: float
    second_point: Point


def _distinct_indices(arr: np.ndarray) -> List[int]:
    keep: List[int] = []
    for i, p in enumerate(arr):
        if all(np.max(np.abs(p - arr[j])) > SAME_POINT_TOL for j in keep):
            keep.append(i)
    return keep


def _check_dim(H: Hyperplane, E: Electorate):
    if H.dim != E.dim:
        raise DimensionMismatch(f"hyperplane dim {H.dim} vs electorate dim {E.dim}")


def side_counts(H: Hyperplane, E: Electorate, tol: float = ON_PLANE_TOL) -> Tuple[int, int, int]:
    """Counts of ideal points in the closed left halfspace, closed right halfspace, and on H."""
    _check_dim(H, E)
    s = E.array @ np.asarray(H.normal) - H.offset
    left = int(np.count_nonzero(s <= tol))
    right = int(np.count_nonzero(s >= -tol))
    on = int(np.count_nonzero(np.abs(s) <= tol))
    return left, right, on


def is_median(H: Hyperplane, E: Electorate, tol: float = ON_PLANE_TOL) -> bool:
    left, right, _ = side_counts(H, E, tol)
    n = len(E)
    return 2 * left >= n and 2 * right >= n


def median_slab(a, E: Electorate) -> MedianSlab:
    """Interval of offsets ``b`` for which ``H(a, b)`` is a median hyperplane."""
    if len(E) == 0:
        raise EmptyElectorate("empty electorate")
    d = a if isinstance(a, Direction) else Direction(tuple(a))
    if len(d.vector) != E.dim:
        raise DimensionMismatch("direction and electorate dimensions differ")
    proj = np.sort(E.array @ np.asarray(d.vector))
    n = len(proj)
    if n % 2:
        m = float(proj[(n - 1) // 2])
        return MedianSlab(d, m, m)
    return MedianSlab(d, float(proj[n // 2 - 1]), float(proj[n // 2]))


def enumerate_limiting_median_lines(E: Electorate, tol: float = ON_PLANE_TOL) -> List[Hyperplane]:
    """All distinct median lines through at least two distinct ideal points.

    Each line is reported once, built from the two lowest-indexed distinct
    points lying on it.  Returns an empty list when fewer than two distinct
    points exist (see :func:`limiting_lines_degenerate`).
    """
    if E.dim != 2:
        raise UnsupportedDimension("limiting median lines are enumerated in the plane only")
    arr = E.array
    distinct = _distinct_indices(arr)
    lines: List[Hyperplane] = []
    for ii, i in enumerate(distinct):
        for j in distinct[ii + 1:]:
            H = line_through_points(arr[i], arr[j])
            on = [k for k in distinct if abs(H.signed_distance(arr[k])) <= tol]
            # collinear triples: only the lowest-indexed pair on the line reports it
            if (on[0], on[1]) != (i, j):
                continue
            if is_median(H, E, tol):
                lines.append(H)
    return lines


def limiting_lines_degenerate(E: Electorate) -> bool:
    """True when the electorate has fewer than two distinct points."""
    return E.distinct_count() < 2


def _line_angle(H: Hyperplane) -> float:
    # angle of the line's direction vector, normal rotated by +90 degrees
    return math.atan2(H.normal[0], -H.normal[1])


def rotate_to_limiting(H: Hyperplane, pivot, E: Electorate, sense: str = "ccw") -> RotationResult:
    """Rotate a median line about an ideal point until it meets a second ideal point.

    Returns the smallest angle ``nu >= 0`` (0 when ``H`` already holds another
    point) together with the line through the pivot and that point.  Ties in
    ``nu`` go to the lexicographically smallest point.
    """
    if E.dim != 2 or H.dim != 2:
        raise UnsupportedDimension("rotation to a limiting line is planar")
    if sense not in ("cw", "ccw"):
        raise ValueError(f"sense must be 'cw' or 'ccw', got {sense!r}")
    pivot = np.asarray(pivot, dtype=float)
    arr = E.array
    others = [k for k in range(len(E)) if np.max(np.abs(arr[k] - pivot)) > SAME_POINT_TOL]
    if not others:
        raise NoSecondPoint("no ideal point distinct from the pivot")
    psi = _line_angle(H)
    best = None
    for k in others:
        d = arr[k] - pivot
        if abs(H.signed_distance(arr[k])) <= ON_PLANE_TOL:
            nu = 0.0
        else:
            phi = math.atan2(d[1], d[0])
            nu = math.fmod((phi - psi) if sense == "ccw" else (psi - phi), math.pi)
            if nu < 0.0:
                nu += math.pi
            if nu > math.pi - ANGLE_TOL:
                nu = 0.0
        key = (nu, tuple(arr[k]))
        if best is None or key[0] < best[0][0] - ANGLE_TOL or (
            abs(key[0] - best[0][0]) <= ANGLE_TOL and key[1] < best[0][1]
        ):
            best = (key, k)
    (nu, second), k = best
    if nu == 0.0:
        line = line_through_points(pivot, arr[k])
        # keep the caller's orientation
        if np.dot(line.normal, H.normal) < 0:
            line = line.flip()
        return RotationResult(line, 0.0, tuple(map(float, arr[k])))
    target = rotate_vector(H.normal, nu if sense == "ccw" else -nu)
    line = line_through_points(pivot, arr[k])
    if line.normal[0] * target[0] + line.normal[1] * target[1] < 0:
        line = line.flip()
    return RotationResult(line, float(nu), tuple(map(float, arr[k])))
