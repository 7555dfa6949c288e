"""Optimality certificates and the three-line radius bound.

A ball ``B(c, r)`` is a smallest ball meeting a compact family of lines iff
every closed hemisphere of its boundary contains a tangency point.  In the
plane that is an angular test: sort the outward tangent directions and check
that no circular gap exceeds ``pi``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DegenerateDenominator,
    InsufficientTangents,
    InvalidParams,
    NoCover,
    NotTangent,
    UnsupportedDimension,
)
from .geometry import Ball, Direction, Hyperplane, line_intersection, rotate_vector
from .lp import solve_minimax_lines
from .median import Electorate, rotate_to_limiting

GAP_TOL = 1e-9
TANGENT_TOL = 1e-7


@dataclass(frozen=True)
class CoverCertificate:
    tangent_directions: List[Direction]
    max_gap: float
    covered: bool


@dataclass(frozen=True)
class SupportSet:
    hyperplanes: List[Hyperplane]

    def __len__(self) -> int:
        return len(self.hyperplanes)


def _outward(B: Ball, H: Hyperplane, tangent_tol: float) -> List[np.ndarray]:
    if H.dim != 2 or len(B.center) != 2:
        raise UnsupportedDimension("hemisphere cover is implemented in the plane")
    a = np.asarray(H.normal)
    s = float(a @ np.asarray(B.center)) - H.offset
    if abs(abs(s) - B.radius) > tangent_tol:
        raise NotTangent(f"line at distance {abs(s):.12g} from a ball of radius {B.radius:.12g}")
    if B.radius <= tangent_tol:
        # degenerate ball: the line passes through the centre and touches both poles
        return [a, -a]
    return [a] if s < 0 else [-a]


def max_circular_gap(angles: Sequence[float]) -> float:
    if len(angles) == 0:
        return 2.0 * math.pi
    t = np.sort(np.mod(np.asarray(angles, dtype=float), 2.0 * math.pi))
    gaps = np.diff(np.concatenate([t, [t[0] + 2.0 * math.pi]]))
    return float(np.max(gaps))


def hemisphere_cover(B: Ball, tangents: Sequence[Hyperplane], tangent_tol: float = TANGENT_TOL) -> CoverCertificate:
    """Check that the tangent lines leave no open half-circle of directions uncovered."""
    dirs: List[Direction] = []
    for H in tangents:
        for v in _outward(B, H, tangent_tol):
            dirs.append(Direction(tuple(v / np.linalg.norm(v))))
    gap = max_circular_gap([d.angle for d in dirs])
    return CoverCertificate(dirs, gap, gap <= math.pi + GAP_TOL)


def minimal_support(B: Ball, tangents: Sequence[Hyperplane], tangent_tol: float = TANGENT_TOL) -> SupportSet:
    """Smallest subset (at most three lines) that still certifies ``B``.

    Smaller sizes are tried first and subsets in lexicographic index order.
    """
    tangents = list(tangents)
    if not hemisphere_cover(B, tangents, tangent_tol).covered:
        raise NoCover("tangent lines do not cover every hemisphere")
    for size in (1, 2, 3):
        for S in itertools.combinations(range(len(tangents)), size):
            sub = [tangents[i] for i in S]
            if hemisphere_cover(B, sub, tangent_tol).covered:
                return SupportSet(sub)
    raise NoCover("no support of size <= 3 found")


def angle_bisector(H1: Hyperplane, H2: Hyperplane, region_point) -> Hyperplane:
    """Bisector of the angular region of ``H1`` and ``H2`` that holds ``region_point``.

    For parallel lines the equidistant parallel line is returned.
    """
    q = np.asarray(region_point, dtype=float)
    s1 = H1.signed_distance(q)
    s2 = H2.signed_distance(q)
    if abs(s1) <= 1e-12 or abs(s2) <= 1e-12:
        raise ValueError("region point lies on one of the lines")
    s1, s2 = math.copysign(1.0, s1), math.copysign(1.0, s2)
    a1, a2 = np.asarray(H1.normal), np.asarray(H2.normal)
    n = s1 * a1 - s2 * a2
    off = s1 * H1.offset - s2 * H2.offset
    if np.linalg.norm(n) <= 1e-12:
        # same-oriented parallel lines with q outside both: use the midline
        n = s1 * a1 + s2 * a2
        off = s1 * H1.offset + s2 * H2.offset
    norm = float(np.linalg.norm(n))
    return Hyperplane(tuple(n / norm), off / norm)


def inscribed_ball_three_lines(H1: Hyperplane, H2: Hyperplane, H3: Hyperplane) -> Ball:
    """Incircle of the triangle cut out by three lines.

    Parallel pairs or concurrent lines fall back to the minimax solver.
    """
    lines = (H1, H2, H3)
    verts = [line_intersection(lines[i], lines[j]) for i, j in ((1, 2), (0, 2), (0, 1))]
    if any(v is None for v in verts):
        return solve_minimax_lines(list(lines), 2)
    V = np.array(verts)
    area2 = abs((V[1, 0] - V[0, 0]) * (V[2, 1] - V[0, 1]) - (V[1, 1] - V[0, 1]) * (V[2, 0] - V[0, 0]))
    scale = max(1.0, float(np.max(np.abs(V))))
    if area2 <= 1e-12 * scale * scale:
        return solve_minimax_lines(list(lines), 2)
    g = V.mean(axis=0)
    b1 = angle_bisector(H1, H2, g)
    b2 = angle_bisector(H2, H3, g)
    c = line_intersection(b1, b2)
    if c is None:
        return solve_minimax_lines(list(lines), 2)
    return Ball(c, H1.distance(c))


@dataclass(frozen=True)
class MainHalfParams:
    alpha: float
    beta: float
    eta: float
    gamma: float = 0.0
    delta: float = 0.0
    nu: Optional[float] = None

    def __post_init__(self):
        if self.nu is None:
            object.__setattr__(self, "nu", 0.5 * math.pi + self.eta)

    def violations(self, allow_boundary: bool = False) -> List[str]:
        a, b, e, g, d = self.alpha, self.beta, self.eta, self.gamma, self.delta
        t = 1e-12
        bad = []
        if not (-0.5 * math.pi - t <= e < 0.0):
            bad.append(f"eta={e!r} outside [-pi/2, 0)")
        if not (0.5 * math.pi - t <= a <= 0.5 * math.pi - e + t):
            bad.append(f"alpha={a!r} outside [pi/2, pi/2 - eta]")
        if not (0.5 * math.pi - t <= b <= math.pi + t):
            bad.append(f"beta={b!r} outside [pi/2, pi]")
        upper_g = math.pi - b
        if not (-t <= g and (g <= upper_g + t if allow_boundary else g < upper_g)):
            bad.append(f"gamma={g!r} outside [0, pi - beta)")
        upper_d = math.pi - b - g
        if not (-t <= d and (d <= upper_d + t if allow_boundary else d < upper_d)):
            bad.append(f"delta={d!r} outside [0, pi - beta - gamma)")
        if abs(self.nu - (0.5 * math.pi + e)) > 1e-9:
            bad.append(f"nu={self.nu!r} differs from pi/2 + eta")
        return bad

    def validate(self, allow_boundary: bool = False) -> "MainHalfParams":
        bad = self.violations(allow_boundary)
        if bad:
            raise InvalidParams("; ".join(bad))
        return self


def _mainhalf_terms(p: MainHalfParams):
    a, b, e, g, d = p.alpha, p.beta, p.eta, p.gamma, p.delta
    c2 = math.cos(a + e - g)
    c1 = math.cos(a + e + b + d)
    s = math.sin(b + d + g)
    den = s + c2 - c1
    if abs(den) < 1e-12:
        raise DegenerateDenominator(f"denominator {den!r} too small")
    return c2 * math.cos(d), -s * math.sin(e), -c1 * math.cos(g), den


def mainhalf_radius(p: MainHalfParams, allow_boundary: bool = False) -> float:
    """Radius of the smallest ball meeting the three limiting lines of the canonical configuration."""
    p.validate(allow_boundary)
    t1, t2, t3, den = _mainhalf_terms(p)
    return (t1 + t2 + t3) / den


def mainhalf_lower_bound(p: MainHalfParams, allow_boundary: bool = False) -> float:
    """The radius formula with the nonnegative ``-sin(beta+delta+gamma) sin(eta)`` term dropped."""
    p.validate(allow_boundary)
    t1, _, t3, den = _mainhalf_terms(p)
    return (t1 + t3) / den


def mainhalf_lines(p: MainHalfParams, allow_boundary: bool = False) -> Tuple[Hyperplane, Hyperplane, Hyperplane]:
    """The rotated lines ``(H1(delta), H2(gamma), H3(nu))`` of the canonical configuration."""
    p.validate(allow_boundary)
    a, b, e, g, d = p.alpha, p.beta, p.eta, p.gamma, p.delta
    t2 = a + e - g
    t1 = a + e + b + d
    H1 = Hyperplane((math.cos(t1), math.sin(t1)), math.cos(d))
    H2 = Hyperplane((math.cos(t2), math.sin(t2)), math.cos(g))
    H3 = Hyperplane((0.0, -1.0), -math.sin(e))
    return H1, H2, H3


@dataclass(frozen=True)
class Similarity:
    """``x -> R(rotation) (x - translation) * scale``."""

    translation: Tuple[float, float]
    scale: float
    rotation: float

    def apply(self, p) -> Tuple[float, float]:
        v = (np.asarray(p, dtype=float) - np.asarray(self.translation)) * self.scale
        return tuple(float(x) for x in rotate_vector(v, self.rotation))

    def is_identity(self, tol: float = 1e-9) -> bool:
        rot = math.remainder(self.rotation, 2.0 * math.pi)
        return max(abs(self.translation[0]), abs(self.translation[1]), abs(self.scale - 1.0), abs(rot)) <= tol


@dataclass(frozen=True)
class CanonicalForm:
    transform: Similarity
    params: MainHalfParams
    tangent_points: Tuple[Tuple[float, float], ...]  # p1, p2, p3 after the transform
    limiting_lines: Tuple[Hyperplane, ...]  # H1(delta), H2(gamma), H3(nu) after the transform
    complete: bool  # gamma and delta fall inside their ranges
    alternatives: int = 0


def _pivot(E: Electorate, u: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    # prefer an ideal point sitting at the tangency point
    d = np.linalg.norm(E.array - u, axis=1)
    k = int(np.argmin(d))
    return E.array[k].copy() if d[k] <= tol else u


def canonicalize(E: Electorate, Y) -> CanonicalForm:
    """Map a certified yolk onto the unit ball and label three tangency points.

    ``Y`` is a :class:`yolkkit.yolk.YolkResult`.  Labelings of the tangency
    points are tried counter-clockwise; the first that satisfies every range
    condition on ``(eta, alpha, beta)`` wins and the number of other valid
    labelings is reported in ``alternatives``.
    """
    if E.dim != 2:
        raise UnsupportedDimension("canonical configuration is planar")
    if len(E) % 2 == 0:
        raise InsufficientTangents("canonical configuration needs an odd electorate")
    if not Y.certified or len(Y.tangent_directions) < 3:
        raise InsufficientTangents(f"need >= 3 certified tangent directions, got {len(Y.tangent_directions)}")
    c = np.asarray(Y.ball.center, dtype=float)
    r = Y.ball.radius
    if r <= 1e-12:
        raise InsufficientTangents("zero-radius yolk has no tangency points")
    to_unit = Similarity((float(c[0]), float(c[1])), 1.0 / r, 0.0)
    En = E.transformed(to_unit.apply)
    angles = sorted({round(d.angle % (2.0 * math.pi), 12) for d in Y.tangent_directions})
    pts = [_pivot(En, np.array([math.cos(t), math.sin(t)])) for t in angles]
    phis = [math.atan2(p[1], p[0]) for p in pts]
    found = []
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        for p3, p2, p1 in ((i, j, k), (j, k, i), (k, i, j)):
            al = (phis[p2] - phis[p3]) % (2.0 * math.pi)
            be = (phis[p1] - phis[p2]) % (2.0 * math.pi)
            if al + be >= 2.0 * math.pi or al < 0.5 * math.pi - 1e-9 or not (0.5 * math.pi - 1e-9 <= be <= math.pi + 1e-9):
                continue
            form = _label(En, to_unit, pts, phis, p1, p2, p3, al, be)
            if form is not None:
                found.append(form)
    if not found:
        raise InsufficientTangents("no labeling of the tangency points satisfies the range conditions")
    return replace(found[0], alternatives=len(found) - 1)


def _tangent(p) -> Hyperplane:
    n = np.asarray(p, dtype=float)
    n = n / np.linalg.norm(n)
    return Hyperplane(tuple(n), float(n @ p))


def _label(En, to_unit, pts, phis, i1, i2, i3, al, be) -> Optional[CanonicalForm]:
    p1, p2, p3 = pts[i1], pts[i2], pts[i3]
    nu = rotate_to_limiting(_tangent(p3), p3, En, "cw").angle
    eta = nu - 0.5 * math.pi
    if not (-0.5 * math.pi - 1e-12 <= eta < 0.0) or al > 0.5 * math.pi - eta + 1e-9:
        return None
    rho = eta - phis[i3]
    gamma = rotate_to_limiting(_tangent(p2), p2, En, "cw").angle
    delta = rotate_to_limiting(_tangent(p1), p1, En, "ccw").angle
    params = MainHalfParams(alpha=al, beta=be, eta=eta, gamma=gamma, delta=delta, nu=nu)
    complete = not params.violations()
    T = Similarity(to_unit.translation, to_unit.scale, rho)
    moved = tuple(tuple(float(x) for x in rotate_vector(p, rho)) for p in (p1, p2, p3))
    lines: Tuple[Hyperplane, ...] = ()
    if complete:
        lines = mainhalf_lines(params)
    return CanonicalForm(T, params, moved, lines, complete)
