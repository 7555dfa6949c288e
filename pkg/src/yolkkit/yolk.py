"""The yolk in the plane: smallest ball meeting every median line.

For a centre ``c`` let ``f(c)`` be the largest distance from ``c`` to a median
line.  Between consecutive *critical angles* (directions in which two ideal
points project to the same value) the points realising the median slab are
fixed, so ``f`` is a maximum over finitely many pieces

    h(c) = max_{theta in [ta, tb]} |a(theta).(c - p_m)|

each of which is evaluated exactly.  ``f`` is convex; it is minimised by a
cutting-plane loop (every piece maximiser is a median line, so the minimax LP
over the lines collected so far is a lower bound) followed by an exact
polish over small bases of near-active lines and points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import ConvergenceFailure, UnsupportedDimension
from .geometry import ON_PLANE_TOL, Ball, Direction, Hyperplane
from .lp import _minimax_arrays
from .median import Electorate, MedianSlab, median_slab

MERGE_TOL = 1e-12
FOOT_TOL = 1e-7
SNAP_TOL = 1e-14
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SweepEvaluation:
    value: float
    argmax_direction: Direction
    argmax_slab: MedianSlab


@dataclass(frozen=True)
class YolkResult:
    ball: Ball
    tangent_directions: List[Direction]
    iterations: int
    certified: bool
    tangent_lines: List[Hyperplane] = field(default_factory=list)
    max_gap: float = math.nan


@dataclass(frozen=True)
class GridSpec:
    points_per_axis: int = 17
    refinements: int = 4
    expand: float = 0.5
    window_cells: int = 2


class _Pieces:
    """Piecewise description of ``f`` for one electorate."""

    def __init__(self, P: np.ndarray):
        n = len(P)
        self.P = P
        ii, jj = np.triu_indices(n, 1)
        D = P[jj] - P[ii]
        keep = np.max(np.abs(D), axis=1) > MERGE_TOL
        D = D[keep]
        crit = np.mod(np.arctan2(D[:, 1], D[:, 0]) + 0.5 * math.pi, math.pi)
        crit[crit >= math.pi - MERGE_TOL] = 0.0
        crit = np.sort(crit)
        if crit.size:
            merged = [crit[0]]
            for t in crit[1:]:
                if t - merged[-1] > MERGE_TOL:
                    merged.append(t)
            crit = np.array(merged)
            if crit.size > 1 and crit[0] + math.pi - crit[-1] <= MERGE_TOL:
                crit = crit[:-1]
            bounds = np.concatenate([crit, [crit[0] + math.pi]])
        else:
            bounds = np.array([0.0, math.pi])
        ta, tb = bounds[:-1], bounds[1:]
        mid = 0.5 * (ta + tb)
        proj = P @ np.vstack([np.cos(mid), np.sin(mid)])
        order = np.argsort(proj, axis=0, kind="stable")
        if n % 2:
            idx = [order[(n - 1) // 2]]
        else:
            idx = [order[n // 2 - 1], order[n // 2]]
        m = np.concatenate(idx)
        self.m = m
        self.ta = np.tile(ta, len(idx))
        self.tb = np.tile(tb, len(idx))
        self.ua = np.stack([np.cos(self.ta), np.sin(self.ta)], axis=1)
        self.ub = np.stack([np.cos(self.tb), np.sin(self.tb)], axis=1)
        self.width = self.tb - self.ta
        self.Pm = P[m]
        self.scale = 1.0 + float(np.max(np.abs(P - P.mean(axis=0))))

    def values(self, c) -> Tuple[np.ndarray, np.ndarray]:
        """Per-piece maxima and maximising angles at a single centre."""
        d = np.asarray(c, dtype=float) - self.Pm
        va = np.abs(np.einsum("ij,ij->i", d, self.ua))
        vb = np.abs(np.einsum("ij,ij->i", d, self.ub))
        nd = np.hypot(d[:, 0], d[:, 1])
        rel = np.mod(np.arctan2(d[:, 1], d[:, 0]) - self.ta, math.pi)
        inside = (rel <= self.width) & (nd > 0)
        vi = np.where(inside, nd, -1.0)
        vals = np.maximum(np.maximum(va, vb), vi)
        theta = np.where(vi >= np.maximum(va, vb), self.ta + rel, np.where(va >= vb, self.ta, self.tb))
        return vals, theta

    def f_many(self, C: np.ndarray) -> np.ndarray:
        """``f`` at each row of ``C``."""
        C = np.atleast_2d(np.asarray(C, dtype=float))
        out = np.empty(len(C))
        step = max(1, 200000 // max(1, len(self.m)))
        for s in range(0, len(C), step):
            d = C[s:s + step, None, :] - self.Pm[None, :, :]
            va = np.abs(np.einsum("cij,ij->ci", d, self.ua))
            vb = np.abs(np.einsum("cij,ij->ci", d, self.ub))
            nd = np.hypot(d[..., 0], d[..., 1])
            rel = np.mod(np.arctan2(d[..., 1], d[..., 0]) - self.ta, math.pi)
            vi = np.where((rel <= self.width) & (nd > 0), nd, -1.0)
            out[s:s + step] = np.max(np.maximum(np.maximum(va, vb), vi), axis=1)
        return out

    def candidates(self, c, threshold: float):
        """(theta, piece) pairs whose value at ``c`` is at least ``threshold``.

        Each piece contributes its endpoints and interior maximiser separately.
        """
        d = np.asarray(c, dtype=float) - self.Pm
        va = np.abs(np.einsum("ij,ij->i", d, self.ua))
        vb = np.abs(np.einsum("ij,ij->i", d, self.ub))
        nd = np.hypot(d[:, 0], d[:, 1])
        rel = np.mod(np.arctan2(d[:, 1], d[:, 0]) - self.ta, math.pi)
        inside = (rel <= self.width) & (nd > 0)
        out = []
        for k in range(len(self.m)):
            if va[k] >= threshold:
                out.append((float(self.ta[k]), k, float(va[k]), "end"))
            if vb[k] >= threshold:
                out.append((float(self.tb[k]), k, float(vb[k]), "end"))
            if inside[k] and nd[k] >= threshold:
                out.append((float(self.ta[k] + rel[k]), k, float(nd[k]), "point"))
        return out


def _pieces(E: Electorate) -> _Pieces:
    if E.dim != 2:
        raise UnsupportedDimension(f"the yolk is computed in the plane, got k={E.dim}")
    pc = E._cache.get("pieces")
    if pc is None:
        pc = _Pieces(np.asarray(E.array, dtype=float))
        E._cache["pieces"] = pc
    return pc


def max_median_distance(c, E: Electorate) -> SweepEvaluation:
    """Largest distance from ``c`` to a median line, with a maximising direction."""
    pc = _pieces(E)
    vals, theta = pc.values(c)
    k = int(np.argmax(vals))
    d = Direction.from_angle(float(theta[k]))
    slab = median_slab(d, E)
    x = float(np.dot(d.vector, c))
    value = max(abs(x - slab.b_lo), abs(x - slab.b_hi))
    return SweepEvaluation(value, d, slab)


def _line(theta: float, p) -> Tuple[np.ndarray, float]:
    a = np.array([math.cos(theta), math.sin(theta)])
    return a, float(a @ p)


def _cuts_at(pc: _Pieces, c, threshold: float):
    rows = []
    for theta, k, _, _ in pc.candidates(c, threshold):
        a, b = _line(theta, pc.Pm[k])
        rows.append((a, b))
    return rows


def _initial_cuts(pc: _Pieces):
    a_list, b_list = [], []
    for k in range(len(pc.m)):
        for t in (pc.ta[k], 0.5 * (pc.ta[k] + pc.tb[k])):
            a, b = _line(float(t), pc.Pm[k])
            a_list.append(a)
            b_list.append(b)
    return a_list, b_list


def _near_active(pc: _Pieces, c: np.ndarray, fc: float, delta: float, max_elements: int = 24):
    cands = pc.candidates(c, fc - delta)
    cands.sort(key=lambda t: -t[2])
    lines: List[Tuple[np.ndarray, float]] = []
    points: List[np.ndarray] = []
    for theta, k, _, kind in cands:
        p = pc.Pm[k]
        if kind == "point":
            if not any(np.array_equal(p, q) for q in points):
                points.append(p)
        a, b = _line(theta, p)
        if not any(abs(b - bb) <= 1e-14 and np.allclose(a, aa, atol=1e-14, rtol=0) for aa, bb in lines):
            lines.append((a, b))
        if len(lines) + len(points) >= max_elements:
            break
    return lines, points


def _polish(pc: _Pieces, c: np.ndarray, fc: float, gap: float):
    """Try every basis of at most three near-active lines/points; keep the best centre."""
    delta = 10.0 * math.sqrt(max(gap, 0.0) * pc.scale) + 10.0 * gap + 1e-12 * pc.scale
    lines, points = _near_active(pc, c, fc, delta)
    C = np.array([c] + _basis_candidates(lines, points, c))
    vals = pc.f_many(C)
    j = int(np.argmin(vals))
    return C[j], float(vals[j])


def _tied_bases(pc: _Pieces, c: np.ndarray, fc: float):
    """Exact basis centres whose value ties ``fc`` up to rounding, best first.

    Along a flat valley ``f`` pins the centre only to about sqrt(eps), which
    can tilt a tangency direction past the certificate's slack; a basis
    solution has its tangencies exactly.
    """
    lines, points = _near_active(pc, c, fc, 1e-12 * pc.scale)
    basis = _basis_candidates(lines, points, c)
    if not basis:
        return []
    vals = pc.f_many(np.array(basis))
    order = np.argsort(vals, kind="stable")
    return [(np.asarray(basis[i], dtype=float), float(vals[i])) for i in order
            if vals[i] <= fc + SNAP_TOL * pc.scale]


def _basis_candidates(lines, points, c0) -> List[np.ndarray]:
    out: List[np.ndarray] = []
    A = np.array([a for a, _ in lines]) if lines else np.zeros((0, 2))
    B = np.array([b for _, b in lines]) if lines else np.zeros(0)
    nl = len(lines)
    # three lines, all sign patterns
    if nl >= 3:
        tri = np.array(list(itertools.combinations(range(nl), 3)), dtype=np.intp)
        for signs in itertools.product((1.0, -1.0), repeat=2):
            s = np.array((1.0,) + signs)
            M = np.concatenate([A[tri], -s[None, :, None] * np.ones((len(tri), 3, 1))], axis=2)
            ok = np.abs(np.linalg.det(M)) > 1e-14
            if np.any(ok):
                sol = np.linalg.solve(M[ok], B[tri][ok][..., None])[..., 0]
                out.extend(sol[:, :2])
    # pairs of lines
    for i, j in itertools.combinations(range(nl), 2):
        a1, b1 = lines[i]
        a2, b2 = lines[j]
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if abs(det) > 1e-14:
            out.append(np.linalg.solve(np.array([a1, a2]), np.array([b1, b2])))
        else:
            s = 1.0 if a1 @ a2 > 0 else -1.0
            mid = 0.5 * (b1 + s * b2)
            out.append(c0 - (a1 @ c0 - mid) * a1)
    # families fixed by two signed line equations, closed by one point
    for i, j in itertools.combinations(range(nl), 2):
        for s2 in (1.0, -1.0):
            fam = _line_pair_family(lines[i], lines[j], s2)
            if fam is None:
                continue
            c_0, u, r_0, v = fam
            for p in points:
                out.extend(_circle_hits(c_0, u, r_0, v, p))
    # one line and two points: perpendicular bisector family
    for p, q in itertools.combinations(points, 2):
        w = q - p
        if np.max(np.abs(w)) == 0.0:
            continue
        mid = 0.5 * (p + q)
        u = np.array([-w[1], w[0]]) / np.linalg.norm(w)
        for a, b in lines:
            for s in (1.0, -1.0):
                # r = s (a.c - b) along c = mid + t u
                out.extend(_circle_hits(mid, u, s * (a @ mid - b), s * (a @ u), p))
        out.append(mid)
    # circumcentres
    for p, q, r in itertools.combinations(points, 3):
        cc = _circumcenter(p, q, r)
        if cc is not None:
            out.append(cc)
    # one line and one point: halfway between the point and its foot
    for a, b in lines:
        for p in points:
            out.append(p - 0.5 * (a @ p - b) * a)
    out.extend(points)
    return [x for x in out if np.all(np.isfinite(x))]


def _line_pair_family(l1, l2, s2):
    # a1.c - b1 = r, a2.c - b2 = s2 r  ->  c = c_0 + t u, r = r_0 + t v
    a1, b1 = l1
    a2, b2 = l2
    M = np.array([[a1[0], a1[1], -1.0], [a2[0], a2[1], -s2]])
    u3 = np.cross(M[0], M[1])
    if np.max(np.abs(u3)) <= 1e-14:
        return None
    x0, *_ = np.linalg.lstsq(M, np.array([b1, b2]), rcond=None)
    return x0[:2], u3[:2], x0[2], u3[2]


def _circle_hits(c_0, u, r_0, v, p):
    # |c_0 + t u - p|^2 = (r_0 + t v)^2
    d = c_0 - p
    qa = u @ u - v * v
    qb = 2.0 * (d @ u - r_0 * v)
    qc = d @ d - r_0 * r_0
    ts = []
    if abs(qa) <= 1e-14:
        if abs(qb) > 1e-14:
            ts.append(-qc / qb)
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc >= 0.0:
            sq = math.sqrt(disc)
            ts += [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
    return [c_0 + t * u for t in ts]


def _circumcenter(p, q, r) -> Optional[np.ndarray]:
    ax, ay = p
    bx, by = q
    cx, cy = r
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) <= 1e-14:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    return np.array([(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                     (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d])


def tangent_set(E: Electorate, ball: Ball, tol: float = 1e-6):
    """Directions and median lines at distance within ``tol`` of ``ball.radius``."""
    pc = _pieces(E)
    c = np.asarray(ball.center, dtype=float)
    dirs: List[Direction] = []
    lines: List[Hyperplane] = []
    seen: List[Tuple[float, float]] = []
    on_tol = ON_PLANE_TOL * pc.scale
    for theta, k, _, kind in sorted(pc.candidates(c, ball.radius - tol)):
        t = theta % math.pi
        if t > math.pi - 1e-9:
            t = 0.0
        a, b = _line(t, pc.Pm[k])
        # distance is smooth across an arc end unless the line is limiting there
        # or already perpendicular to c - p_m (it then touches at p_m)
        if kind == "end" and np.sum(np.abs(pc.P @ a - b) <= on_tol) < 2:
            along = abs(a[0] * (c[1] - pc.Pm[k][1]) - a[1] * (c[0] - pc.Pm[k][0]))
            if along > FOOT_TOL * pc.scale:
                continue
        if any(abs(t - s) <= 1e-9 and abs(b - o) <= 1e-9 for s, o in seen):
            continue
        seen.append((t, b))
        H = Hyperplane(tuple(a), b)
        lines.append(H)
        # outward direction: from the centre towards the line
        sgn = 1.0 if b - a @ c >= 0 else -1.0
        dirs.append(Direction(tuple(sgn * a)))
    return dirs, lines


def yolk(E: Electorate, tol: float = 1e-6, max_iter: int = 100000) -> YolkResult:
    """Smallest ball meeting every median line of a planar electorate.

    Raises ``ConvergenceFailure`` (carrying the best ball found) when the
    cutting-plane loop exceeds ``max_iter`` iterations.
    """
    from .certify import hemisphere_cover

    pc = _pieces(E)
    a_list, b_list = _initial_cuts(pc)
    exact = 1e-12 * pc.scale
    best_c = np.asarray(E.array.mean(axis=0), dtype=float)
    best_f = float(pc.f_many(best_c)[0])
    lb = 0.0
    it = 0
    last_polish_gap = math.inf
    while True:
        it += 1
        if it > max_iter:
            raise ConvergenceFailure(f"yolk did not converge in {max_iter} iterations", Ball(tuple(best_c), best_f))
        c_lp, r_lp = _minimax_arrays(np.array(a_list), np.array(b_list))
        lb = max(lb, r_lp)
        fc = float(pc.f_many(c_lp)[0])
        if fc < best_f:
            best_c, best_f = np.asarray(c_lp, dtype=float), fc
        gap = best_f - lb
        if gap <= exact:
            break
        if gap < 0.5 * last_polish_gap or it % 25 == 0:
            last_polish_gap = gap
            pc_c, pc_f = _polish(pc, best_c, best_f, gap)
            if pc_f < best_f:
                best_c, best_f = pc_c, pc_f
            if best_f - lb <= exact:
                break
        new = _cuts_at(pc, c_lp, max(lb, fc - 0.5 * (fc - lb)))
        if not new:
            new = _cuts_at(pc, c_lp, fc)
        for a, b in new:
            a_list.append(a)
            b_list.append(b)
    ball = Ball(tuple(float(x) for x in best_c), best_f)
    dirs, lines = tangent_set(E, ball, tol)
    cert = hemisphere_cover(ball, lines, tangent_tol=tol)
    if not cert.covered:
        for cc, fv in _tied_bases(pc, best_c, best_f):
            alt = Ball(tuple(float(x) for x in cc), fv)
            alt_dirs, alt_lines = tangent_set(E, alt, tol)
            alt_cert = hemisphere_cover(alt, alt_lines, tangent_tol=tol)
            if alt_cert.covered:
                ball, dirs, lines, cert = alt, alt_dirs, alt_lines, alt_cert
                break
    return YolkResult(ball, dirs, it, cert.covered, lines, cert.max_gap)


def _dense_slabs(P: np.ndarray, n_dirs: int):
    """Directions plus slab midpoints and half-widths on an even angular grid."""
    theta = np.arange(n_dirs) * (math.pi / n_dirs)
    A = np.stack([np.cos(theta), np.sin(theta)])
    proj = P @ A
    n = len(P)
    if n % 2:
        k = (n - 1) // 2
        return A, np.partition(proj, k, axis=0)[k], None
    part = np.partition(proj, [n // 2 - 1, n // 2], axis=0)
    lo, hi = part[n // 2 - 1], part[n // 2]
    return A, 0.5 * (lo + hi), 0.5 * (hi - lo)


def _dense_f(C: np.ndarray, A, mid, half, chunk: int = 8) -> np.ndarray:
    # max(x - lo, hi - x) = |x - mid| + half
    out = np.empty(len(C))
    for s in range(0, len(C), chunk):
        X = C[s:s + chunk] @ A
        X -= mid
        np.abs(X, out=X)
        if half is not None:
            X += half
        out[s:s + chunk] = X.max(axis=1)
    return out


def dense_max_median_distance(c, E: Electorate, n_dirs: int = 200000) -> float:
    """``f(c)`` sampled on ``n_dirs`` evenly spaced directions (oracle)."""
    A, mid, half = _dense_slabs(np.asarray(E.array, dtype=float), n_dirs)
    return float(_dense_f(np.atleast_2d(np.asarray(c, dtype=float)), A, mid, half)[0])


def brute_force_yolk(E: Electorate, n_dirs: int = 200000, grid: GridSpec = GridSpec()) -> Ball:
    """Grid search for the yolk using sampled directions (verification oracle).

    Each refinement recentres the grid on the best point so far, spanning
    ``window_cells`` old cells on either side.
    """
    if E.dim != 2:
        raise UnsupportedDimension("brute-force yolk is planar")
    P = np.asarray(E.array, dtype=float)
    A, mid_d, half_d = _dense_slabs(P, n_dirs)
    pmin, pmax = P.min(axis=0), P.max(axis=0)
    ext = max(float(np.max(pmax - pmin)) * (1.0 + 2.0 * grid.expand), 1.0)
    mid = 0.5 * (pmin + pmax)
    box_lo, box_hi = mid - 0.5 * ext, mid + 0.5 * ext
    best_c, best_f = mid, math.inf
    N = grid.points_per_axis
    for _ in range(grid.refinements + 1):
        xs = np.linspace(box_lo[0], box_hi[0], N)
        ys = np.linspace(box_lo[1], box_hi[1], N)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        C = np.stack([X.ravel(), Y.ravel()], axis=1)
        vals = _dense_f(C, A, mid_d, half_d)
        j = int(np.argmin(vals))
        if vals[j] < best_f:
            best_c, best_f = C[j], float(vals[j])
        h = (box_hi - box_lo) / (N - 1)
        box_lo = best_c - grid.window_cells * h
        box_hi = best_c + grid.window_cells * h
    return Ball(tuple(float(x) for x in best_c), best_f)
