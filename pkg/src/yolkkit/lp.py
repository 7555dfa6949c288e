"""Smallest ball meeting a finite set of hyperplanes.

``min r  s.t.  -r <= a_i.c - b_i <= r`` has only ``k + 1`` variables, so it is
solved with Seidel's randomized incremental algorithm (fixed internal seed,
no global RNG).  :func:`exhaustive_minimax_lines` enumerates every basis and
serves as an independent check for small inputs.
"""

from __future__ import annotations

import itertools
import math
from typing import List, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyConstraintSet, InfeasibleProgram, UnsupportedDimension
from .geometry import Ball, Hyperplane

LP_SEED = 0x5EED_1D
FEAS_TOL = 1e-12
COEF_TOL = 1e-13
FACE_TOL = 1e-13


def _normalize_rows(A: np.ndarray, b: np.ndarray):
    norms = np.linalg.norm(A, axis=1)
    ok = norms > COEF_TOL
    A = A.copy()
    b = b.copy()
    A[ok] /= norms[ok, None]
    b[ok] /= norms[ok]
    A[~ok] = 0.0
    return A, b


def _solve_1d(a: np.ndarray, b: np.ndarray, obj: float, lo: float, hi: float, tol: float):
    L, U = lo, hi
    pos = a > COEF_TOL
    neg = a < -COEF_TOL
    if np.any(pos):
        U = min(U, float(np.min(b[pos] / a[pos])))
    if np.any(neg):
        L = max(L, float(np.max(b[neg] / a[neg])))
    zero = ~(pos | neg)
    if np.any(b[zero] < -tol):
        return None
    if L > U:
        if L - U > tol:
            return None
        L = U = 0.5 * (L + U)
    if obj > 0:
        return np.array([L])
    if obj < 0:
        return np.array([U])
    return np.array([min(max(0.0, L), U)])


def seidel_lp(A, b, obj, lo, hi, tol: float = FEAS_TOL, rng=None) -> Optional[np.ndarray]:
    """Minimise ``obj.x`` subject to ``A x <= b`` and the box ``lo <= x <= hi``.

    Constraints are processed in a random order drawn from ``rng`` (a
    ``numpy.random.Generator``; a fixed-seed generator is used when omitted).
    Returns ``None`` when infeasible.  The box must be finite.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if rng is None:
        rng = np.random.default_rng(LP_SEED)
    perm = rng.permutation(len(b))
    A, b = _normalize_rows(A[perm], b[perm])
    return _seidel(A, b, np.asarray(obj, dtype=float), np.asarray(lo, dtype=float),
                   np.asarray(hi, dtype=float), tol)


def _seidel(A, b, obj, lo, hi, tol):
    d = A.shape[1]
    if d == 1:
        return _solve_1d(A[:, 0], b, float(obj[0]), float(lo[0]), float(hi[0]), tol)
    x = np.where(obj > 0, lo, np.where(obj < 0, hi, np.clip(0.0, lo, hi)))
    m = len(b)
    i = 0
    while i < m:
        viol = A[i:] @ x - b[i:]
        bad = np.flatnonzero(viol > tol)
        if bad.size == 0:
            break
        i += int(bad[0])
        ai = A[i]
        j = int(np.argmax(np.abs(ai)))
        if abs(ai[j]) <= COEF_TOL:
            return None
        keep = [t for t in range(d) if t != j]
        coef = ai[keep] / ai[j]
        const = b[i] / ai[j]
        prev_A = A[:i]
        sub_A = prev_A[:, keep] - np.outer(prev_A[:, j], coef)
        sub_b = b[:i] - prev_A[:, j] * const
        # the eliminated variable keeps its box as two ordinary constraints
        box_A = np.vstack([-coef, coef])
        box_b = np.array([hi[j] - const, const - lo[j]])
        sub_A, sub_b = _normalize_rows(np.vstack([box_A, sub_A]), np.concatenate([box_b, sub_b]))
        sub_obj = obj[keep] - obj[j] * coef
        y = _seidel(sub_A, sub_b, sub_obj, lo[keep], hi[keep], tol)
        if y is None:
            return None
        x = np.empty(d)
        x[keep] = y
        x[j] = const - coef @ y
        i += 1
    return x


def _line_arrays(lines: Sequence[Hyperplane]):
    if not lines:
        raise EmptyConstraintSet("no hyperplanes to intersect")
    k = lines[0].dim
    if any(H.dim != k for H in lines):
        raise DimensionMismatch("hyperplanes of mixed dimension")
    a = np.array([H.normal for H in lines], dtype=float)
    b = np.array([H.offset for H in lines], dtype=float)
    return a, b


def max_line_distance(center, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a @ np.asarray(center, dtype=float) - b)))


def _center_bound(a: np.ndarray, b: np.ndarray) -> float:
    scale = 1.0 + float(np.max(np.abs(b)))
    if a.shape[1] == 2:
        s = float(np.max(np.abs(a[0, 0] * a[:, 1] - a[0, 1] * a[:, 0])))
    else:
        sv = np.linalg.svd(a, compute_uv=False)
        s = float(sv[-1]) if len(sv) == a.shape[1] else 0.0
    return 8.0 * scale / max(s, 1e-6)


def solve_minimax_lines(lines: Sequence[Hyperplane], k: Optional[int] = None,
                        tie_break: bool = True) -> Ball:
    """Smallest ball meeting every hyperplane in ``lines`` (k = 2 or 3).

    When the optimal centre is not unique the one of least Euclidean norm is
    returned (``tie_break=False`` skips that search).
    """
    a, b = _line_arrays(lines)
    dim = a.shape[1]
    if k is not None and k != dim:
        raise DimensionMismatch(f"expected dimension {k}, hyperplanes have {dim}")
    if dim not in (2, 3):
        raise UnsupportedDimension(f"minimax lines supports k in (2, 3), got {dim}")
    center, r = _minimax_arrays(a, b, tie_break=tie_break)
    return Ball(tuple(center), r)


def _minimax_arrays(a: np.ndarray, b: np.ndarray, tie_break: bool = True, rng=None):
    m, dim = a.shape
    if m == 1:
        return a[0] * b[0], 0.0
    M = _center_bound(a, b)
    rmax = 2.0 * (1.0 + float(np.max(np.abs(b))))
    A = np.vstack([np.hstack([a, -np.ones((m, 1))]), np.hstack([-a, -np.ones((m, 1))])])
    rhs = np.concatenate([b, -b])
    obj = np.zeros(dim + 1)
    obj[-1] = 1.0
    lo = np.concatenate([np.full(dim, -M), [0.0]])
    hi = np.concatenate([np.full(dim, M), [rmax]])
    tol = FEAS_TOL * (1.0 + float(np.max(np.abs(b))))
    x = seidel_lp(A, rhs, obj, lo, hi, tol=tol, rng=rng)
    if x is None:
        raise InfeasibleProgram("minimax program reported infeasible")
    c = x[:dim]
    r_lp = float(x[-1])
    if tie_break:
        c = _least_norm_center(a, b, c, max(r_lp, max_line_distance(c, a, b)), M)
    return c, max_line_distance(c, a, b)


def _least_norm_center(a, b, c, r, M):
    tau = FACE_TOL * (1.0 + r + float(np.max(np.abs(b))))
    if a.shape[1] == 2:
        poly = _face_polygon(a, b, r + tau, M)
        if poly is None or len(poly) == 0:
            return c
        diam = max(float(np.linalg.norm(p - q)) for p in poly for q in poly)
        if diam <= 1e-7 * (1.0 + M / 8.0):
            return c
        return _min_norm_in_polygon(poly)
    return _min_norm_in_polytope(a, b, r + tau, c)


def _clip(poly, n, h):
    # keep {x : n.x <= h}
    out = []
    k = len(poly)
    for idx in range(k):
        p, q = poly[idx], poly[(idx + 1) % k]
        fp, fq = n @ p - h, n @ q - h
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append(p + t * (q - p))
    return out


def _face_polygon(a, b, r, M):
    poly = [np.array(v, dtype=float) for v in ((-M, -M), (M, -M), (M, M), (-M, M))]
    for ai, bi in zip(a, b):
        poly = _clip(poly, ai, bi + r)
        if not poly:
            return None
        poly = _clip(poly, -ai, r - bi)
        if not poly:
            return None
    return poly


def _min_norm_in_polygon(poly):
    pts = np.array(poly)
    n = len(pts)
    if n == 1:
        return pts[0]
    inside = True
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        if (q[0] - p[0]) * (0.0 - p[1]) - (q[1] - p[1]) * (0.0 - p[0]) < 0:
            inside = False
            break
    if inside and n >= 3:
        return np.zeros(2)
    best, best_d = None, math.inf
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        e = q - p
        ee = float(e @ e)
        t = 0.0 if ee == 0.0 else min(1.0, max(0.0, float(-p @ e) / ee))
        x = p + t * e
        dx = float(x @ x)
        if dx < best_d:
            best, best_d = x, dx
    return best


def _min_norm_in_polytope(a, b, r, fallback, max_constraints: int = 60):
    G = np.vstack([a, -a])
    h = np.concatenate([b + r, r - b])
    if len(h) > max_constraints:
        return fallback
    dim = a.shape[1]
    tol = 1e-9 * (1.0 + float(np.max(np.abs(h))))
    best, best_n = np.asarray(fallback, dtype=float), float(np.dot(fallback, fallback))
    if np.all(G @ np.zeros(dim) <= h + tol):
        return np.zeros(dim)
    for size in range(1, dim + 1):
        for S in itertools.combinations(range(len(h)), size):
            GS = G[list(S)]
            gram = GS @ GS.T
            if abs(np.linalg.det(gram)) <= 1e-12:
                continue
            x = GS.T @ np.linalg.solve(gram, h[list(S)])
            if np.all(G @ x <= h + tol):
                nx = float(x @ x)
                if nx < best_n - 1e-15:
                    best, best_n = x, nx
    return best


def exhaustive_minimax_lines(lines: Sequence[Hyperplane]) -> Ball:
    """Reference optimum by enumerating every basis of ``k + 1`` signed constraints.

    Cost grows as ``C(2m, k + 1)``; meant for checking small instances.
    """
    a, b = _line_arrays(lines)
    m, dim = a.shape
    if m == 1:
        return Ball(tuple(a[0] * b[0]), 0.0)
    if np.linalg.matrix_rank(a, tol=1e-10) < dim:
        if dim != 2:
            raise UnsupportedDimension("rank-deficient check implemented for k = 2 only")
        # all lines parallel: orient along the first normal
        s = np.sign(a @ a[0])
        s[s == 0] = 1.0
        bb = b * s
        lo, hi = float(np.min(bb)), float(np.max(bb))
        return Ball(tuple(a[0] * 0.5 * (lo + hi)), 0.5 * (hi - lo))
    G = np.vstack([np.hstack([a, -np.ones((m, 1))]), np.hstack([-a, -np.ones((m, 1))])])
    h = np.concatenate([b, -b])
    combos = np.array(list(itertools.combinations(range(2 * m), dim + 1)), dtype=np.intp)
    best_c, best_r = None, math.inf
    for chunk in np.array_split(combos, max(1, len(combos) // 20000)):
        M = G[chunk]
        rhs = h[chunk]
        det = np.linalg.det(M)
        ok = np.abs(det) > 1e-12
        if not np.any(ok):
            continue
        sol = np.linalg.solve(M[ok], rhs[ok][..., None])[..., 0]
        centers = sol[:, :dim]
        vals = np.max(np.abs(centers @ a.T - b), axis=1)
        j = int(np.argmin(vals))
        if vals[j] < best_r:
            best_r, best_c = float(vals[j]), centers[j]
    return Ball(tuple(best_c), best_r)


def active_lines(center, radius: float, lines: Sequence[Hyperplane], tol: float = 1e-7) -> List[Hyperplane]:
    return [H for H in lines if abs(H.distance(center) - radius) <= tol]
