"""Point-set families with known yolk / LP yolk values."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import InvalidParameter
from .geometry import ON_PLANE_TOL, Ball, Hyperplane, normalize_hyperplane
from .lp import active_lines, solve_minimax_lines
from .lpyolk import LpYolkResult
from .median import Electorate, is_median

FAMILIES = ("nondegen", "oddr2ok", "lift", "oddr2far")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    parameters: Dict[str, float] = field(default_factory=dict)
    expected: Dict[str, float] = field(default_factory=dict)


def family_nondegen(eps: float) -> Tuple[Electorate, FamilySpec]:
    """Six points ``(+-2, +-eps), (+-1, 0)``: yolk radius 1, LP yolk radius eps/sqrt(1+eps^2)."""
    if not (eps > 0 and math.isfinite(eps)):
        raise InvalidParameter(f"eps must be positive, got {eps!r}")
    pts = [(2.0, eps), (2.0, -eps), (-2.0, eps), (-2.0, -eps), (1.0, 0.0), (-1.0, 0.0)]
    expected = {
        "lp_yolk_radius": eps / math.sqrt(1.0 + eps * eps),
        "yolk_radius": 1.0,
        "lp_center_x": 0.0,
        "lp_center_y": 0.0,
        "limiting_lines": 11.0,
    }
    return Electorate(pts), FamilySpec("nondegen", {"eps": eps}, expected)


def oddr2ok_eps_limit(alpha: float) -> float:
    """Largest coordinate perturbation accepted for the five-point family."""
    return 1e-3 * (1.0 / abs(math.cos(alpha)) - 1.0)


def oddr2ok_ratio(alpha: float, w: float) -> float:
    """Radius of the explicit ball meeting all six limiting lines (yolk radius is 1)."""
    ca = math.cos(alpha)
    return math.tan(0.5 * alpha) * (w * ca - 1.0) / ((2.0 * w - 1.0) * ca - 1.0)


def oddr2ok_ratio_kappa(alpha: float, kappa: float) -> float:
    return (kappa + 1.0) * math.tan(0.5 * alpha) / (2.0 * kappa + 1.0 + math.cos(alpha))


def oddr2ok_center(alpha: float, w: float) -> float:
    """x-coordinate of that ball's centre (it sits on the x-axis)."""
    ca = math.cos(alpha)
    return (2.0 - w * (1.0 + ca)) / (1.0 - (2.0 * w - 1.0) * ca)


def _check_oddr2ok(alpha: float, w: float, eps: float):
    if not (0.5 * math.pi < alpha < math.pi):
        raise InvalidParameter(f"alpha must lie in (pi/2, pi), got {alpha!r}")
    if not (w > 1 and math.isfinite(w)):
        raise InvalidParameter(f"w must exceed 1, got {w!r}")
    limit = oddr2ok_eps_limit(alpha)
    if not (0 < eps <= limit):
        raise InvalidParameter(f"eps must lie in (0, {limit:.6g}] for alpha={alpha!r}, got {eps!r}")


def family_oddr2ok(alpha: float, w: float, eps: Optional[float] = None) -> Tuple[Electorate, FamilySpec]:
    """Five points whose yolk is the unit circle while the LP yolk radius tends to (k+1)/(2k+1).

    ``eps`` shifts the outer pair along the tangent lines; it defaults to a
    tenth of the accepted maximum.
    """
    if eps is None:
        eps = 0.1 * oddr2ok_eps_limit(alpha) if 0.5 * math.pi < alpha < math.pi else float("nan")
    _check_oddr2ok(alpha, w, eps)
    ca, sa = math.cos(alpha), math.sin(alpha)
    y1 = (1.0 - ca * w) / sa
    x2, y2 = 1.0 / ca - eps, eps * ca / sa
    pts = [(1.0, 0.0), (w, y1), (w, -y1), (x2, y2), (x2, -y2)]
    expected = {
        "yolk_radius": 1.0,
        "yolk_center_x": 0.0,
        "yolk_center_y": 0.0,
        "lp_yolk_radius_bound": oddr2ok_ratio(alpha, w),
        "lp_center_x_bound_ball": oddr2ok_center(alpha, w),
        "limiting_lines": 6.0,
    }
    return Electorate(pts), FamilySpec("oddr2ok", {"alpha": alpha, "w": w, "eps": eps}, expected)


def family_oddr2far_metrics(alpha: float, kappa: float, eps: Optional[float] = None) -> Tuple[Electorate, FamilySpec]:
    """Same five points with ``w = -kappa / cos(alpha)`` plus the centre-separation prediction.

    The apex of the cone spanned by the two tangent lines is at distance
    ``d' = 1/|cos(alpha)|`` from the yolk centre.  A ball of radius ``r``
    inscribed in the cone sits at ``r d'`` from the apex, hence
    ``d' - r d'`` from the yolk centre.
    """
    if not (kappa > 0 and math.isfinite(kappa)):
        raise InvalidParameter(f"kappa must be positive, got {kappa!r}")
    if not (0.5 * math.pi < alpha < math.pi):
        raise InvalidParameter(f"alpha must lie in (pi/2, pi), got {alpha!r}")
    w = -kappa / math.cos(alpha)
    E, spec = family_oddr2ok(alpha, w, eps)
    d_prime = 1.0 / abs(math.cos(alpha))
    r = oddr2ok_ratio_kappa(alpha, kappa)
    expected = dict(spec.expected)
    expected.update({
        "d_prime": d_prime,
        "lp_yolk_radius_bound": r,
        "separation_prediction": (1.0 - r) * d_prime,
    })
    params = dict(spec.parameters)
    params["kappa"] = kappa
    return E, FamilySpec("oddr2far", params, expected)


def family_lift(base: Electorate, noise: float = 0.0, seed: int = 0) -> Electorate:
    """Append a third coordinate: 0, or uniform on [-noise, noise] from a seeded generator."""
    if not (noise >= 0 and math.isfinite(noise)):
        raise InvalidParameter(f"noise must be nonnegative, got {noise!r}")
    P = np.asarray(base.array, dtype=float)
    if noise == 0:
        z = np.zeros(len(P))
    else:
        z = np.random.default_rng(seed).uniform(-noise, noise, size=len(P))
    return Electorate(np.column_stack([P, z]))


def enumerate_limiting_median_planes(E: Electorate, tol: float = ON_PLANE_TOL) -> List[Hyperplane]:
    """Median planes in R^3 through three non-collinear ideal points, deduplicated."""
    if E.dim != 3:
        raise InvalidParameter("median planes are enumerated for 3-dimensional electorates")
    arr = np.asarray(E.array, dtype=float)
    planes: List[Hyperplane] = []
    for i, j, k in itertools.combinations(range(len(arr)), 3):
        n = np.cross(arr[j] - arr[i], arr[k] - arr[i])
        if np.linalg.norm(n) <= 1e-12:
            continue
        H = normalize_hyperplane(n, float(n @ arr[i]))
        if any(H.isclose(G, tol) for G in planes):
            continue
        if is_median(H, E, tol):
            planes.append(H)
    return planes


def lp_yolk_3d(E: Electorate) -> LpYolkResult:
    """LP yolk of a 3-dimensional electorate by brute-force plane enumeration."""
    planes = enumerate_limiting_median_planes(E)
    if not planes:
        return LpYolkResult(Ball(tuple(np.mean(E.array, axis=0)), 0.0), [], True, [])
    ball = solve_minimax_lines(planes, 3)
    return LpYolkResult(ball, active_lines(ball.center, ball.radius, planes), False, planes)
