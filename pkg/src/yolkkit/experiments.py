"""Single runs, parameter sweeps and seeded Monte Carlo over random electorates."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .certify import hemisphere_cover, minimal_support
from .constructions import family_nondegen, family_oddr2far_metrics
from .errors import ConvergenceFailure, NoCover, YolkError
from .geometry import Ball
from .io import instance_digest
from .lpyolk import lp_yolk
from .median import Electorate
from .yolk import yolk

RATIO_EPS = 1e-12
MIN_RATIO_ODD = 0.5 - 1e-5


@dataclass
class RunResult:
    instance_digest: str
    yolk: Ball
    lp_yolk: Ball
    ratio: Optional[float]
    center_distance: float
    certificate: Dict[str, object]
    support_size: Optional[int]
    lp_degenerate: bool = False
    iterations: int = 0
    timings: Dict[str, float] = field(default_factory=dict)

    def as_dict(self, with_timings: bool = False) -> dict:
        doc = {
            "instance_digest": self.instance_digest,
            "yolk": {"center": list(self.yolk.center), "radius": self.yolk.radius},
            "lp_yolk": {"center": list(self.lp_yolk.center), "radius": self.lp_yolk.radius,
                        "degenerate": self.lp_degenerate},
            "ratio": self.ratio,
            "center_distance": self.center_distance,
            "certificate": self.certificate,
            "support_size": self.support_size,
            "iterations": self.iterations,
        }
        if with_timings:
            doc["timings_ms"] = self.timings
        return doc


def run_instance(E: Electorate, tol: float = 1e-6, max_iter: int = 100000) -> RunResult:
    """LP yolk, yolk and certificate for one planar electorate."""
    timings = {}
    t0 = time.perf_counter()
    L = lp_yolk(E)
    t1 = time.perf_counter()
    Y = yolk(E, tol=tol, max_iter=max_iter)
    t2 = time.perf_counter()
    cert = hemisphere_cover(Y.ball, Y.tangent_lines, tangent_tol=tol)
    try:
        support = len(minimal_support(Y.ball, Y.tangent_lines, tangent_tol=tol))
    except NoCover:
        support = None
    t3 = time.perf_counter()
    timings = {"lp_yolk": 1e3 * (t1 - t0), "yolk": 1e3 * (t2 - t1), "certify": 1e3 * (t3 - t2)}
    r = Y.ball.radius
    ratio = L.ball.radius / r if r >= RATIO_EPS else None
    return RunResult(
        instance_digest=instance_digest(E),
        yolk=Y.ball,
        lp_yolk=L.ball,
        ratio=ratio,
        center_distance=math.dist(Y.ball.center, L.ball.center),
        certificate={"covered": cert.covered, "max_gap": cert.max_gap,
                     "tangents": len(Y.tangent_lines)},
        support_size=support,
        lp_degenerate=L.degenerate,
        iterations=Y.iterations,
        timings=timings,
    )


def worker_count(n_jobs: int) -> int:
    """Executor size from ``YOLKKIT_THREADS`` (0 or unset = one per CPU)."""
    raw = os.environ.get("YOLKKIT_THREADS", "0").strip() or "0"
    try:
        k = int(raw)
    except ValueError:
        k = 0
    if k <= 0:
        k = os.cpu_count() or 1
    return max(1, min(k, n_jobs))


def _map(fn: Callable, items: Sequence, threads: Optional[int] = None) -> List:
    k = worker_count(len(items)) if threads is None else max(1, threads)
    if k == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


SWEEP_COLUMNS = ("family", "alpha", "kappa", "eps", "lp_radius", "yolk_radius", "ratio",
                 "expected_ratio", "abs_error", "error")


def sweep_rows(family: str, grid: Sequence[Dict[str, float]], tol: float = 1e-6,
               max_iter: int = 100000, threads: Optional[int] = None) -> List[dict]:
    """One row per grid point; failures land in the ``error`` column."""

    def one(params):
        row = {c: None for c in SWEEP_COLUMNS}
        row["family"] = family
        row.update({k: params.get(k) for k in ("alpha", "kappa", "eps")})
        try:
            if family == "nondegen":
                E, spec = family_nondegen(params["eps"])
                expected = spec.expected["lp_yolk_radius"] / spec.expected["yolk_radius"]
            elif family in ("oddr2ok", "oddr2far"):
                E, spec = family_oddr2far_metrics(params["alpha"], params["kappa"], params.get("eps"))
                expected = spec.expected["lp_yolk_radius_bound"]
                row["eps"] = spec.parameters["eps"]
            else:
                raise ValueError(f"family {family!r} cannot be swept")
            res = run_instance(E, tol, max_iter)
            row.update(lp_radius=res.lp_yolk.radius, yolk_radius=res.yolk.radius, ratio=res.ratio,
                       expected_ratio=expected)
            if res.ratio is not None:
                row["abs_error"] = abs(res.ratio - expected)
        except (YolkError, ValueError, KeyError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        return row

    return _map(one, list(grid), threads)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based stream keyed by ``(seed, trial)``; order independent."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def sample_electorate(rng: np.random.Generator, n: int, distribution: str = "uniform") -> Electorate:
    if distribution == "uniform":
        return Electorate(rng.uniform(0.0, 1.0, size=(n, 2)))
    if distribution == "normal":
        return Electorate(rng.standard_normal(size=(n, 2)))
    raise ValueError(f"unknown distribution {distribution!r}")


MC_COLUMNS = ("trial", "n_voters", "lp_radius", "yolk_radius", "ratio", "center_distance",
              "covered", "support_size", "status")


@dataclass
class MonteCarloSummary:
    n_voters: int
    n_trials: int
    distribution: str
    seed: int
    completed: int
    convergence_failures: int
    certificate_failures: int
    min_ratio: Optional[float]
    mean_ratio: Optional[float]
    max_ratio: Optional[float]
    bound_checked: bool
    bound_holds: Optional[bool]

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def montecarlo(n_voters: int, n_trials: int, distribution: str = "uniform", seed: int = 0,
               tol: float = 1e-6, max_iter: int = 100000, threads: Optional[int] = None):
    """Random electorates with per-trial seeded streams; returns ``(summary, rows)``."""
    if n_voters < 3:
        raise ValueError("n_voters must be at least 3")
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")

    def one(trial):
        E = sample_electorate(trial_rng(seed, trial), n_voters, distribution)
        row = {c: None for c in MC_COLUMNS}
        row.update(trial=trial, n_voters=n_voters)
        try:
            res = run_instance(E, tol, max_iter)
        except ConvergenceFailure:
            row["status"] = "convergence_failure"
            return row
        row.update(lp_radius=res.lp_yolk.radius, yolk_radius=res.yolk.radius, ratio=res.ratio,
                   center_distance=res.center_distance, covered=bool(res.certificate["covered"]),
                   support_size=res.support_size, status="ok")
        return row

    rows = sorted(_map(one, list(range(n_trials)), threads), key=lambda r: r["trial"])
    done = [r for r in rows if r["status"] == "ok"]
    ratios = [r["ratio"] for r in done if r["ratio"] is not None]
    odd = n_voters % 2 == 1
    summary = MonteCarloSummary(
        n_voters=n_voters,
        n_trials=n_trials,
        distribution=distribution,
        seed=seed,
        completed=len(done),
        convergence_failures=len(rows) - len(done),
        certificate_failures=sum(1 for r in done if not r["covered"]),
        min_ratio=min(ratios) if ratios else None,
        mean_ratio=float(np.mean(ratios)) if ratios else None,
        max_ratio=max(ratios) if ratios else None,
        bound_checked=odd,
        bound_holds=(min(ratios) >= MIN_RATIO_ODD) if (odd and ratios) else None,
    )
    return summary, rows
