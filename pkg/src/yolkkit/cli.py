"""Command line entry point.

Exit codes: 0 success, 1 Monte Carlo bound violated, 2 unreadable or
malformed input, 3 yolk solver did not converge, 4 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import itertools
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .certify import hemisphere_cover, minimal_support
from .constructions import family_lift, family_nondegen, family_oddr2far_metrics, family_oddr2ok
from .errors import ConvergenceFailure, NoCover, ParseError, YolkError
from .experiments import MC_COLUMNS, SWEEP_COLUMNS, montecarlo, run_instance, sweep_rows
from .io import dumps, format_points, load_points, round_sig
from .lpyolk import lp_yolk
from .plot import plot_electorate
from .yolk import yolk

EXIT_OK, EXIT_BOUND, EXIT_PARSE, EXIT_CONVERGENCE, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text: str) -> float:
    """A float, optionally suffixed by ``pi`` (``0.55pi``)."""
    t = text.strip().lower()
    try:
        if t.endswith("pi"):
            head = t[:-2].rstrip("*")
            return (float(head) if head else 1.0) * math.pi
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_list(conv):
    def inner(text: str) -> List[float]:
        items = [s for s in text.split(",") if s.strip()]
        return [conv(s) for s in items]
    return inner


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=d(None), help="write output here instead of stdout")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--tol", type=float, default=d(1e-6), help="tangency tolerance for the yolk")
    parser.add_argument("--max-iter", type=int, default=d(100000))
    parser.add_argument("--format", choices=("json", "csv"), default=d("json"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="yolkkit", description="Yolks and LP yolks of planar electorates.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("compute", help="LP yolk, yolk and certificate for a points file")
    c.add_argument("input")
    c.add_argument("--timings", action="store_true", help="include per-stage wall times")

    g = sub.add_parser("generate", help="write a family instance")
    g.add_argument("family", choices=("nondegen", "oddr2ok", "lift", "oddr2far"))
    g.add_argument("--eps", type=float)
    g.add_argument("--alpha", type=parse_angle)
    g.add_argument("--w", type=float)
    g.add_argument("--kappa", type=float)
    g.add_argument("--noise", type=float, default=0.0)
    g.add_argument("--base", help="2-D points file to lift")

    s = sub.add_parser("sweep", help="CSV of computed vs expected ratios over a parameter grid")
    s.add_argument("family", choices=("nondegen", "oddr2ok", "oddr2far"))
    s.add_argument("--alpha", type=parse_list(parse_angle), default=[])
    s.add_argument("--kappa", type=parse_list(float), default=[])
    s.add_argument("--eps", type=parse_list(float), default=[])

    m = sub.add_parser("montecarlo", help="ratio statistics over random electorates")
    m.add_argument("--n-voters", type=int, required=True)
    m.add_argument("--trials", type=int, required=True)
    m.add_argument("--distribution", choices=("uniform", "normal"), default="uniform")
    m.add_argument("--csv", help="also write per-trial rows here")

    pl = sub.add_parser("plot", help="SVG of points, limiting lines and both yolks")
    pl.add_argument("input")

    ce = sub.add_parser("certify", help="hemisphere-cover certificates for the yolk and LP yolk")
    ce.add_argument("input")

    for sp in (c, g, s, m, pl, ce):
        _common(sp, suppress=True)
    return p


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if r.get(k) is None else _cell(r.get(k)) for k in columns])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        x = round_sig(v)
        return "" if x is None else repr(x)
    return v


def _flatten(doc: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in doc.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            for i, x in enumerate(v):
                out[f"{key}.{i}"] = x
        else:
            out[key] = v
    return out


def cmd_compute(args) -> int:
    E = load_points(args.input)
    res = run_instance(E, args.tol, args.max_iter)
    doc = res.as_dict(with_timings=args.timings)
    if args.format == "csv":
        flat = _flatten(doc)
        _emit(_csv([flat], list(flat)), args.out)
    else:
        _emit(dumps(doc), args.out)
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family} needs " + ", ".join("--" + n for n in missing))


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "nondegen":
        _need(args, "eps")
        E, spec = family_nondegen(args.eps)
        params, expected = spec.parameters, spec.expected
    elif fam == "oddr2ok":
        _need(args, "alpha", "w")
        E, spec = family_oddr2ok(args.alpha, args.w, args.eps)
        params, expected = spec.parameters, spec.expected
    elif fam == "oddr2far":
        _need(args, "alpha", "kappa")
        E, spec = family_oddr2far_metrics(args.alpha, args.kappa, args.eps)
        params, expected = spec.parameters, spec.expected
    else:
        _need(args, "base")
        base = load_points(args.base)
        E = family_lift(base, args.noise, args.seed)
        params = {"noise": args.noise, "seed": args.seed}
        expected = {"lp_yolk_radius_zero_noise": 0.0}
        if base.dim == 2 and len(base) > 0:
            expected["yolk_radius_lower_bound"] = yolk(base, args.tol, args.max_iter).ball.radius
    header = [f"family: {fam}"] + [f"{k} = {_cell(v)}" for k, v in params.items()]
    header += [f"expected {k} = {_cell(v)}" for k, v in expected.items()]
    _emit(format_points(E, header), args.out)
    if args.out:
        side = {"family": fam, "parameters": params, "expected": expected}
        Path(args.out + ".expected.json").write_text(dumps(side), encoding="utf-8")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.family == "nondegen":
        grid = [{"eps": e} for e in args.eps]
    else:
        eps = args.eps or [None]
        grid = [{"alpha": a, "kappa": k, "eps": e} for a, k, e in itertools.product(args.alpha, args.kappa, eps)]
    if not grid:
        raise UsageError("empty parameter grid")
    rows = sweep_rows(args.family, grid, args.tol, args.max_iter)
    if args.format == "json":
        _emit(dumps({"rows": rows}), args.out)
    else:
        _emit(_csv(rows, SWEEP_COLUMNS), args.out)
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    if args.n_voters < 3 or args.trials < 1:
        raise UsageError("need --n-voters >= 3 and --trials >= 1")
    summary, rows = montecarlo(args.n_voters, args.trials, args.distribution, args.seed, args.tol, args.max_iter)
    if args.csv:
        Path(args.csv).write_text(_csv(rows, MC_COLUMNS), encoding="utf-8")
    if args.format == "csv":
        _emit(_csv(rows, MC_COLUMNS), args.out)
    else:
        _emit(dumps(summary.as_dict()), args.out)
    if summary.bound_checked and summary.bound_holds is False:
        print(f"yolkkit: min ratio {summary.min_ratio!r} below the odd-electorate bound", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


def cmd_plot(args) -> int:
    E = load_points(args.input)
    _emit(plot_electorate(E, args.tol, args.max_iter, title=Path(args.input).name), args.out)
    return EXIT_OK


def _lines_doc(lines):
    return [{"normal": list(H.normal), "offset": H.offset} for H in lines]


def cmd_certify(args) -> int:
    E = load_points(args.input)
    Y = yolk(E, args.tol, args.max_iter)
    try:
        support = _lines_doc(minimal_support(Y.ball, Y.tangent_lines, args.tol).hyperplanes)
    except NoCover:
        support = None
    L = lp_yolk(E)
    lp_cert = hemisphere_cover(L.ball, L.active, 1e-7) if L.active else None
    doc = {
        "yolk": {
            "center": list(Y.ball.center),
            "radius": Y.ball.radius,
            "covered": Y.certified,
            "max_gap": Y.max_gap,
            "tangent_lines": _lines_doc(Y.tangent_lines),
            "support": support,
        },
        "lp_yolk": {
            "center": list(L.ball.center),
            "radius": L.ball.radius,
            "degenerate": L.degenerate,
            "covered": None if lp_cert is None else lp_cert.covered,
            "max_gap": None if lp_cert is None else lp_cert.max_gap,
            "active_lines": _lines_doc(L.active),
        },
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "generate": cmd_generate,
    "sweep": cmd_sweep,
    "montecarlo": cmd_montecarlo,
    "plot": cmd_plot,
    "certify": cmd_certify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"yolkkit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"yolkkit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConvergenceFailure as exc:
        best = exc.best
        extra = f" (best radius {best.radius!r})" if best is not None else ""
        print(f"yolkkit: {exc}{extra}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (UsageError, YolkError, ValueError) as exc:
        print(f"yolkkit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
