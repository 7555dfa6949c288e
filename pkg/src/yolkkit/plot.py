"""Standalone SVG rendering of an electorate, its limiting lines and both yolks."""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .geometry import Ball, Direction, Hyperplane
from .lpyolk import lp_yolk
from .median import Electorate
from .yolk import yolk

SIZE = 600
MARGIN = 30


def _clip_line(H: Hyperplane, lo: np.ndarray, hi: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    a = np.asarray(H.normal)
    p0 = a * H.offset
    d = np.array([-a[1], a[0]])
    t_lo, t_hi = -math.inf, math.inf
    for k in range(2):
        if abs(d[k]) < 1e-15:
            if not (lo[k] <= p0[k] <= hi[k]):
                return None
            continue
        t1, t2 = (lo[k] - p0[k]) / d[k], (hi[k] - p0[k]) / d[k]
        t_lo, t_hi = max(t_lo, min(t1, t2)), min(t_hi, max(t1, t2))
    if t_lo > t_hi:
        return None
    return p0 + t_lo * d, p0 + t_hi * d


def render_svg(points: Sequence[Sequence[float]], lines: Sequence[Hyperplane] = (),
               yolk_ball: Optional[Ball] = None, lp_ball: Optional[Ball] = None,
               tangents: Sequence[Direction] = (), title: str = "") -> str:
    """Deterministic SVG 1.1 document; world y points up."""
    P = np.asarray(points, dtype=float)
    boxes = [P.min(axis=0), P.max(axis=0)]
    for B in (yolk_ball, lp_ball):
        if B is not None:
            c = np.asarray(B.center)
            boxes += [c - B.radius, c + B.radius]
    lo = np.min(boxes, axis=0)
    hi = np.max(boxes, axis=0)
    span = max(float(np.max(hi - lo)), 1e-9)
    mid = 0.5 * (lo + hi)
    lo, hi = mid - 0.55 * span, mid + 0.55 * span
    s = (SIZE - 2 * MARGIN) / (hi[0] - lo[0])

    def X(p) -> Tuple[float, float]:
        return MARGIN + (p[0] - lo[0]) * s, SIZE - MARGIN - (p[1] - lo[1]) * s

    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<title>{title}</title>')
    out.append('<g id="limiting-lines" stroke="#888888" stroke-width="1" stroke-dasharray="4,3">')
    for H in lines:
        seg = _clip_line(H, lo, hi)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = X(seg[0]), X(seg[1])
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}"/>')
    out.append("</g>")
    for name, B, colour in (("yolk", yolk_ball, "#1f5fbf"), ("lp-yolk", lp_ball, "#c0392b")):
        if B is None:
            continue
        cx, cy = X(B.center)
        if B.radius * s < 0.5:
            # zero-radius marker
            out.append(f'<g id="{name}" stroke="{colour}" stroke-width="1.5">'
                       f'<line x1="{cx - 5:.3f}" y1="{cy - 5:.3f}" x2="{cx + 5:.3f}" y2="{cy + 5:.3f}"/>'
                       f'<line x1="{cx - 5:.3f}" y1="{cy + 5:.3f}" x2="{cx + 5:.3f}" y2="{cy - 5:.3f}"/></g>')
        else:
            out.append(f'<circle id="{name}" cx="{cx:.3f}" cy="{cy:.3f}" r="{B.radius * s:.3f}" '
                       f'fill="none" stroke="{colour}" stroke-width="1.5"/>')
    if yolk_ball is not None and tangents:
        out.append('<g id="tangent-points" fill="#1f5fbf">')
        c = np.asarray(yolk_ball.center)
        for d in tangents:
            tx, ty = X(c + yolk_ball.radius * np.asarray(d.vector))
            out.append(f'<rect x="{tx - 3:.3f}" y="{ty - 3:.3f}" width="6" height="6"/>')
        out.append("</g>")
    out.append('<g id="ideal-points" fill="black">')
    for p in P:
        px, py = X(p)
        out.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="4"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_electorate(E: Electorate, tol: float = 1e-6, max_iter: int = 100000, title: str = "") -> str:
    """Compute both yolks for a planar electorate and render them."""
    L = lp_yolk(E)
    Y = yolk(E, tol=tol, max_iter=max_iter)
    return render_svg(E.array, L.lines, Y.ball, L.ball, Y.tangent_directions, title)
