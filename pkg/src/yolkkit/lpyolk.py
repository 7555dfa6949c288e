"""LP yolk: smallest ball meeting every limiting median line."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import UnsupportedDimension
from .geometry import Ball, Hyperplane
from .lp import active_lines, solve_minimax_lines
from .median import Electorate, enumerate_limiting_median_lines

ACTIVE_TOL = 1e-7


@dataclass(frozen=True)
class LpYolkResult:
    ball: Ball
    active: List[Hyperplane] = field(default_factory=list)
    degenerate: bool = False
    lines: List[Hyperplane] = field(default_factory=list)


def lp_yolk(E: Electorate) -> LpYolkResult:
    """Smallest ball meeting all limiting median lines of a planar electorate.

    With fewer than two distinct points there are no such lines; the result
    is then a zero ball at the centroid flagged ``degenerate``.
    """
    if E.dim != 2:
        raise UnsupportedDimension(f"LP yolk is computed in the plane, got k={E.dim}")
    lines = enumerate_limiting_median_lines(E)
    if not lines:
        centroid = tuple(np.mean(E.array, axis=0))
        return LpYolkResult(Ball(centroid, 0.0), [], True, [])
    ball = solve_minimax_lines(lines, 2)
    return LpYolkResult(ball, active_lines(ball.center, ball.radius, lines, ACTIVE_TOL), False, lines)
