"""Yolks and LP yolks of finite electorates."""

__version__ = "0.1.0"

from .certify import (
    CoverCertificate,
    MainHalfParams,
    SupportSet,
    angle_bisector,
    canonicalize,
    hemisphere_cover,
    inscribed_ball_three_lines,
    mainhalf_lines,
    mainhalf_lower_bound,
    mainhalf_radius,
    minimal_support,
)
from .constructions import (
    FamilySpec,
    family_lift,
    family_nondegen,
    family_oddr2far_metrics,
    family_oddr2ok,
    lp_yolk_3d,
)
from .geometry import (
    Ball,
    Direction,
    Hyperplane,
    line_through_points,
    normalize_hyperplane,
    point_hyperplane_distance,
    rotate_line_about_point,
    tangent_hyperplane,
)
from .lp import exhaustive_minimax_lines, solve_minimax_lines
from .lpyolk import LpYolkResult, lp_yolk
from .median import (
    Electorate,
    MedianSlab,
    RotationResult,
    enumerate_limiting_median_lines,
    is_median,
    median_slab,
    rotate_to_limiting,
    side_counts,
)
from .yolk import GridSpec, SweepEvaluation, YolkResult, brute_force_yolk, max_median_distance, yolk
