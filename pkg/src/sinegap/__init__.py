"""Sine-kernel gap determinants, orthogonal polynomials on an arc of the unit
circle, and the asymptotic formulas connecting them."""

from .errors import (
    AccuracyWarning,
    BoundaryError,
    ConditioningError,
    DomainError,
    InvalidArgumentError,
    OutOfRegimeError,
)
from .fredholm import NystromGrid, build_grid, evaluate_gap, gap_determinant, log_gap_determinant
from .gue import GapEstimate, TridiagonalSample, gap_probabilities, gap_probability, sample_tridiagonal
from .opuc import (
    ArcWeight,
    OpucLadder,
    arc_moment,
    build_ladder,
    cd_sum,
    eval_poly,
    toeplitz_log_det,
    weight_moment,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning",
    "ArcWeight",
    "BoundaryError",
    "ConditioningError",
    "DomainError",
    "GapEstimate",
    "InvalidArgumentError",
    "NystromGrid",
    "OpucLadder",
    "OutOfRegimeError",
    "TridiagonalSample",
    "arc_moment",
    "build_grid",
    "build_ladder",
    "cd_sum",
    "eval_poly",
    "evaluate_gap",
    "gap_determinant",
    "gap_probabilities",
    "gap_probability",
    "log_gap_determinant",
    "sample_tridiagonal",
    "toeplitz_log_det",
    "weight_moment",
]
