"""Riemann-Hilbert objects for orthogonal polynomials on an arc, and the asymptotic formulas built from them."""

from .asymptotics import (
    RHO_MIN,
    AsymptoticPrediction,
    Remainder,
    Thm2Constants,
    asympt_chi,
    asympt_phi_general,
    deift_rhs,
    deriv_asymptotic,
    dyson_log_gap,
    dyson_toeplitz_log_det,
    thm2_chi,
    thm2_constants,
    thm2_derivative,
    thm2_endpoint,
    widom_log_det,
)
from .conformal import (
    ConformalFrame,
    a_quarter_root,
    arc_distance,
    arc_log,
    boundary_values,
    mu,
    omega,
    omega_series,
    on_arc,
    psi,
    w_root,
)
from .constants import ALPHA_0, DYSON_C0, ZETA_PRIME_MINUS_ONE, check_constants, zeta_prime_minus_one_em
from .parametrix import endpoint_radius, first_correction, first_correction_coefficients, outer_parametrix
from .szego import SzegoData, szego_function, szego_infinity

__all__ = [
    "ALPHA_0",
    "DYSON_C0",
    "RHO_MIN",
    "ZETA_PRIME_MINUS_ONE",
    "AsymptoticPrediction",
    "ConformalFrame",
    "Remainder",
    "SzegoData",
    "Thm2Constants",
    "a_quarter_root",
    "arc_distance",
    "arc_log",
    "asympt_chi",
    "asympt_phi_general",
    "boundary_values",
    "check_constants",
    "deift_rhs",
    "deriv_asymptotic",
    "dyson_log_gap",
    "dyson_toeplitz_log_det",
    "endpoint_radius",
    "first_correction",
    "first_correction_coefficients",
    "mu",
    "omega",
    "omega_series",
    "on_arc",
    "outer_parametrix",
    "psi",
    "szego_function",
    "szego_infinity",
    "thm2_chi",
    "thm2_constants",
    "thm2_derivative",
    "thm2_endpoint",
    "w_root",
    "widom_log_det",
    "zeta_prime_minus_one_em",
]
