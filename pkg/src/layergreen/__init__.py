"""Numerical toolbox for the two-layer Helmholtz Green function in 2D.

Evaluates G(x, y) and its source gradient for a plane interface between two
homogeneous half-planes, by adaptive spectral quadrature at moderate range and
by steepest-descent contour integration at large range; provides closed-form
far-field patterns, radial decay-rate measurement utilities, and boundary
representation / far-field identity checks on manufactured scattering data.
"""

from ._errors import (AccuracyError, BranchCutError, CoincidentPointsError,
                      ConvergenceError, DomainError, HypothesisError,
                      InterfacePlacementError, LateralDirectionError,
                      PoleError, StripViolationError)
from .asymptotics_lab import (Method, RateFit, SweepPlan, envelope_check,
                              fit_rate, h_residual, near_critical_width,
                              residual, sharpness_probe, sweep_rows)
from .branch_algebra import BranchSide, s1, s2, s_cut, s_limit, s_tilde
from .farfield import (FarDirection, IncidentSpec, critical_angle, g_farfield,
                       h_farfield, refl_coeff, refl_tilde, reference_field,
                       trans_coeff, trans_tilde)
from .scattering_verify import (CircleTrace, farfield_from_boundary,
                                manufacture_trace, pattern_regularity_scan,
                                represent_exterior)
from .sommerfeld_eval import (FieldPoint, Half, QuadSpec, SourcePoint,
                              WaveProfile, free_green, grad_y_free_green,
                              grad_y_green, grad_y_green_with_error, green,
                              green_with_error)
from .special_functions import (f2_closed, f3_closed, gamma_fn, hankel_h0,
                                hankel_h1, parabolic_d)
from .steepest_descent import (SaddleFrame, extend_by_symmetry, g_r_saddle,
                               grad_y_green_saddle, green_saddle, h_factor,
                               zeta_map)

__version__ = "1.0.0"

__all__ = [
    "AccuracyError", "BranchCutError", "BranchSide", "CircleTrace",
    "CoincidentPointsError", "ConvergenceError", "DomainError", "FarDirection",
    "FieldPoint", "Half", "HypothesisError", "IncidentSpec",
    "InterfacePlacementError", "LateralDirectionError", "Method", "PoleError",
    "QuadSpec", "RateFit", "SaddleFrame", "SourcePoint", "StripViolationError",
    "SweepPlan", "WaveProfile", "critical_angle", "envelope_check",
    "extend_by_symmetry", "f2_closed", "f3_closed", "farfield_from_boundary",
    "fit_rate", "free_green", "g_farfield", "g_r_saddle", "gamma_fn",
    "grad_y_free_green", "grad_y_green", "grad_y_green_saddle",
    "grad_y_green_with_error", "green", "green_saddle", "green_with_error",
    "h_factor", "h_farfield", "h_residual", "hankel_h0", "hankel_h1",
    "manufacture_trace", "near_critical_width", "parabolic_d",
    "pattern_regularity_scan", "reference_field", "refl_coeff", "refl_tilde",
    "represent_exterior", "residual", "s1", "s2", "s_cut", "s_limit",
    "s_tilde", "sharpness_probe", "sweep_rows", "trans_coeff", "trans_tilde",
    "zeta_map",
]
