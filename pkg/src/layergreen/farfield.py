"""Closed-form far-field patterns of the two-layer Green function.

For |x| large the Green function behaves like ``e^{ik|x|}/sqrt(|x|)`` times a
direction-dependent pattern.  This module evaluates those patterns (and the
corresponding source-gradient patterns) in closed form from the Fresnel-type
reflection/transmission coefficients, together with the plane-wave reference
field generated by a downward-travelling incident wave.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .branch_algebra import s_cut
from ._errors import DomainError, LateralDirectionError
from .sommerfeld_eval import FieldPoint, Half, WaveProfile, as_point

__all__ = [
    "FarDirection", "IncidentSpec", "critical_angle", "refl_coeff",
    "trans_coeff", "refl_tilde", "trans_tilde", "g_farfield", "h_farfield",
    "reference_field",
]

_TWO_PI = 2.0 * math.pi


def _normalize_theta(theta: float) -> float:
    t = theta % _TWO_PI
    if min(abs(t), abs(t - math.pi), abs(t - _TWO_PI)) < 1e-14:
        raise LateralDirectionError(
            "far-field directions along the interface are excluded")
    return t


@dataclass(frozen=True)
class FarDirection:
    """Observation direction on the unit circle, off the interface axis."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _normalize_theta(self.theta))

    @property
    def vector(self):
        return (math.cos(self.theta), math.sin(self.theta))

    @property
    def half(self) -> Half:
        return Half.UPPER if self.theta < math.pi else Half.LOWER


def critical_angle(wp: WaveProfile) -> float:
    """arccos of the smaller-to-larger wavenumber ratio; needs a contrast."""
    if wp.is_uniform:
        raise DomainError("critical angle is undefined for a uniform profile")
    return math.acos(min(wp.k_plus, wp.k_minus) / max(wp.k_plus, wp.k_minus))


def _check_upper(theta: float) -> float:
    t = _normalize_theta(theta)
    if not (0.0 < t < math.pi):
        raise DomainError("coefficient defined for upward directions only")
    return t


def _check_lower(theta: float) -> float:
    t = _normalize_theta(theta)
    if not (math.pi < t < _TWO_PI):
        raise DomainError("tilde coefficient defined for downward directions only")
    return t


def refl_coeff(theta: float, wp: WaveProfile) -> complex:
    """Reflection coefficient (i sin t + S(cos t, n)) / (i sin t - S(cos t, n))."""
    t = _check_upper(theta)
    s = s_cut(math.cos(t), wp.contrast)
    return (1j * math.sin(t) + s) / (1j * math.sin(t) - s)


def trans_coeff(theta: float, wp: WaveProfile) -> complex:
    """Transmission coefficient, refl_coeff + 1."""
    return refl_coeff(theta, wp) + 1.0


def refl_tilde(theta: float, wp: WaveProfile) -> complex:
    """Lower-side reflection coefficient using the inverse contrast."""
    t = _check_lower(theta)
    s = s_cut(math.cos(t), 1.0 / wp.contrast)
    return (1j * math.sin(t) - s) / (1j * math.sin(t) + s)


def trans_tilde(theta: float, wp: WaveProfile) -> complex:
    """Lower-side transmission coefficient, refl_tilde + 1."""
    return refl_tilde(theta, wp) + 1.0


def _pattern_terms(dir: FarDirection, y: FieldPoint, wp: WaveProfile):
    """Common core of the far-field pattern and its gradient.

    Returns (prefactor, [(amplitude, wavevector)]) such that the pattern is
    prefactor * sum(amplitude * exp(i wavevector . y)) and the gradient
    pattern multiplies each term by i * wavevector.
    """
    t = dir.theta
    ct, st = math.cos(t), math.sin(t)
    n = wp.contrast
    if dir.half is Half.UPPER:
        kp = wp.k_plus
        pref = np.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * kp)
        if y.half is Half.UPPER:
            terms = [(1.0 + 0.0j, (-kp * ct, -kp * st)),
                     (refl_coeff(t, wp), (-kp * ct, kp * st))]
        else:
            s = s_cut(ct, n)
            terms = [(trans_coeff(t, wp), (-kp * ct, -1j * kp * s))]
        return pref, terms
    km = wp.k_minus
    pref = np.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * km)
    if y.half is Half.UPPER:
        s = s_cut(ct, 1.0 / n)
        terms = [(trans_tilde(t, wp), (-km * ct, 1j * km * s))]
    else:
        terms = [(1.0 + 0.0j, (-km * ct, -km * st)),
                 (refl_tilde(t, wp), (-km * ct, km * st))]
    return pref, terms


def g_farfield(dir: FarDirection, y, wp: WaveProfile) -> complex:
    """Far-field pattern G^inf(direction, y) of the Green function."""
    if not isinstance(dir, FarDirection):
        dir = FarDirection(float(dir))
    y = as_point(y)
    pref, terms = _pattern_terms(dir, y, wp)
    return pref * sum(amp * np.exp(1j * (w1 * y.x1 + w2 * y.x2))
                      for amp, (w1, w2) in terms)


def h_farfield(dir: FarDirection, y, wp: WaveProfile):
    """Source-gradient far-field pattern H^inf = grad_y G^inf."""
    if not isinstance(dir, FarDirection):
        dir = FarDirection(float(dir))
    y = as_point(y)
    pref, terms = _pattern_terms(dir, y, wp)
    g1 = 0.0j
    g2 = 0.0j
    for amp, (w1, w2) in terms:
        e = amp * np.exp(1j * (w1 * y.x1 + w2 * y.x2))
        g1 += 1j * w1 * e
        g2 += 1j * w2 * e
    return (pref * g1, pref * g2)


@dataclass(frozen=True)
class IncidentSpec:
    """Downward incident plane-wave direction and its derived directions."""

    theta_d: float
    d: tuple = field(init=False)
    d_r: tuple = field(init=False)
    d_t: tuple = field(init=False)

    def __post_init__(self):
        t = _normalize_theta(self.theta_d)
        if not (math.pi < t < _TWO_PI):
            raise DomainError("incident direction must point downward")
        object.__setattr__(self, "theta_d", t)

    def _derive(self, wp: WaveProfile):
        ct, st = math.cos(self.theta_d), math.sin(self.theta_d)
        n = wp.contrast
        s = s_cut(ct, n)
        object.__setattr__(self, "d", (ct, st))
        object.__setattr__(self, "d_r", (ct, -st))
        object.__setattr__(self, "d_t", (ct / n, -1j * s / n))


def reference_field(inc: IncidentSpec, x, wp: WaveProfile) -> complex:
    """Total plane-wave field: incident + reflected above, transmitted below."""
    if not isinstance(inc, IncidentSpec):
        inc = IncidentSpec(float(inc))
    inc._derive(wp)
    x = as_point(x)
    kp, km = wp.k_plus, wp.k_minus
    phi = inc.theta_d - math.pi  # mirror angle in (0, pi)
    if x.half is Half.UPPER:
        ui = np.exp(1j * kp * (x.x1 * inc.d[0] + x.x2 * inc.d[1]))
        ur = refl_coeff(phi, wp) * np.exp(
            1j * kp * (x.x1 * inc.d_r[0] + x.x2 * inc.d_r[1]))
        return ui + ur
    return trans_coeff(phi, wp) * np.exp(
        1j * km * (x.x1 * inc.d_t[0] + x.x2 * inc.d_t[1]))
