"""Empirical decay-rate laboratory for the far-field remainder.

The Green function satisfies ``G(x,y) = e^{ik|x|}/sqrt(|x|) Ginf(x^,y) +
G_Res(x,y)``.  This module measures the remainder along radial sweeps, fits
log-log decay rates, checks the uniform envelope ``|G_Res| <= C *
min(|x|^{-3/4}, |dtheta|^{-3/2} |x|^{-3/2})`` (``dtheta`` the angular distance
to the nearest critical angle), and probes the sharpness of the degraded
``|x|^{-3/4}`` rate exactly at critical angles.
"""

from __future__ import annotations

import enum
import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from ._errors import DomainError
from .farfield import FarDirection, critical_angle, g_farfield, h_farfield
from .sommerfeld_eval import (FieldPoint, Half, QuadSpec, WaveProfile,
                              as_point, green_with_error,
                              grad_y_green_with_error)
from .steepest_descent import green_saddle, grad_y_green_saddle

__all__ = [
    "Method", "SweepPlan", "RateFit", "residual", "residual_detail",
    "h_residual", "h_residual_detail", "fit_rate", "envelope_check",
    "sharpness_probe", "sweep_rows",
]

#: direct quadrature is used below this oscillation count in Auto mode
_AUTO_QUAD_LIMIT = 400.0

#: relative accuracy credited to a converged saddle evaluation
_SADDLE_REL_ERR = 1e-11

_DEFAULT_RADII = tuple(np.geomspace(1e2, 1e4, 25))


class Method(enum.Enum):
    QUADRATURE = "quad"
    SADDLE = "saddle"
    AUTO = "auto"


@dataclass(frozen=True)
class SweepPlan:
    """Radial sweep specification for rate measurements."""

    wp: WaveProfile
    y_set: tuple
    theta_list: tuple
    radii: tuple = _DEFAULT_RADII
    method: Method = Method.AUTO
    source_radius: float = 1.0

    def __post_init__(self):
        if list(self.radii) != sorted(set(self.radii)):
            raise DomainError("radii must be strictly increasing")
        r_min = self.radii[0]
        if r_min <= 2.0 * self.source_radius:
            raise DomainError("smallest radius must exceed twice the source ball")
        if not self.wp.is_uniform:
            tc = critical_angle(self.wp)
            if r_min <= self.source_radius / math.cos(tc):
                raise DomainError("smallest radius violates the sweep hypotheses")


@dataclass(frozen=True)
class RateFit:
    """Least-squares power-law fit in log-log coordinates."""

    slope: float
    intercept: float
    max_abs_residual: float
    npoints: int


def fit_rate(radii, magnitudes) -> RateFit:
    """Fit ``log magnitude = slope * log r + intercept``."""
    radii = np.asarray(radii, dtype=float)
    mags = np.asarray(magnitudes, dtype=float)
    if np.any(mags <= 0.0):
        raise DomainError("magnitudes must be positive for a log-log fit")
    if radii.size < 5 or radii.size != mags.size:
        raise DomainError("need at least 5 matched (radius, magnitude) pairs")
    lr = np.log(radii)
    lm = np.log(mags)
    slope, intercept = np.polyfit(lr, lm, 1)
    resid = lm - (slope * lr + intercept)
    return RateFit(float(slope), float(intercept),
                   float(np.max(np.abs(resid))), int(radii.size))


def _critical_angles(wp: WaveProfile):
    if wp.is_uniform:
        return ()
    tc = critical_angle(wp)
    if wp.k_plus > wp.k_minus:
        return (tc, math.pi - tc)
    return (math.pi + tc, 2.0 * math.pi - tc)


def _envelope(wp: WaveProfile, theta: float, r: float) -> float:
    """Reference remainder envelope min(r^-3/4, dtheta^-3/2 r^-3/2)."""
    crits = _critical_angles(wp)
    env = r ** -1.5
    if crits:
        half = Half.UPPER if (theta % (2 * math.pi)) < math.pi else Half.LOWER
        same_half = [c for c in crits
                     if (c < math.pi) == (half is Half.UPPER)]
        if same_half:
            d = min(abs(theta - c) for c in same_half)
            if d > 0:
                env = d ** -1.5 * r ** -1.5
            else:
                env = math.inf
    return min(r ** -0.75, env)


def _point_on_ray(theta: float, r: float) -> FieldPoint:
    return FieldPoint(r * math.cos(theta), r * math.sin(theta))


def _eval_green(wp, x, y, method: Method, spec: QuadSpec):
    if method is Method.AUTO:
        osc = max(wp.k_plus, wp.k_minus) * x.r
        method = Method.QUADRATURE if osc <= _AUTO_QUAD_LIMIT else Method.SADDLE
    if method is Method.QUADRATURE:
        return green_with_error(wp, x, y, spec)
    g = green_saddle(wp, x, y, spec)
    return g, _SADDLE_REL_ERR * abs(g)


def _eval_grad(wp, x, y, method: Method, spec: QuadSpec):
    if method is Method.AUTO:
        osc = max(wp.k_plus, wp.k_minus) * x.r
        method = Method.QUADRATURE if osc <= _AUTO_QUAD_LIMIT else Method.SADDLE
    if method is Method.QUADRATURE:
        return grad_y_green_with_error(wp, x, y, spec)
    g = grad_y_green_saddle(wp, x, y, spec)
    return g, _SADDLE_REL_ERR * math.hypot(abs(g[0]), abs(g[1]))


def _pattern_prefactor(wp, theta, r):
    k = wp.k_plus if (theta % (2 * math.pi)) < math.pi else wp.k_minus
    return np.exp(1j * k * r) / math.sqrt(r)


def residual_detail(wp: WaveProfile, x, y, method: Method = Method.AUTO,
                    spec: QuadSpec = QuadSpec()):
    """Remainder G - pattern term, with error estimate and accuracy flag."""
    x, y = as_point(x), as_point(y)
    g, err = _eval_green(wp, x, y, method, spec)
    theta = x.theta
    pat = _pattern_prefactor(wp, theta, x.r) * g_farfield(FarDirection(theta), y, wp)
    res = g - pat
    clear = err <= 0.1 * _envelope(wp, theta, x.r)
    return res, err, clear


def residual(wp: WaveProfile, x, y, method: Method = Method.AUTO,
             spec: QuadSpec = QuadSpec()) -> complex:
    """Far-field remainder G_Res(x, y)."""
    return residual_detail(wp, x, y, method, spec)[0]


def h_residual_detail(wp: WaveProfile, x, y, method: Method = Method.AUTO,
                      spec: QuadSpec = QuadSpec()):
    """Gradient remainder with error estimate and accuracy flag."""
    x, y = as_point(x), as_point(y)
    g, err = _eval_grad(wp, x, y, method, spec)
    theta = x.theta
    pref = _pattern_prefactor(wp, theta, x.r)
    hpat = h_farfield(FarDirection(theta), y, wp)
    res = (g[0] - pref * hpat[0], g[1] - pref * hpat[1])
    clear = err <= 0.1 * _envelope(wp, theta, x.r)
    return res, err, clear


def h_residual(wp: WaveProfile, x, y, method: Method = Method.AUTO,
               spec: QuadSpec = QuadSpec()):
    """Gradient far-field remainder H_Res(x, y)."""
    return h_residual_detail(wp, x, y, method, spec)[0]


def near_critical_width(wp: WaveProfile, r_max: float) -> float:
    """Angular half-width of the near-critical window at the largest radius."""
    return 1.0 / (2.0 * math.sqrt(max(wp.k_plus, wp.k_minus) * r_max))


def sweep_rows(plan: SweepPlan, y, theta: float, gradient: bool = False):
    """Rows (theta, r, re, im, abs_residual, flag) along one radial sweep."""
    rows = []
    for r in plan.radii:
        x = _point_on_ray(theta, r)
        if gradient:
            (res1, res2), _, clear = h_residual_detail(plan.wp, x, y, plan.method)
            mag = math.hypot(abs(res1), abs(res2))
            res = res1
        else:
            res, _, clear = residual_detail(plan.wp, x, y, plan.method)
            mag = abs(res)
        rows.append((theta, r, res.real, res.imag, mag,
                     "clear" if clear else "budget"))
    return rows


def _sweep_report(plan, y, theta, gradient=False):
    rows = sweep_rows(plan, y, theta, gradient=gradient)
    clear = [(r, mag) for (_, r, _, _, mag, flag) in rows
             if flag == "clear" and mag > 0.0]
    report = {"theta": theta, "n_clear": len(clear), "rows": rows}
    if len(clear) < 8:
        report["verdict"] = "INCONCLUSIVE"
        return report
    radii = [r for r, _ in clear]
    mags = [m for _, m in clear]
    fit = fit_rate(radii, mags)
    ratios = [m / _envelope(plan.wp, theta, r) for r, m in clear]
    c_full = max(ratios)
    decade = [ratio for (r, _), ratio in zip(clear, ratios)
              if r >= radii[-1] / 10.0]
    c_last = max(decade)
    stable = c_last <= 2.0 * c_full and c_full <= 2.0 * max(c_last, 1e-300)
    report.update(slope=fit.slope, intercept=fit.intercept,
                  fit_residual=fit.max_abs_residual,
                  constant_full=c_full, constant_last_decade=c_last,
                  verdict="PASS" if (math.isfinite(c_full) and stable) else "FAIL")
    return report


def envelope_check(plan: SweepPlan, gradient: bool = False) -> dict:
    """Slope fits and envelope constants for every (y, theta) in the plan."""
    reports = []
    for y in plan.y_set:
        y = as_point(y)
        for theta in plan.theta_list:
            reports.append(_sweep_report(plan, y, theta, gradient=gradient))
    verdict = "PASS"
    if any(rep["verdict"] == "FAIL" for rep in reports):
        verdict = "FAIL"
    elif any(rep["verdict"] == "INCONCLUSIVE" for rep in reports):
        verdict = "INCONCLUSIVE"
    return {"reports": reports, "verdict": verdict}


def sharpness_probe(wp: WaveProfile, y, r_max: float = 1e4,
                    n_radii: int = 25) -> dict:
    """Evidence that the remainder decays no faster than |x|^{-3/4} at the
    critical angles: the scaled sequence |G_Res| |x|^{3/4} stays bounded away
    from zero while |G_Res| |x|^{3/2} grows.
    """
    if wp.is_uniform:
        raise DomainError("sharpness probe needs a wavenumber contrast")
    y = as_point(y)
    radii = np.geomspace(1e2, r_max, n_radii)
    out = {"angles": [], "verdict": "PASS"}
    for theta in _critical_angles(wp):
        scaled34 = []
        scaled32 = []
        for r in radii:
            res, _, _ = residual_detail(wp, _point_on_ray(theta, r), y)
            scaled34.append(abs(res) * r ** 0.75)
            scaled32.append(abs(res) * r ** 1.5)
        med = statistics.median(scaled34)
        bounded = all(v >= 0.5 * med for v in scaled34[-3:])
        # the r^{-3/2}-scaled sequence must grow over the last decade
        decade = [v for r, v in zip(radii, scaled32) if r >= r_max / 10.0]
        growing = all(b > a for a, b in zip(decade[:-1], decade[1:]))
        verdict = "PASS" if (bounded and growing) else "FAIL"
        if verdict == "FAIL":
            out["verdict"] = "FAIL"
        out["angles"].append({
            "theta": theta, "scaled_34": scaled34, "scaled_32": scaled32,
            "median_34": med, "bounded_below": bounded,
            "grows_32": growing, "verdict": verdict,
        })
    return out
