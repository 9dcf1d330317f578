"""Decay-rate measurement machinery: power-law fitting, residual evaluation,
envelope verdicts, and the sharpness probe scaffolding."""

import math

import numpy as np
import pytest

from layergreen import (DomainError, FieldPoint, Method, SweepPlan,
                        WaveProfile, critical_angle, fit_rate, h_residual,
                        near_critical_width, residual, sweep_rows)
from layergreen.asymptotics_lab import envelope_check, residual_detail

WP = WaveProfile(2.0, 1.0)
TC = critical_angle(WP)
Y = FieldPoint(0.3, 0.5)


def ray(theta, r):
    return FieldPoint(r * math.cos(theta), r * math.sin(theta))


# ---------------------------------------------------------------------------
# fitting
# ---------------------------------------------------------------------------

def test_fit_rate_exact_power_laws():
    r = np.geomspace(10.0, 1e4, 20)
    for p, c in ((-0.75, 2.0), (-1.5, 0.3)):
        fit = fit_rate(r, c * r ** p)
        assert abs(fit.slope - p) < 1e-12
        assert abs(math.exp(fit.intercept) - c) < 1e-10
        assert fit.max_abs_residual < 1e-12
        assert fit.npoints == 20


def test_fit_rate_two_term_mixture():
    """A -3/4 term plus a weaker -3/2 term fits near -3/4 over a decade-span
    grid, drifting slightly steeper."""
    r = np.geomspace(1e2, 1e4, 25)
    mags = 1.0 * r ** -0.75 + 3.0 * r ** -1.5
    fit = fit_rate(r, mags)
    assert -0.85 < fit.slope < -0.70


def test_fit_rate_guards():
    with pytest.raises(DomainError):
        fit_rate([1.0, 2.0, 3.0], [1.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        fit_rate([1.0, 2.0], [1.0, 1.0])


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def test_residual_subtracts_leading_order():
    """Removing the far-field body wave leaves a much smaller remainder."""
    import warnings

    from layergreen import green
    for theta in (0.8, TC + 0.3, math.pi + 0.9):
        x = ray(theta, 300.0)
        res, err, clear = residual_detail(WP, x, Y)
        with warnings.catch_warnings():
            # r = 300 sits just beyond the direct-quadrature comfort budget
            warnings.simplefilter("ignore", RuntimeWarning)
            g = green(WP, x, Y)
        assert abs(res) < 0.02 * abs(g)
        assert clear
        assert err < abs(res)
        assert abs(residual(WP, x, Y) - res) == 0.0


def test_residual_uniform_in_source_point():
    """The scaled remainder varies mildly across nearby source points."""
    r = 1e3
    vals = [abs(residual(WP, ray(TC, r), y)) * r ** 0.75
            for y in (FieldPoint(0.3, 0.5), FieldPoint(-0.4, 0.7),
                      FieldPoint(0.1, 1.0))]
    assert max(vals) < 10.0 * min(vals)


def test_h_residual_tracks_gradient():
    x = ray(TC, 500.0)
    hr = h_residual(WP, x, Y)
    assert np.all(np.isfinite([hr[0], hr[1]]))
    assert max(abs(hr[0]), abs(hr[1])) < 1e-2


def test_near_critical_width_scale():
    w = near_critical_width(WP, 1e4)
    assert abs(w - 0.5 / math.sqrt(2.0 * 1e4)) < 1e-15


# ---------------------------------------------------------------------------
# sweep plans and verdicts
# ---------------------------------------------------------------------------

def test_sweep_plan_validation():
    with pytest.raises(DomainError):
        SweepPlan(WP, (Y,), (TC,), radii=(100.0, 50.0))
    with pytest.raises(DomainError):
        SweepPlan(WP, (Y,), (TC,), radii=(0.5, 1.0))


def test_sweep_rows_schema_and_flags():
    plan = SweepPlan(WP, (Y,), (TC,),
                     radii=tuple(np.geomspace(100.0, 1000.0, 6)))
    rows = sweep_rows(plan, Y, TC)
    assert len(rows) == 6
    for theta, r, re, im, mag, flag in rows:
        assert theta == TC and 100.0 <= r <= 1000.0
        assert abs(complex(re, im)) == pytest.approx(mag)
        assert flag in ("clear", "noisy")


def test_envelope_check_inconclusive_on_short_grid():
    plan = SweepPlan(WP, (Y,), (TC,),
                     radii=tuple(np.geomspace(100.0, 300.0, 5)))
    report = envelope_check(plan)
    assert report["reports"][0]["verdict"] == "INCONCLUSIVE"
    assert report["verdict"] == "INCONCLUSIVE"


def test_envelope_check_passes_at_critical_angle():
    plan = SweepPlan(WP, (Y,), (TC,),
                     radii=tuple(np.geomspace(100.0, 1e4, 12)))
    report = envelope_check(plan)
    rep = report["reports"][0]
    assert rep["verdict"] == "PASS"
    assert -0.85 < rep["slope"] < -0.65
    assert np.isfinite(rep["constant_full"])


def test_method_auto_switches_consistently():
    """Quadrature below the oscillation budget, contour beyond it, matching
    in the overlap."""
    for method in (Method.QUADRATURE, Method.SADDLE):
        plan = SweepPlan(WP, (Y,), (0.9,),
                         radii=(120.0, 160.0), method=method)
        rows = sweep_rows(plan, Y, 0.9)
        if method is Method.QUADRATURE:
            base = rows
        else:
            for a, b in zip(base, rows):
                assert abs(complex(a[2], a[3]) - complex(b[2], b[3])) < 1e-9
