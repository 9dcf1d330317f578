"""Saddle-point evaluation: coordinate-map identities, square-root
factorization, symmetry extension, and agreement with direct quadrature."""

import math

import numpy as np
import pytest

from layergreen import (DomainError, FieldPoint, SaddleFrame, WaveProfile,
                        grad_y_green, grad_y_green_saddle, green,
                        green_saddle, h_factor, s_cut, s_tilde, zeta_map)
from layergreen._errors import HypothesisError, StripViolationError
from layergreen.branch_algebra import _s_cut_v, _s_tilde_v
from layergreen.steepest_descent import (dzeta_ds, extend_by_symmetry, p_of_s,
                                         q_of_s)

WP = WaveProfile(2.0, 1.0)
TC = math.acos(WP.contrast)


def ray(theta, r):
    return FieldPoint(r * math.cos(theta), r * math.sin(theta))


# ---------------------------------------------------------------------------
# saddle coordinate map
# ---------------------------------------------------------------------------

def test_pq_circle_identity():
    s = np.linspace(-1.3, 1.3, 101)
    p, q = p_of_s(s, WP), q_of_s(s, WP)
    assert np.max(np.abs(p * p + q * q - 1.0)) < 1e-14


def test_p_has_positive_real_part_on_strip():
    re = np.linspace(-1.3, 1.3, 21)
    im = np.linspace(-0.9, 0.9, 15) * math.sqrt(WP.k_plus)
    s = re[:, None] + 1j * im[None, :]
    assert np.min(p_of_s(s, WP).real) > 0.0


def test_strip_guard():
    with pytest.raises(StripViolationError):
        p_of_s(2j * math.sqrt(WP.k_plus), WP)


def test_map_fixes_the_saddle():
    for tx in (0.3, 0.9, 1.4):
        assert abs(zeta_map(0.0, tx, WP) - tx) < 1e-15
        ref = math.sqrt(2.0 / WP.k_plus) * np.exp(-0.25j * np.pi)
        assert abs(dzeta_ds(0.0, WP) - ref) < 1e-15


def test_phase_is_exactly_gaussian():
    """i k cos(zeta(s) - theta_x) = i k - s^2 along the deformed contour."""
    s = np.linspace(-1.2, 1.2, 81)
    for tx in (0.4, 1.0, 1.5):
        z = zeta_map(s, tx, WP)
        lhs = 1j * WP.k_plus * np.cos(z - tx)
        assert np.max(np.abs(lhs - (1j * WP.k_plus - s * s))) < 1e-12


def test_contour_descends_monotonically():
    """Re cos(zeta(s)) decreases strictly along real s (no phase returns)."""
    s = np.linspace(-1.2, 1.2, 201)
    for tx in (0.3, 0.8, 1.3):
        re = np.real(np.cos(zeta_map(s, tx, WP)))
        assert np.all(np.diff(re) < 0.0)


# ---------------------------------------------------------------------------
# frame and factorization
# ---------------------------------------------------------------------------

def test_frame_requires_ordering_and_range():
    with pytest.raises(DomainError):
        SaddleFrame(0.5, WaveProfile(1.0, 2.0))
    with pytest.raises(DomainError):
        SaddleFrame(2.0, WP)
    frame = SaddleFrame(0.5, WP)
    assert abs(frame.theta_c - TC) < 1e-15
    assert abs(frame.n - 0.5) < 1e-15


def test_branch_point_images():
    for tx in (0.3, 1.2):
        frame = SaddleFrame(tx, WP)
        z = complex(np.cos(zeta_map(frame.s_b, tx, WP)))
        assert abs(z - WP.contrast) < 1e-13
        z2 = complex(np.cos(zeta_map(frame.s_b_star, tx, WP)))
        assert abs(z2 + WP.contrast) < 1e-13


def test_factorization_reproduces_slowness_root():
    pref = math.sqrt(2.0 / WP.k_plus) * np.exp(-0.25j * np.pi)
    s = np.linspace(-1.2, 1.2, 41)
    for tx in np.linspace(0.05, 0.5 * math.pi - 0.05, 20):
        tx = float(tx)
        frame = SaddleFrame(tx, WP)
        prod = (pref * h_factor(TC, s, frame) * h_factor(math.pi - TC, s, frame)
                * np.sqrt(s - frame.s_b) * np.sqrt(s - frame.s_b_star))
        cz = np.cos(zeta_map(s, tx, WP))
        target = (_s_cut_v(cz, WP.contrast) if tx > TC
                  else -_s_tilde_v(cz, WP.contrast))
        assert np.max(np.abs(prod - target)) < 1e-10


def test_factorization_at_saddle_point():
    for tx in (1.2, 1.4):  # above critical: the root is -i sqrt(n^2-cos^2)
        frame = SaddleFrame(tx, WP)
        pref = math.sqrt(2.0 / WP.k_plus) * np.exp(-0.25j * np.pi)
        v = (pref * h_factor(TC, 0.0, frame) * h_factor(math.pi - TC, 0.0, frame)
             * np.sqrt(-frame.s_b) * np.sqrt(-frame.s_b_star))
        ref = -1j * math.sqrt(WP.contrast ** 2 - math.cos(tx) ** 2)
        assert abs(ref - s_cut(complex(math.cos(tx)), WP.contrast)) < 1e-15
        assert abs(v - ref) < 1e-13


# ---------------------------------------------------------------------------
# cross-method agreement
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("theta", [0.3, TC - 0.3, TC - 1e-4, TC, TC + 1e-4,
                                   TC + 0.3, 1.3, 1.5])
def test_value_agreement_upper(theta):
    y = FieldPoint(0.3, 0.5)
    for r in (40.0, 90.0):
        x = ray(theta, r)
        a = green(WP, x, y)
        b = green_saddle(WP, x, y)
        assert abs(a - b) <= 1e-6 * abs(a)


def test_value_agreement_transmitted_and_lower():
    for y, theta in ((FieldPoint(0.3, -0.5), 0.9),
                     (FieldPoint(0.3, -0.5), TC),
                     (FieldPoint(0.3, 0.5), math.pi + 0.8),
                     (FieldPoint(0.3, -0.5), math.pi + 1.2)):
        x = ray(theta, 60.0)
        a = green(WP, x, y)
        b = green_saddle(WP, x, y)
        assert abs(a - b) <= 1e-6 * abs(a), theta


def test_gradient_agreement():
    y = FieldPoint(0.3, 0.5)
    for theta in (0.7, TC, 2.0):
        x = ray(theta, 60.0)
        a = grad_y_green(WP, x, y)
        b = grad_y_green_saddle(WP, x, y)
        for u, v in zip(a, b):
            assert abs(u - v) <= 1e-6 * abs(u)


def test_continuity_across_critical_angle():
    """The loop-corrected contour value moves smoothly through theta_c."""
    y = FieldPoint(0.3, 0.5)
    vals = [green_saddle(WP, ray(TC + d, 50.0), y)
            for d in (-1e-4, 0.0, 1e-4)]
    assert abs(vals[0] - vals[1]) < 1e-3 * abs(vals[1])
    assert abs(vals[2] - vals[1]) < 1e-3 * abs(vals[1])


def test_obtuse_angles_via_mirror():
    y = FieldPoint(-0.2, 0.4)
    for theta in (math.pi - 0.4, math.pi - TC):
        x = ray(theta, 60.0)
        a = green(WP, x, y)
        b = green_saddle(WP, x, y)
        assert abs(a - b) <= 1e-6 * abs(a)


def test_swapped_ordering():
    """k_plus < k_minus observation handled through the swapped frame."""
    wp = WaveProfile(1.0, 2.0)
    y = FieldPoint(0.3, -0.5)
    x = ray(math.pi + 1.0, 60.0)
    a = green(wp, x, y)
    b = green_saddle(wp, x, y)
    assert abs(a - b) <= 1e-6 * abs(a)


def test_hypothesis_guards():
    y = FieldPoint(0.3, 0.5)
    with pytest.raises(HypothesisError):
        green_saddle(WP, ray(0.9, 0.4), y)  # target closer than the source


def test_symmetry_extension_consistency():
    """Reduction to the canonical wedge preserves the Green function value
    and lands the observation point in theta in (0, pi/2] above the line."""
    y = FieldPoint(0.4, 0.6)
    for theta in (2.2, math.pi + 0.7, math.pi + 2.4):
        x = ray(theta, 60.0)
        wp2, x2, y2, sym = extend_by_symmetry(WP, x, y)
        assert 0.0 < x2.theta <= 0.5 * math.pi + 1e-12
        a = green(WP, x, y)
        b = green(wp2, x2, y2)
        assert abs(a - b) <= 1e-9 * abs(a)
        ga = grad_y_green(WP, x, y)
        gb = sym.apply(grad_y_green(wp2, x2, y2))
        for u, v in zip(ga, gb):
            assert abs(u - v) <= 1e-8 * max(1.0, abs(u))
