"""Spectral-quadrature Green function: limiting cases, symmetries, PDE and
interface conditions, radiation behavior, and input guards."""

import math

import numpy as np
import pytest

from layergreen import (CoincidentPointsError, FieldPoint, Half,
                        InterfacePlacementError, QuadSpec, WaveProfile,
                        free_green, grad_y_free_green, grad_y_green, green,
                        green_with_error)
from layergreen.sommerfeld_eval import (green_lower_reflected, green_reflected,
                                        green_transmitted)

WP = WaveProfile(2.0, 1.0)
UNIFORM = WaveProfile(2.0, 2.0)


def rand_point(rng, lo=0.2, hi=2.5, half=None):
    sign = rng.choice((1.0, -1.0)) if half is None else (1.0 if half == "up" else -1.0)
    return FieldPoint(rng.uniform(-3, 3), sign * rng.uniform(lo, hi))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

def test_field_point_polar_cache():
    p = FieldPoint(3.0, -4.0)
    assert abs(p.r - 5.0) < 1e-14
    assert abs(p.r * math.cos(p.theta) - 3.0) < 1e-13
    assert abs(p.r * math.sin(p.theta) + 4.0) < 1e-13
    assert p.half is Half.LOWER
    assert FieldPoint(1.0, 2.0).half is Half.UPPER


def test_field_point_rejects_interface():
    with pytest.raises(InterfacePlacementError):
        _ = FieldPoint(1.0, 0.0).half


def test_wave_profile_contrast():
    assert abs(WP.contrast - 0.5) < 1e-15
    assert UNIFORM.is_uniform and not WP.is_uniform


# ---------------------------------------------------------------------------
# free-space kernel
# ---------------------------------------------------------------------------

def test_free_green_symmetry_translation():
    x, y = FieldPoint(1.0, 1.0), FieldPoint(0.2, 0.4)
    v = free_green(2.0, x, y)
    assert v == free_green(2.0, y, x)
    xt, yt = FieldPoint(1.5, 1.3), FieldPoint(0.7, 0.7)
    assert abs(free_green(2.0, xt, yt) - v) < 1e-14


def test_free_green_far_modulus():
    k, r = 2.0, 300.0
    v = free_green(k, FieldPoint(r, 1.0), FieldPoint(0.0, 1.0))
    assert abs(abs(v) - (8.0 * math.pi * k * r) ** -0.5) < 1e-3 * abs(v)


def test_free_green_coincidence():
    with pytest.raises(CoincidentPointsError):
        free_green(2.0, FieldPoint(0.0, 1.0), FieldPoint(0.0, 1.0))


def test_grad_free_green_fd():
    k, x, y = 2.0, FieldPoint(1.0, 1.0), FieldPoint(0.2, 0.4)
    g = grad_y_free_green(k, x, y)
    h = 1e-6
    for i, gi in enumerate(g):
        dy = [0.0, 0.0]
        dy[i] = h
        fd = (free_green(k, x, FieldPoint(y.x1 + dy[0], y.x2 + dy[1]))
              - free_green(k, x, FieldPoint(y.x1 - dy[0], y.x2 - dy[1]))) / (2 * h)
        assert abs(fd - gi) < 1e-8


# ---------------------------------------------------------------------------
# limiting cases and symmetries
# ---------------------------------------------------------------------------

def test_uniform_profile_collapse():
    rng = np.random.default_rng(3)
    for _ in range(30):
        x, y = rand_point(rng), rand_point(rng)
        if math.hypot(x.x1 - y.x1, x.x2 - y.x2) < 1e-3:
            continue
        ref = free_green(2.0, x, y)
        assert abs(green(UNIFORM, x, y) - ref) <= 1e-8 * abs(ref)


def test_reflected_vanishes_for_uniform_profile():
    v = green_reflected(UNIFORM, FieldPoint(1.0, 1.0), FieldPoint(0.0, 0.5))
    assert abs(v) < 1e-13


def test_lateral_evenness():
    """The spectral kernels are even in the horizontal offset."""
    y = FieldPoint(0.0, 0.5)
    for x2, fn in ((1.0, green_reflected), (-1.0, None)):
        x = FieldPoint(1.7, x2)
        xm = FieldPoint(-1.7, x2)
        assert abs(green(WP, x, y) - green(WP, xm, y)) < 1e-10


def test_reflected_depends_on_height_sum():
    a = green_reflected(WP, FieldPoint(1.0, 0.4), FieldPoint(0.0, 1.1))
    b = green_reflected(WP, FieldPoint(1.0, 1.1), FieldPoint(0.0, 0.4))
    assert abs(a - b) < 1e-11


def test_swap_identity():
    """Exchanging the layers mirrors both points through the interface."""
    x, y = FieldPoint(0.7, -0.9), FieldPoint(-0.3, -0.4)
    direct = green(WP, x, y)
    swapped = green(WaveProfile(1.0, 2.0), x.mirrored(), y.mirrored())
    assert abs(direct - swapped) < 1e-11


def test_reciprocity_all_placements():
    rng = np.random.default_rng(11)
    for pair in (("up", "up"), ("up", "lo"), ("lo", "up"), ("lo", "lo")):
        for _ in range(5):
            x = rand_point(rng, half=pair[0])
            y = rand_point(rng, half=pair[1])
            a, b = green(WP, x, y), green(WP, y, x)
            assert abs(a - b) <= 1e-9 * abs(a)


# ---------------------------------------------------------------------------
# PDE, interface, and radiation conditions
# ---------------------------------------------------------------------------

def helmholtz_residual(wp, x, y, h):
    k = wp.k_plus if x.half is Half.UPPER else wp.k_minus
    stencil = green(wp, FieldPoint(x.x1 + h, x.x2), y) \
        + green(wp, FieldPoint(x.x1 - h, x.x2), y) \
        + green(wp, FieldPoint(x.x1, x.x2 + h), y) \
        + green(wp, FieldPoint(x.x1, x.x2 - h), y) \
        - 4.0 * green(wp, x, y)
    return stencil / (h * h) + k * k * green(wp, x, y)


def test_helmholtz_fd_order():
    x, y = FieldPoint(0.8, 0.9), FieldPoint(-0.5, -0.7)
    hs = (1e-2, 5e-3, 2.5e-3)
    res = [abs(helmholtz_residual(WP, x, y, h)) for h in hs]
    order = np.polyfit(np.log(hs), np.log(res), 1)[0]
    assert 1.7 <= order <= 2.3


def one_sided_limit(values, offsets):
    """Quadratic Richardson extrapolation of f(t) to t -> 0."""
    c = np.polyfit(offsets, values, 2)
    return c[-1]


def test_interface_continuity_of_source_trace():
    """y -> G(x,y) and its normal derivative are continuous across the
    interface, probed by extrapolated one-sided limits."""
    x = FieldPoint(0.9, 1.3)
    offs = np.array([3e-3, 2e-3, 1e-3])
    up_v, lo_v, up_d, lo_d = [], [], [], []
    for t in offs:
        up_v.append(green(WP, x, FieldPoint(0.2, t)))
        lo_v.append(green(WP, x, FieldPoint(0.2, -t)))
        up_d.append(grad_y_green(WP, x, FieldPoint(0.2, t))[1])
        lo_d.append(grad_y_green(WP, x, FieldPoint(0.2, -t))[1])
    gu = one_sided_limit(up_v, offs)
    gl = one_sided_limit(lo_v, -offs)
    assert abs(gu - gl) <= 1e-4 * abs(gu)
    du = one_sided_limit(up_d, offs)
    dl = one_sided_limit(lo_d, -offs)
    assert abs(du - dl) <= 1e-4 * abs(du)


def test_radiation_probe():
    y = FieldPoint(0.3, 0.5)
    theta = 0.9
    k = WP.k_plus
    h = 1e-5
    defect = []
    for r in (50.0, 100.0, 200.0):
        x = FieldPoint(r * math.cos(theta), r * math.sin(theta))
        xp = FieldPoint((r + h) * math.cos(theta), (r + h) * math.sin(theta))
        xm = FieldPoint((r - h) * math.cos(theta), (r - h) * math.sin(theta))
        dr = (green(WP, xp, y) - green(WP, xm, y)) / (2 * h)
        defect.append(math.sqrt(r) * abs(dr - 1j * k * green(WP, x, y)))
    assert defect[0] > defect[1] > defect[2]


# ---------------------------------------------------------------------------
# gradients
# ---------------------------------------------------------------------------

def test_grad_matches_finite_differences():
    rng = np.random.default_rng(17)
    h = 1e-5
    for _ in range(6):
        x, y = rand_point(rng), rand_point(rng)
        g = grad_y_green(WP, x, y)
        for i, gi in enumerate(g):
            dy = [0.0, 0.0]
            dy[i] = h
            fd = (green(WP, x, FieldPoint(y.x1 + dy[0], y.x2 + dy[1]))
                  - green(WP, x, FieldPoint(y.x1 - dy[0], y.x2 - dy[1]))) / (2 * h)
            assert abs(fd - gi) <= 1e-6 * max(1.0, abs(gi))


def test_grad_uniform_profile_matches_free_kernel():
    x, y = FieldPoint(1.0, 1.0), FieldPoint(0.2, -0.4)
    g = grad_y_green(UNIFORM, x, y)
    ref = grad_y_free_green(2.0, x, y)
    for a, b in zip(g, ref):
        assert abs(a - b) < 1e-9


# ---------------------------------------------------------------------------
# guards and error reporting
# ---------------------------------------------------------------------------

def test_rejects_interface_placement():
    with pytest.raises(InterfacePlacementError):
        green(WP, FieldPoint(1.0, 0.0), FieldPoint(0.0, 0.5))
    with pytest.raises(InterfacePlacementError):
        green(WP, FieldPoint(1.0, 1.0), FieldPoint(0.0, 0.0))


def test_rejects_coincident_points():
    with pytest.raises(CoincidentPointsError):
        green(UNIFORM, FieldPoint(0.0, 1.0), FieldPoint(0.0, 1.0))


def test_placement_guards_on_specialized_kernels():
    from layergreen import DomainError
    with pytest.raises(DomainError):
        green_reflected(WP, FieldPoint(1.0, -1.0), FieldPoint(0.0, 0.5))
    with pytest.raises(DomainError):
        green_transmitted(WP, FieldPoint(1.0, 1.0), FieldPoint(0.0, 0.5))
    with pytest.raises(DomainError):
        green_lower_reflected(WP, FieldPoint(1.0, 1.0), FieldPoint(0.0, -0.5))


def test_error_estimate_is_honest():
    x, y = FieldPoint(1.3, 0.8), FieldPoint(-0.4, 0.6)
    val, err = green_with_error(WP, x, y)
    tight = green(WP, x, y, QuadSpec(rel_tol=1e-12, abs_tol=1e-15))
    assert abs(val - tight) <= max(10.0 * err, 1e-12 * abs(val))


def test_oscillation_budget_warns():
    y = FieldPoint(0.3, 0.5)
    x = FieldPoint(400.0, 300.0)  # k r = 1000 exceeds the validated budget
    with pytest.warns(RuntimeWarning):
        green(WP, x, y)
