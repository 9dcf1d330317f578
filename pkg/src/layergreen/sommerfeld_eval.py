"""Spectral-integral evaluation of the two-layer Helmholtz Green function.

The plane ``x2 = 0`` separates two homogeneous half-planes with wavenumbers
``k_plus`` (upper) and ``k_minus`` (lower).  The Green function splits into a
free-space part plus a reflected correction when source and target share a
half-plane, and a transmitted field otherwise.  Each correction is a Fourier
integral along the real spectral axis; this module evaluates those integrals
by symmetry reduction to ``[0, inf)``, singularity-absorbing substitutions on
the segments between the spectral branch points, and rotation of the tail
onto complex rays of exponential decay.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import branch_algebra as ba
from . import special_functions as sf
from ._errors import (CoincidentPointsError, DomainError,
                      InterfacePlacementError)
from ._quad import decay_tail, gauss_segment

__all__ = [
    "Half", "WaveProfile", "FieldPoint", "SourcePoint", "QuadSpec",
    "free_green", "grad_y_free_green", "green_reflected", "green_transmitted",
    "green_lower_reflected", "green_transmitted_swap", "green", "grad_y_green",
    "green_with_error", "grad_y_green_with_error",
]

#: beyond this many wavelengths the oscillation budget degrades accuracy
OSCILLATION_BUDGET = 500.0
#: points closer to the interface than this many wavelengths trigger a warning
NEAR_INTERFACE_FACTOR = 1e-3


class Half(enum.Enum):
    """Which half-plane a point occupies."""

    UPPER = 1
    LOWER = -1


@dataclass(frozen=True)
class WaveProfile:
    """Wavenumber pair (k_plus above the interface, k_minus below)."""

    k_plus: float
    k_minus: float

    def __post_init__(self):
        if not (self.k_plus > 0 and self.k_minus > 0):
            raise DomainError("wavenumbers must be positive")

    @property
    def contrast(self) -> float:
        """Ratio k_minus / k_plus."""
        return self.k_minus / self.k_plus

    @property
    def is_uniform(self) -> bool:
        return self.k_plus == self.k_minus

    def swapped(self) -> "WaveProfile":
        """Profile seen from the reflected frame (half-planes exchanged)."""
        return WaveProfile(self.k_minus, self.k_plus)


@dataclass(frozen=True)
class FieldPoint:
    """Point in the plane, aware of which half it lies in."""

    x1: float
    x2: float

    @property
    def r(self) -> float:
        return math.hypot(self.x1, self.x2)

    @property
    def theta(self) -> float:
        return math.atan2(self.x2, self.x1) % (2.0 * math.pi)

    @property
    def half(self) -> Half:
        if self.x2 > 0:
            return Half.UPPER
        if self.x2 < 0:
            return Half.LOWER
        raise InterfacePlacementError(
            f"point ({self.x1}, {self.x2}) lies on the interface")

    def mirrored(self) -> "FieldPoint":
        return FieldPoint(self.x1, -self.x2)


SourcePoint = FieldPoint


def as_point(p) -> FieldPoint:
    if isinstance(p, FieldPoint):
        return p
    return FieldPoint(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class QuadSpec:
    """Tuning knobs for the spectral quadrature."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    #: offset scale (in units of k_plus) separating the tail rays from the
    #: rightmost branch point
    indent_height: float = 0.05
    max_doublings: int = 11


def _validate_pair(x: FieldPoint, y: FieldPoint, k_ref: float) -> None:
    _ = x.half, y.half  # raises on interface placement
    sep = math.hypot(x.x1 - y.x1, x.x2 - y.x2)
    scale = max(1.0, x.r, y.r)
    if sep <= 1e-14 * scale:
        raise CoincidentPointsError("source and target points coincide")
    if k_ref * max(x.r, y.r) > OSCILLATION_BUDGET:
        warnings.warn(
            "evaluation point beyond the validated oscillation budget "
            f"(k*r = {k_ref * max(x.r, y.r):.3g} > {OSCILLATION_BUDGET:g}); "
            "accuracy may degrade", RuntimeWarning, stacklevel=3)


def free_green(k: float, x, y) -> complex:
    """Free-space Helmholtz Green function (i/4) H0^(1)(k |x - y|)."""
    x = as_point(x)
    y = as_point(y)
    r = math.hypot(x.x1 - y.x1, x.x2 - y.x2)
    if r == 0.0:
        raise CoincidentPointsError("free-space kernel is singular at x == y")
    return 0.25j * sf.hankel_h0(k * r)


def grad_y_free_green(k: float, x, y):
    """Gradient in y of the free-space kernel."""
    x = as_point(x)
    y = as_point(y)
    d1 = y.x1 - x.x1
    d2 = y.x2 - x.x2
    r = math.hypot(d1, d2)
    if r == 0.0:
        raise CoincidentPointsError("free-space kernel is singular at x == y")
    factor = -0.25j * k * sf.hankel_h1(k * r) / r
    return (factor * d1, factor * d2)


# ---------------------------------------------------------------------------
# core spectral integrator
# ---------------------------------------------------------------------------

def _root_on_segment(xi, du, dv, a, b, k):
    """S(xi, k) on a segment [a, b] that does not straddle +-k.

    ``du = xi - a`` and ``dv = b - xi`` are supplied exactly by the
    substitution, so the square-root factor stays fully accurate even when an
    endpoint coincides with the branch point k.
    """
    if b <= k:
        gap = dv if b == k else (k - a) - du
        return -1j * np.sqrt(gap * (k + xi))
    gap = du if a == k else du + (a - k)
    return np.sqrt(gap * (xi + k))


def _spectral_integral(kernel, delta, v_scale, wp, spec, parity, moment):
    """Evaluate ``int_0^inf kernel(xi, S+, S-) * xi^moment * trig(xi*delta) dxi``.

    ``kernel`` is an even, vectorized spectral factor that decays like
    ``exp(-S(xi) * v_scale)`` for large real ``xi``; ``parity`` selects the
    trigonometric weight ('cos' or 'sin').  The segment between 0 and the
    branch points uses the substitution ``xi = a + (b - a) sin^2(phi)`` which
    absorbs the inverse-square-root endpoint behavior; the tail is rotated
    onto rays where both the spectral and lateral oscillations decay.
    """
    kp, km = wp.k_plus, wp.k_minus
    k_lo = min(kp, km)
    k_hi = max(kp, km)
    t0 = k_hi + max(0.25 * kp, 2.0 * spec.indent_height * kp)

    def trig(xi):
        return np.cos(xi * delta) if parity == "cos" else np.sin(xi * delta)

    def moment_factor(xi):
        return xi if moment == 1 else 1.0

    # phase budget per unit xi on the finite part
    phase_rate = abs(delta) + v_scale
    total = 0.0j
    err = 0.0
    breaks = [0.0, k_lo, k_hi, t0]
    breaks = sorted(set(b for b in breaks if b <= t0))
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= 0:
            continue

        def seg(phi, a=a, b=b):
            du = (b - a) * np.sin(phi) ** 2
            dv = (b - a) * np.cos(phi) ** 2
            xi = a + du
            jac = (b - a) * np.sin(2.0 * phi)
            sp = _root_on_segment(xi, du, dv, a, b, kp)
            sm = _root_on_segment(xi, du, dv, a, b, km)
            return kernel(xi, sp, sm) * moment_factor(xi) * trig(xi) * jac

        n0 = max(4, int((b - a) * phase_rate / 4.0) + 1)
        v, e = gauss_segment(seg, 0.0, 0.5 * math.pi, n0=n0,
                             rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                             max_doublings=spec.max_doublings)
        total += v
        err += e

    # tail: split trig into exponentials and rotate each onto its decay ray
    if parity == "cos":
        pieces = [(0.5, delta), (0.5, -delta)]
    else:
        pieces = [(-0.5j, delta), (0.5j, -delta)]
    for coef, c in pieces:
        u = (v_scale + 1j * c)
        mag = abs(u)
        if mag == 0.0:
            raise CoincidentPointsError("spectral tail has no decay direction")
        u /= mag

        def ray(t, u=u, c=c, coef=coef):
            xi = t0 + u * t
            sp = ba._s_cut_v(xi, kp)
            sm = ba._s_cut_v(xi, km)
            return (coef * kernel(xi, sp, sm) * moment_factor(xi)
                    * np.exp(1j * c * xi) * u)

        v, e = decay_tail(ray, 30.0 / mag, rel_tol=spec.rel_tol,
                          abs_tol=spec.abs_tol)
        total += v
        err += e
    return total, err


def _warn_near_interface(v_scale, k_ref):
    if v_scale < NEAR_INTERFACE_FACTOR / k_ref:
        warnings.warn(
            "points are extremely close to the interface; spectral decay is "
            "weak and accuracy may degrade", RuntimeWarning, stacklevel=3)


def _reflected_kernels(wp):
    def make(h, which):
        def kern(xi, sp, sm):
            ratio = (sp - sm) / (sp + sm)
            e = np.exp(-sp * h)
            if which == "val":
                return ratio * e / sp
            if which == "d1":
                return ratio * e / sp
            return -ratio * e  # d2
        return kern

    return make


def _transmitted_kernels(wp):
    def make(x2, y2, which):
        def kern(xi, sp, sm):
            e = np.exp(sm * y2 - sp * x2)
            if which == "val" or which == "d1":
                return e / (sp + sm)
            return sm * e / (sp + sm)  # d2
        return kern

    return make


def _eval_reflected(wp, x, y, spec, want):
    """Reflected correction (both points in the upper half) and/or gradient."""
    delta = x.x1 - y.x1
    h = x.x2 + y.x2
    _warn_near_interface(h, wp.k_plus)
    make = _reflected_kernels(wp)
    out = {}
    err = 0.0
    pref = 1.0 / (2.0 * math.pi)
    if "val" in want:
        v, e = _spectral_integral(make(h, "val"), delta, h, wp, spec, "cos", 0)
        out["val"] = pref * v
        err += pref * e
    if "grad" in want:
        v1, e1 = _spectral_integral(make(h, "d1"), delta, h, wp, spec, "sin", 1)
        v2, e2 = _spectral_integral(make(h, "d2"), delta, h, wp, spec, "cos", 0)
        out["grad"] = (pref * v1, pref * v2)
        err += pref * (e1 + e2)
    out["err"] = err
    return out


def _eval_transmitted(wp, x, y, spec, want):
    """Transmitted field (x upper, y lower) and/or its y-gradient."""
    delta = x.x1 - y.x1
    v_scale = x.x2 - y.x2
    _warn_near_interface(min(x.x2, -y.x2), wp.k_plus)
    make = _transmitted_kernels(wp)
    out = {}
    err = 0.0
    pref = 1.0 / math.pi
    if "val" in want:
        v, e = _spectral_integral(make(x.x2, y.x2, "val"), delta, v_scale,
                                  wp, spec, "cos", 0)
        out["val"] = pref * v
        err += pref * e
    if "grad" in want:
        v1, e1 = _spectral_integral(make(x.x2, y.x2, "d1"), delta, v_scale,
                                    wp, spec, "sin", 1)
        v2, e2 = _spectral_integral(make(x.x2, y.x2, "d2"), delta, v_scale,
                                    wp, spec, "cos", 0)
        out["grad"] = (pref * v1, pref * v2)
        err += pref * (e1 + e2)
    out["err"] = err
    return out


# ---------------------------------------------------------------------------
# public evaluators
# ---------------------------------------------------------------------------

def green_reflected(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Reflected correction for source and target both in the upper half."""
    x, y = as_point(x), as_point(y)
    if x.half is not Half.UPPER or y.half is not Half.UPPER:
        raise DomainError("green_reflected requires both points above the interface")
    _validate_pair(x, y, wp.k_plus)
    if wp.is_uniform:
        return 0.0j
    return _eval_reflected(wp, x, y, spec, ("val",))["val"]


def green_transmitted(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Transmitted field for x in the upper half and y in the lower half."""
    x, y = as_point(x), as_point(y)
    if x.half is not Half.UPPER or y.half is not Half.LOWER:
        raise DomainError("green_transmitted requires x above and y below")
    _validate_pair(x, y, max(wp.k_plus, wp.k_minus))
    return _eval_transmitted(wp, x, y, spec, ("val",))["val"]


def green_lower_reflected(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Reflected correction for both points in the lower half (mirror frame)."""
    x, y = as_point(x), as_point(y)
    if x.half is not Half.LOWER or y.half is not Half.LOWER:
        raise DomainError("green_lower_reflected requires both points below")
    return green_reflected(wp.swapped(), x.mirrored(), y.mirrored(), spec)


def green_transmitted_swap(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Transmitted field for x in the lower half and y in the upper half."""
    x, y = as_point(x), as_point(y)
    if x.half is not Half.LOWER or y.half is not Half.UPPER:
        raise DomainError("green_transmitted_swap requires x below and y above")
    return green_transmitted(wp.swapped(), x.mirrored(), y.mirrored(), spec)


def _dispatch(wp, x, y, spec, want):
    """Dispatch on half-plane placement; returns dict with val/grad/err."""
    x, y = as_point(x), as_point(y)
    hx, hy = x.half, y.half
    flip = False
    if hx is Half.LOWER:
        wp = wp.swapped()
        x, y = x.mirrored(), y.mirrored()
        hx, hy = x.half, y.half
        flip = True
    _validate_pair(x, y, max(wp.k_plus, wp.k_minus))
    out = {"err": 0.0}
    if hy is Half.UPPER:
        k = wp.k_plus
        if "val" in want:
            out["val"] = free_green(k, x, y)
        if "grad" in want:
            out["grad"] = grad_y_free_green(k, x, y)
        if not wp.is_uniform:
            part = _eval_reflected(wp, x, y, spec, want)
            if "val" in want:
                out["val"] += part["val"]
            if "grad" in want:
                g = part["grad"]
                out["grad"] = (out["grad"][0] + g[0], out["grad"][1] + g[1])
            out["err"] += part["err"]
    else:
        part = _eval_transmitted(wp, x, y, spec, want)
        out.update({k: v for k, v in part.items() if k != "err"})
        out["err"] += part["err"]
    if flip and "grad" in out:
        out["grad"] = (out["grad"][0], -out["grad"][1])
    return out


def green(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Two-layer Green function G(x, y) for any off-interface placement."""
    return _dispatch(wp, x, y, spec, ("val",))["val"]


def grad_y_green(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()):
    """Gradient of the Green function with respect to the source point y."""
    return _dispatch(wp, x, y, spec, ("grad",))["grad"]


def green_with_error(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()):
    """Green function together with an accumulated quadrature-error estimate."""
    out = _dispatch(wp, x, y, spec, ("val",))
    return out["val"], out["err"]


def grad_y_green_with_error(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()):
    out = _dispatch(wp, x, y, spec, ("grad",))
    return out["grad"], out["err"]
