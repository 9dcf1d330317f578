"""Saddle-point evaluation of the layered Green function at large range.

The spectral integrals are transformed by ``xi = k_plus * cos(zeta)`` and the
saddle-point substitution ``zeta = zeta(s)``, which turns the oscillatory
phase into the Gaussian weight ``exp(-|x| s^2)`` along the steepest-descent
path through the observation angle.  Below the critical angle the deformation
sweeps across the branch cut of the lower-layer slowness root, contributing an
extra two-leg loop integral; both pieces are quadratured here.  The module
also exposes the square-root factorization machinery (``h_factor``) used to
peel the branch-point singularity off the transformed integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import branch_algebra as ba
from ._errors import DomainError, HypothesisError, StripViolationError
from .sommerfeld_eval import (FieldPoint, Half, QuadSpec, WaveProfile,
                              as_point, free_green, grad_y_free_green)
from ._quad import gauss_segment, tanh_sinh

__all__ = [
    "THETA_MARGIN", "SaddleFrame", "p_of_s", "q_of_s", "zeta_map",
    "dzeta_ds", "h_factor", "g_r_saddle", "extend_by_symmetry", "SymmetryMap",
    "green_saddle", "grad_y_green_saddle",
]

#: angular margin (radians) keeping evaluations away from grazing directions
THETA_MARGIN = 0.05

#: truncation chosen so exp(-r L^2) ~ 4e-18
_WINDOW_EXPONENT = 40.0

#: minimum exponent of the neglected loop correction in the k_plus < k_minus
#: regime before the saddle path is trusted without it
_LOOP_NEGLECT_EXPONENT = 30.0


def _check_strip(s, k_plus):
    lim = math.sqrt(k_plus)
    if np.any(np.abs(np.imag(np.asarray(s, dtype=complex))) >= lim):
        raise StripViolationError(
            f"s outside the analyticity strip |Im s| < sqrt(k_plus) = {lim:g}")


def p_of_s(s, wp: WaveProfile):
    """P(s) = sqrt(1 + i s^2 / (2 k_plus)), principal root, Re P > 0 on strip."""
    _check_strip(s, wp.k_plus)
    return np.sqrt(1.0 + 0.5j * np.asarray(s, dtype=complex) ** 2 / wp.k_plus)


def q_of_s(s, wp: WaveProfile):
    """Q(s) = s e^{-i pi/4} / sqrt(2 k_plus); satisfies P^2 + Q^2 = 1."""
    _check_strip(s, wp.k_plus)
    return np.asarray(s, dtype=complex) * np.exp(-0.25j * np.pi) / math.sqrt(2.0 * wp.k_plus)


def zeta_map(s, theta_x: float, wp: WaveProfile):
    """Saddle coordinate: zeta(s) = 2 arcsin(Q(s)) + theta_x.

    Real ``s`` traces the steepest-descent path through ``zeta = theta_x``
    on which the phase satisfies ``i cos(zeta - theta_x) = i - s^2 / k_plus``.
    """
    return 2.0 * np.arcsin(q_of_s(s, wp)) + theta_x


def dzeta_ds(s, wp: WaveProfile):
    """Derivative of the saddle coordinate: sqrt(2/k_plus) e^{-i pi/4} / P(s)."""
    return math.sqrt(2.0 / wp.k_plus) * np.exp(-0.25j * np.pi) / p_of_s(s, wp)


@dataclass(frozen=True)
class SaddleFrame:
    """Geometry of the saddle evaluation for one observation angle.

    Requires the layer ordering ``k_plus > k_minus`` (contrast n < 1) so the
    critical angle ``theta_c = arccos(n)`` exists.  ``s_b`` and ``s_b_star``
    are the images of the two branch points of S(cos(zeta), n) in the saddle
    coordinate; ``sigma1``/``sigma2`` are the corresponding strip half-widths
    within which the transformed integrand is analytic.
    """

    theta_x: float
    wp: WaveProfile
    s_b: complex = field(init=False)
    s_b_star: complex = field(init=False)
    sigma1: float = field(init=False)
    sigma2: float = field(init=False)

    def __post_init__(self):
        if not (self.wp.k_plus > self.wp.k_minus):
            raise DomainError("SaddleFrame requires k_plus > k_minus")
        if not (0.0 < self.theta_x < 0.5 * math.pi):
            raise DomainError("SaddleFrame requires theta_x in (0, pi/2)")
        kp = self.wp.k_plus
        tc = self.theta_c
        root = math.sqrt(2.0 * kp) * np.exp(0.25j * np.pi)
        object.__setattr__(self, "s_b",
                           complex(root * math.sin(0.5 * (tc - self.theta_x))))
        object.__setattr__(self, "s_b_star",
                           complex(root * math.sin(0.5 * (math.pi - tc - self.theta_x))))
        object.__setattr__(self, "sigma1",
                           math.sqrt(kp) * abs(math.sin(0.5 * (tc - self.theta_x))))
        object.__setattr__(self, "sigma2",
                           math.sqrt(kp) * abs(math.sin(0.5 * (math.pi - tc - self.theta_x))))

    @property
    def n(self) -> float:
        return self.wp.contrast

    @property
    def theta_c(self) -> float:
        return math.acos(self.wp.contrast)


def h_factor(theta: float, s, frame: SaddleFrame):
    """Square-root factor H_theta(s) of the branch-point factorization.

    Built from principal roots of three auxiliary factors; products of two
    such factors with explicit sqrt(s - s_b)-type terms reconstruct
    S(cos(zeta(s)), n) on the real line.
    """
    p = p_of_s(s, frame.wp)
    q = q_of_s(s, frame.wp)
    tx = frame.theta_x
    f1 = 1.0 + p * math.cos(0.5 * (theta - tx)) + q * math.sin(0.5 * (theta - tx))
    f2 = p * math.sin(0.5 * (theta + tx)) + q * math.cos(0.5 * (theta + tx))
    f3 = math.cos(0.5 * (theta - tx)) + p
    return np.sqrt(f1) * np.sqrt(f2) / np.sqrt(f3)


# ---------------------------------------------------------------------------
# kernels: the non-phase spectral factors written in the saddle coordinate
# ---------------------------------------------------------------------------

def _kernel_reflected(kp, y1, y2, comp):
    """Reflected-field kernel (source above the interface)."""
    pref = 0.25j / math.pi

    def kern(z, s_val):
        sinz = np.sin(z)
        cosz = np.cos(z)
        base = pref * ((-1j * sinz - s_val) / (-1j * sinz + s_val)) \
            * np.exp(1j * kp * (-y1 * cosz + y2 * sinz))
        if comp == "val":
            return base
        if comp == "d1":
            return base * (-1j * kp * cosz)
        return base * (1j * kp * sinz)

    return kern


def _kernel_transmitted(kp, y1, y2, comp):
    """Transmitted-field kernel (source below the interface)."""
    pref = 0.5 / math.pi

    def kern(z, s_val):
        sinz = np.sin(z)
        cosz = np.cos(z)
        base = pref * sinz * np.exp(-1j * kp * (y1 * cosz + 1j * y2 * s_val)) \
            / (-1j * sinz + s_val)
        if comp == "val":
            return base
        if comp == "d1":
            return base * (-1j * kp * cosz)
        return base * (kp * s_val)

    return kern


# ---------------------------------------------------------------------------
# saddle engine
# ---------------------------------------------------------------------------

def _saddle_core(wp, r, theta_x, kernel, spec: QuadSpec) -> complex:
    """Value of ``int K(zeta; S) exp(i k_plus r cos(zeta - theta_x)) dzeta``
    along the deformed spectral contour.
    """
    kp = wp.k_plus
    n = wp.contrast
    L = min(math.sqrt(_WINDOW_EXPONENT / r), 0.85 * math.sqrt(kp))

    def branch_direct(z):
        return ba._s_cut_v(np.cos(z), n)

    def branch_tilde(z):
        return ba._s_tilde_v(np.cos(z), n)

    def d_integrand(branch):
        def f(s):
            z = zeta_map(s, theta_x, wp)
            return kernel(z, branch(z)) * dzeta_ds(s, wp) * np.exp(-r * s * s)
        return f

    if n >= 1.0:
        # no critical angle in this ordering; the cut-crossing loop terms are
        # exponentially small and are required to be negligible here
        if n > 1.0:
            exponent = kp * r * math.sqrt(n * n - 1.0) * math.sin(theta_x)
            if exponent < _LOOP_NEGLECT_EXPONENT:
                raise HypothesisError(
                    "saddle path for the inverted ordering needs "
                    f"k r sqrt(n^2-1) sin(theta) >= {_LOOP_NEGLECT_EXPONENT:g} "
                    f"(got {exponent:.3g}); use direct quadrature instead")
        f = d_integrand(branch_direct)
        v1, _ = tanh_sinh(f, -L, 0.0, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                          max_level=11)
        v2, _ = tanh_sinh(f, 0.0, L, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                          max_level=11)
        return (v1 + v2) * np.exp(1j * kp * r)

    theta_c = math.acos(n)
    frame = SaddleFrame(theta_x, wp)
    split = float(np.clip(frame.s_b.real, -0.8 * L, 0.8 * L))

    if theta_x > theta_c:
        f = d_integrand(branch_direct)
        v1, _ = tanh_sinh(f, -L, split, rel_tol=spec.rel_tol,
                          abs_tol=spec.abs_tol, max_level=11)
        v2, _ = tanh_sinh(f, split, L, rel_tol=spec.rel_tol,
                          abs_tol=spec.abs_tol, max_level=11)
        return (v1 + v2) * np.exp(1j * kp * r)

    # at or below the critical angle: tilde branch on the descent path plus
    # the branch-cut loop, reduced to a ray leg and a real-axis leg
    f = d_integrand(branch_tilde)
    v1, _ = tanh_sinh(f, -L, split, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                      max_level=11)
    v2, _ = tanh_sinh(f, split, L, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                      max_level=11)
    total = v1 + v2

    def delta_kernel(z):
        st = ba._s_tilde_v(np.cos(z), n)
        return kernel(z, -st) - kernel(z, st)

    t_b = math.sin(0.5 * (theta_c - theta_x))
    ray = math.sqrt(2.0 * kp) * np.exp(0.25j * np.pi)
    if t_b > 0.0:
        phase = 2.0 * kp * r * t_b * t_b

        def leg1(phi):
            t = t_b * np.cos(phi) ** 2
            s = ray * t
            z = zeta_map(s, theta_x, wp)
            jac = -t_b * np.sin(2.0 * phi) * ray
            return delta_kernel(z) * dzeta_ds(s, wp) \
                * np.exp(-2j * kp * r * t * t) * jac

        n0 = max(8, int(phase / 3.0) + 1)
        v, _ = gauss_segment(leg1, 0.0, 0.5 * math.pi, n0=n0,
                             rel_tol=spec.rel_tol, abs_tol=spec.abs_tol)
        total += v

    def leg2(s):
        z = zeta_map(s, theta_x, wp)
        return delta_kernel(z) * dzeta_ds(s, wp) * np.exp(-r * s * s)

    v, _ = tanh_sinh(leg2, 0.0, L, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                     max_level=11)
    total += v
    return total * np.exp(1j * kp * r)


# ---------------------------------------------------------------------------
# symmetry reduction and public evaluators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryMap:
    """Component relabels induced by reducing to the canonical wedge.

    ``flip1``/``flip2`` record whether the corresponding y-gradient component
    changes sign when mapped back.
    """

    flip1: bool = False
    flip2: bool = False

    def apply(self, grad):
        g1, g2 = grad
        return (-g1 if self.flip1 else g1, -g2 if self.flip2 else g2)


def extend_by_symmetry(wp: WaveProfile, x, y):
    """Reduce an arbitrary placement to the wedge theta_x in (0, pi/2], x above.

    Returns (mapped profile, mapped x, mapped y, SymmetryMap).  Uses the
    mirror symmetry in x1 and the half-plane swap G*(x, y) = G(x', y') with
    exchanged wavenumbers.
    """
    x, y = as_point(x), as_point(y)
    flip1 = flip2 = False
    if x.half is Half.LOWER:
        wp = wp.swapped()
        x, y = x.mirrored(), y.mirrored()
        flip2 = True
    if x.x1 < 0.0:
        x = FieldPoint(-x.x1, x.x2)
        y = FieldPoint(-y.x1, y.x2)
        flip1 = True
    return wp, x, y, SymmetryMap(flip1, flip2)


def _check_hypotheses(wp, x, y, theta_x):
    if not (THETA_MARGIN <= theta_x <= math.pi - THETA_MARGIN):
        raise HypothesisError(
            f"observation angle {theta_x:.4g} violates the angular margin "
            f"{THETA_MARGIN:g}")
    n = wp.contrast
    if n < 1.0:
        theta_c = math.acos(n)
        bound = y.r if theta_x >= theta_c else y.r / math.cos(theta_c)
        if x.r <= bound:
            raise HypothesisError(
                "saddle evaluation requires the target well outside the "
                f"source region (|x| = {x.r:.4g} <= bound {bound:.4g})")
    elif x.r <= y.r:
        raise HypothesisError("saddle evaluation requires |x| > |y|")


def g_r_saddle(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Reflected correction by saddle-point quadrature (both points above).

    Requires the ordering k_plus > k_minus and an observation angle inside
    (0, pi/2) up to the angular margin; use extend_by_symmetry to reach this
    wedge from a general placement.
    """
    x, y = as_point(x), as_point(y)
    if not (wp.k_plus > wp.k_minus):
        raise DomainError("g_r_saddle requires k_plus > k_minus")
    if x.half is not Half.UPPER or y.half is not Half.UPPER:
        raise DomainError("g_r_saddle requires both points above the interface")
    theta_x = x.theta
    if not (0.0 < theta_x < 0.5 * math.pi):
        raise HypothesisError("g_r_saddle handles theta_x in (0, pi/2); "
                              "reduce with extend_by_symmetry first")
    _check_hypotheses(wp, x, y, theta_x)
    kern = _kernel_reflected(wp.k_plus, y.x1, y.x2, "val")
    return _saddle_core(wp, x.r, theta_x, kern, spec)


def _saddle_components(wp, x, y, spec, comps):
    """Saddle evaluation of the non-free part of G (and/or grad) at large r."""
    wp, x, y, sym = extend_by_symmetry(wp, x, y)
    theta_x = x.theta
    _check_hypotheses(wp, x, y, theta_x)
    if theta_x >= 0.5 * math.pi:
        # the saddle frame is built for the open quarter-plane; nudge exact
        # pi/2 inward by symmetry (cos theta_x = 0 is regular)
        theta_x = min(theta_x, 0.5 * math.pi - 1e-12)
    if y.half is Half.UPPER:
        if wp.is_uniform:
            # the reflected correction vanishes identically
            return wp, x, y, sym, {comp: 0.0j for comp in comps}
        make = _kernel_reflected
    else:
        make = _kernel_transmitted
    out = {}
    for comp in comps:
        kern = make(wp.k_plus, y.x1, y.x2, comp)
        out[comp] = _saddle_core(wp, x.r, theta_x, kern, spec)
    return wp, x, y, sym, out


def green_saddle(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()) -> complex:
    """Green function at large range via the steepest-descent contour."""
    wp2, x2, y2, _, out = _saddle_components(wp, x, y, spec, ("val",))
    val = out["val"]
    if y2.half is Half.UPPER:
        val = val + free_green(wp2.k_plus, x2, y2)
    return val


def grad_y_green_saddle(wp: WaveProfile, x, y, spec: QuadSpec = QuadSpec()):
    """Source-gradient of the Green function via the steepest-descent contour."""
    wp2, x2, y2, sym, out = _saddle_components(wp, x, y, spec, ("d1", "d2"))
    g = (out["d1"], out["d2"])
    if y2.half is Half.UPPER:
        f = grad_y_free_green(wp2.k_plus, x2, y2)
        g = (g[0] + f[0], g[1] + f[1])
    return sym.apply(g)
