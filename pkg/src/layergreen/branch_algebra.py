"""Sheeted complex square roots and powers.

Four branch conventions are used throughout the layered-medium kernels:

* ``principal_power(z, beta)`` -- the principal power ``|z|^beta * exp(i*beta*t0)``
  with ``t0 in (-pi, pi)``, cut along the nonpositive real axis.
* ``s1(z)`` -- half-angle square root with angle ``t1 in (-3*pi/2, pi/2)``,
  cut along the nonnegative imaginary axis.
* ``s2(z)`` -- half-angle square root with angle ``t2 in (-pi/2, 3*pi/2)``,
  cut along the nonpositive imaginary axis.
* ``s_cut(z, a) = s1(z - a) * s2(z + a)`` and
  ``s_tilde(z, a) = s2(z - a) * s2(z + a)`` -- the two sheeted versions of
  ``sqrt(z**2 - a**2)`` used by the spectral integrals.

On the real line ``s_cut`` has nonnegative real part and nonpositive imaginary
part (decaying, outgoing spectral factors), is even, and vanishes at ``z = +-a``.
``s_cut`` is discontinuous across the vertical half-line ``Re z = a, Im z >= 0``;
``s_limit`` returns its one-sided limits there, which satisfy

    limit from the right = -(limit from the left) = s_tilde(z, a).

Inputs within ``CUT_TOL`` (relative) of a cut raise :class:`BranchCutError`
instead of silently selecting a sheet; callers that need a definite side use
``s_limit``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from ._errors import BranchCutError, DomainError

__all__ = [
    "BranchSide",
    "CUT_TOL",
    "principal_power",
    "s1",
    "s2",
    "s_cut",
    "s_tilde",
    "s_limit",
]

CUT_TOL = 1e-13

_HALF_PI = math.pi / 2.0
_TWO_PI = 2.0 * math.pi


class BranchSide(enum.Enum):
    """Limit direction toward the vertical half-line ``Re z = a, Im z >= 0``."""

    FROM_RIGHT = "from_right"
    FROM_LEFT = "from_left"


def _cut_scale(z: complex) -> float:
    return max(1.0, abs(z))


def principal_power(z: complex, beta: float) -> complex:
    """Principal power ``z**beta`` with the cut on the nonpositive real axis."""
    z = complex(z)
    if z == 0:
        if beta > 0:
            return 0.0 + 0.0j
        raise DomainError("z = 0 requires beta > 0 for z**beta")
    if z.real <= 0 and abs(z.imag) < CUT_TOL * _cut_scale(z):
        raise BranchCutError(f"z = {z} lies on the nonpositive real axis")
    theta0 = math.atan2(z.imag, z.real)
    return complex(abs(z)) ** beta * complex(math.cos(beta * theta0), math.sin(beta * theta0))


def _s1_angle(z: complex) -> float:
    theta = math.atan2(z.imag, z.real)
    if theta > _HALF_PI:
        theta -= _TWO_PI
    return theta


def _s2_angle(z: complex) -> float:
    theta = math.atan2(z.imag, z.real)
    if theta < -_HALF_PI:
        theta += _TWO_PI
    return theta


def s1(z: complex) -> complex:
    """Square root with half-angle taken in ``(-3*pi/4, pi/4)``.

    Cut along ``{Re z = 0, Im z >= 0, z != 0}``; ``s1(0) = 0``.
    """
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    if z.imag > CUT_TOL * _cut_scale(z) and abs(z.real) < CUT_TOL * _cut_scale(z):
        raise BranchCutError(f"z = {z} lies on the upward branch cut of s1")
    half = 0.5 * _s1_angle(z)
    return math.sqrt(abs(z)) * complex(math.cos(half), math.sin(half))


def s2(z: complex) -> complex:
    """Square root with half-angle taken in ``(-pi/4, 3*pi/4)``.

    Cut along ``{Re z = 0, Im z <= 0, z != 0}``; ``s2(0) = 0``.
    """
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    if z.imag < -CUT_TOL * _cut_scale(z) and abs(z.real) < CUT_TOL * _cut_scale(z):
        raise BranchCutError(f"z = {z} lies on the downward branch cut of s2")
    half = 0.5 * _s2_angle(z)
    return math.sqrt(abs(z)) * complex(math.cos(half), math.sin(half))


def s_cut(z: complex, a: float) -> complex:
    """Sheeted ``sqrt(z**2 - a**2)`` with nonpositive imaginary part on the real line."""
    if a <= 0:
        raise DomainError("a must be positive")
    z = complex(z)
    return s1(z - a) * s2(z + a)


def s_tilde(z: complex, a: float) -> complex:
    """Companion sheet of ``sqrt(z**2 - a**2)`` built from two s2 factors."""
    if a <= 0:
        raise DomainError("a must be positive")
    z = complex(z)
    return s2(z - a) * s2(z + a)


def s_limit(z: complex, a: float, side: BranchSide) -> complex:
    """One-sided limit of ``s_cut`` on the half-line ``Re z = a, Im z >= 0``.

    The limit from the right equals ``s_tilde(z, a)`` and the limit from the
    left equals ``-s_tilde(z, a)``.
    """
    if a <= 0:
        raise DomainError("a must be positive")
    z = complex(z)
    if abs(z.real - a) > CUT_TOL * max(1.0, a) or z.imag < 0:
        raise DomainError(f"z = {z} is not on the half-line Re z = {a}, Im z >= 0")
    t = z.imag
    if t == 0:
        return 0.0 + 0.0j
    value = s2(1j * t) * s2(2.0 * a + 1j * t)
    if side is BranchSide.FROM_LEFT:
        return -value
    return value


# ---------------------------------------------------------------------------
# Vectorized, guard-free kernels for quadrature engines.  The contours used by
# the integrators stay off the cuts by construction, so the elementwise angle
# remapping below is safe there.
# ---------------------------------------------------------------------------


def _s1v(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    theta = np.arctan2(z.imag, z.real)
    theta = np.where(theta > _HALF_PI, theta - _TWO_PI, theta)
    return np.sqrt(np.abs(z)) * np.exp(0.5j * theta)


def _s2v(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    theta = np.arctan2(z.imag, z.real)
    theta = np.where(theta < -_HALF_PI, theta + _TWO_PI, theta)
    return np.sqrt(np.abs(z)) * np.exp(0.5j * theta)


def _s_cut_v(z: np.ndarray, a: float) -> np.ndarray:
    return _s1v(np.asarray(z, dtype=complex) - a) * _s2v(np.asarray(z, dtype=complex) + a)


def _s_tilde_v(z: np.ndarray, a: float) -> np.ndarray:
    return _s2v(np.asarray(z, dtype=complex) - a) * _s2v(np.asarray(z, dtype=complex) + a)
