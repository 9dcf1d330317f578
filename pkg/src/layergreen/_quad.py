"""Vectorized quadrature primitives shared by the spectral-integral engines.

All integrands are expected to accept numpy arrays of (complex) abscissae and
return complex arrays, so panel refinement costs one vectorized call per level.
"""

from __future__ import annotations

import numpy as np

from ._errors import ConvergenceError

_GL_ORDER = 12
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
# rescaled to [0, 1]
_GL_T = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


def gauss_segment(f, a, b, n0=6, rel_tol=1e-10, abs_tol=1e-13, max_doublings=11):
    """Adaptive composite Gauss-Legendre on the straight segment a -> b.

    Doubles the panel count until two successive levels agree.  Returns
    (value, error_estimate).
    """
    a = complex(a)
    b = complex(b)
    span = b - a
    if span == 0:
        return 0.0j, 0.0
    n = max(1, int(n0))
    prev = None
    err = np.inf
    for _ in range(max_doublings + 1):
        edges = np.arange(n, dtype=float)[:, None] / n
        t = edges + _GL_T[None, :] / n
        x = a + span * t.ravel()
        w = np.broadcast_to(_GL_W[None, :] / n, t.shape).ravel()
        fx = f(x)
        value = span * np.sum(w * fx)
        # attainable-accuracy floor: summation roundoff scales with L1 mass
        floor = 100.0 * np.finfo(float).eps * abs(span) * np.sum(w * np.abs(fx))
        if prev is not None:
            err = abs(value - prev)
            if err <= max(abs_tol, rel_tol * abs(value), floor):
                return value, err
        prev = value
        n *= 2
    raise ConvergenceError(
        f"Gauss segment failed to converge after {max_doublings} doublings",
        estimate=prev, error=err)


def gauss_path(f, waypoints, n0=6, rel_tol=1e-10, abs_tol=1e-13, max_doublings=11):
    """Sum of adaptive segments along consecutive waypoints."""
    total = 0.0j
    err = 0.0
    for a, b in zip(waypoints[:-1], waypoints[1:]):
        v, e = gauss_segment(f, a, b, n0=n0, rel_tol=rel_tol,
                             abs_tol=abs_tol, max_doublings=max_doublings)
        total += v
        err += e
    return total, err


def decay_tail(f, t0, rel_tol=1e-10, abs_tol=1e-13, n0=6, max_chunks=40):
    """Integral of f over [0, inf) for integrands decaying on scale ~ t0.

    Integrates [0, t0], then geometrically growing chunks until a chunk falls
    below the absolute floor.  Returns (value, error_estimate).
    """
    total, err = gauss_segment(f, 0.0, t0, n0=n0, rel_tol=rel_tol, abs_tol=abs_tol)
    lo = t0
    for _ in range(max_chunks):
        hi = 2.0 * lo
        chunk, e = gauss_segment(f, lo, hi, n0=n0, rel_tol=rel_tol,
                                 abs_tol=max(abs_tol, 0.5 * rel_tol * abs(total)))
        total += chunk
        err += e
        if abs(chunk) < max(abs_tol, 0.25 * rel_tol * abs(total)):
            return total, err
        lo = hi
    raise ConvergenceError("tail integral did not decay within chunk budget",
                           estimate=total, error=abs(chunk))


def tanh_sinh(f, a, b, rel_tol=1e-11, abs_tol=1e-14, max_level=10):
    """Tanh-sinh quadrature on (a, b); robust to endpoint square-root behavior."""
    a = complex(a)
    b = complex(b)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    tmax = 3.2
    prev = None
    for level in range(2, max_level + 1):
        h = tmax / 2 ** level
        t = np.arange(-2 ** level, 2 ** level + 1) * h
        u = 0.5 * np.pi * np.sinh(t)
        x = mid + half * np.tanh(u)
        w = h * 0.5 * np.pi * np.cosh(t) / np.cosh(u) ** 2
        # nodes whose abscissa rounds onto an endpoint carry negligible
        # weight but would evaluate f at an integrable singularity
        keep = (x != a) & (x != b)
        value = half * np.sum(w[keep] * f(x[keep]))
        if prev is not None:
            err = abs(value - prev)
            if err <= max(abs_tol, rel_tol * abs(value)):
                return value, err
        prev = value
    return value, abs(value - prev)
