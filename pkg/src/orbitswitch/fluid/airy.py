"""Airy potential of the viscous stress and its finite-difference checks.

The stress is generated by ``A = 2 theta (r^2 - k)`` through

    s11 = -A_yy,   s22 = -A_xx,   s12 = A_xy,

which is in equilibrium for any smooth ``A``.  ``A`` is the imaginary part of
``(z zbar - k) log(z / zbar)``.

Nested difference quotients lose most of double precision, so the potential
is evaluated in extended precision (mpmath) inside the stencils and only the
final residual is rounded to float.
"""
from __future__ import annotations

import math
from typing import Tuple

import mpmath

from ..dynamics import SINGULAR_TOL, SingularityError
from ..numdiff import FIRST_STEP, SECOND_STEP, d1, hessian
from .fields import Region, strain_rate

WORKING_DPS = 32


def _check(x, y):
    if math.hypot(x, y) < SINGULAR_TOL:
        raise SingularityError(x, y, "Airy potential")
    if not x > 0:
        raise ValueError(f"the Airy potential is used for x > 0, got x={x!r}")


def airy_value(x: float, y: float, k: float = 0.0) -> float:
    _check(x, y)
    return 2.0 * math.atan2(y, x) * (x * x + y * y - k)


def _airy_mp(x, y, k):
    return 2 * mpmath.atan2(y, x) * (x * x + y * y - k)


def _hessian_mp(x, y, k, h):
    return hessian(lambda a, b: _airy_mp(a, b, k), x, y, h)


def airy_hessian(x: float, y: float, k: float = 0.0,
                 h: float = SECOND_STEP) -> Tuple[float, float, float]:
    """``(A_xx, A_yy, A_xy)`` by fourth-order central differences."""
    _check(x, y)
    with mpmath.workdps(WORKING_DPS):
        vals = _hessian_mp(mpmath.mpf(x), mpmath.mpf(y), mpmath.mpf(k), mpmath.mpf(h))
        return tuple(float(v) for v in vals)


def airy_stresses(x: float, y: float, k: float = 0.0,
                  h: float = SECOND_STEP) -> Tuple[float, float, float]:
    """Viscous ``(s11, s12, s22)`` from second differences of the potential."""
    axx, ayy, axy = airy_hessian(x, y, k, h)
    return -ayy, axy, -axx


def airy_equilibrium_residual(x: float, y: float, k: float = 0.0,
                              h: float = SECOND_STEP, h_outer: float = FIRST_STEP) -> float:
    """``max(|d1 s11 + d2 s12|, |d1 s12 + d2 s22|)`` with all derivatives by differences."""
    _check(x, y)
    with mpmath.workdps(WORKING_DPS):
        X, Y, K, hh, H = (mpmath.mpf(v) for v in (x, y, k, h, h_outer))

        def stress(a, b, i):
            axx, ayy, axy = _hessian_mp(a, b, K, hh)
            return (-ayy, axy, -axx)[i]

        r1 = (d1(lambda s: stress(s, Y, 0), X, H, order=2)
              + d1(lambda s: stress(X, s, 1), Y, H, order=2))
        r2 = (d1(lambda s: stress(s, Y, 1), X, H, order=2)
              + d1(lambda s: stress(X, s, 2), Y, H, order=2))
        return float(max(abs(r1), abs(r2)))


def airy_lambda(x: float, y: float) -> float:
    """``(e11 - e22) / e12``, equal to ``-2 tan(2 theta)``."""
    e11, e22, e12 = strain_rate(x, y, Region.OMEGA1)
    if abs(e12) < SINGULAR_TOL:
        raise ValueError("coefficient is singular where cos(2 theta) = 0")
    return (e11 - e22) / e12


def airy_pde_residual(x: float, y: float, k: float = 0.0, h: float = SECOND_STEP) -> float:
    """``|A_xx - A_yy - Lambda A_xy|``: the viscosity-free equation for the potential."""
    lam = airy_lambda(x, y)
    axx, ayy, axy = airy_hessian(x, y, k, h)
    return abs(axx - ayy - lam * axy)
