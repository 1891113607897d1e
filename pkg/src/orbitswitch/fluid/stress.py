"""Viscosities and stresses that turn the Euler flow into a Navier-Stokes flow.

With the position-dependent viscosities

    mu     = 4 (r^2 + k) cos^2(theta) / r^2
    lambda = -4 theta cot(theta) - mu

the viscous stress of the Omega1 velocity field is divergence free, so the
Navier-Stokes momentum balance collapses to the Euler one.  ``k`` is a free
real parameter; ``k = 0`` is the canonical choice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..dynamics import SINGULAR_TOL, SingularityError
from ..numdiff import partial_x, partial_y
from .fields import Region, _resolve, convective_flux_divergence, euler_fields, \
    euler_momentum_residual, strain_rate


@dataclass(frozen=True)
class Viscosities:
    mu: float
    lam: float
    k: float

    @property
    def bulk_combination(self) -> float:
        """``lambda + 2 mu``; reported only, its sign is not constrained."""
        return self.lam + 2.0 * self.mu


@dataclass(frozen=True)
class StressTensor:
    S11: float
    S12: float
    S22: float
    s11: float
    s12: float
    s22: float


def _polar(x, y):
    r = math.hypot(x, y)
    if r < SINGULAR_TOL:
        raise SingularityError(x, y, "polar angle")
    if not x > 0:
        raise ValueError(f"viscosities are defined for x > 0, got x={x!r}")
    return r, math.atan2(y, x)


def theta_cot_theta(theta: float) -> float:
    if abs(theta) < 1e-8:
        return 1.0 - theta * theta / 3.0
    return theta / math.tan(theta)


def viscosities(x: float, y: float, k: float = 0.0) -> Viscosities:
    r, theta = _polar(x, y)
    q = (r * r + k) / (r * r)
    mu = 4.0 * q * math.cos(theta) ** 2
    return Viscosities(mu, -4.0 * theta_cot_theta(theta) - mu, k)


def closed_form_stress(x: float, y: float, k: float = 0.0) -> Tuple[float, float, float]:
    """Viscous ``(s11, s12, s22)`` from the polar formulas."""
    r, theta = _polar(x, y)
    q = (r * r + k) / (r * r)
    s2t = math.sin(2.0 * theta)
    return (-2.0 * (2.0 * theta + q * s2t),
            2.0 * q * math.cos(2.0 * theta),
            2.0 * (-2.0 * theta + q * s2t))


def constitutive_stress(x: float, y: float, k: float = 0.0) -> Tuple[float, float, float]:
    """Viscous ``(s11, s12, s22)`` from ``lambda tr(e) I + 2 mu e``."""
    e11, e22, e12 = strain_rate(x, y, Region.OMEGA1)
    vis = viscosities(x, y, k)
    tr = e11 + e22
    return (vis.lam * tr + 2.0 * vis.mu * e11,
            2.0 * vis.mu * e12,
            vis.lam * tr + 2.0 * vis.mu * e22)


def ns_stress(x: float, y: float, k: float = 0.0,
              region: Optional[Region] = None) -> StressTensor:
    """Total stress ``-p I + sigma``; the viscous part vanishes in Omega2."""
    region = _resolve(x, y, region)
    p = euler_fields(x, y, region).p
    if region is Region.OMEGA2:
        s11 = s12 = s22 = 0.0
    else:
        s11, s12, s22 = constitutive_stress(x, y, k)
    return StressTensor(s11 - p, s12, s22 - p, s11, s12, s22)


def _total_closed(x, y, k):
    s11, s12, s22 = closed_form_stress(x, y, k)
    p = euler_fields(x, y, Region.OMEGA1).p
    return s11 - p, s12, s22 - p


def ns_momentum_residual(x: float, y: float, k: float = 0.0,
                         region: Optional[Region] = None,
                         h: float = 1e-5) -> Tuple[float, float]:
    """Convective flux divergence minus the divergence of the total stress.

    Stress derivatives are central differences of the closed-form stresses.
    In Omega2 the viscous stress is zero and the balance is the Euler one.
    """
    region = _resolve(x, y, region)
    if region is Region.OMEGA2:
        return euler_momentum_residual(x, y, region)
    cx, cy = convective_flux_divergence(x, y)

    def comp(i):
        return lambda a, b: _total_closed(a, b, k)[i]

    div_x = partial_x(comp(0), x, y, h) + partial_y(comp(1), x, y, h)
    div_y = partial_x(comp(1), x, y, h) + partial_y(comp(2), x, y, h)
    return cx - div_x, cy - div_y


def fundamental_quotients(x: float, y: float, k: float = 0.0) -> Tuple[float, float]:
    """``(s11 - s22)/(e11 - e22)`` and ``s12/e12``; both equal ``2 mu``."""
    e11, e22, e12 = strain_rate(x, y, Region.OMEGA1)
    if abs(e12) < SINGULAR_TOL:
        raise ValueError("shear strain rate vanishes (theta = +-pi/4)")
    if abs(e11 - e22) < SINGULAR_TOL:
        raise ValueError("normal strain rates coincide (theta = 0)")
    s11, s12, s22 = closed_form_stress(x, y, k)
    return (s11 - s22) / (e11 - e22), s12 / e12


def fundamental_relation_check(x: float, y: float, k: float = 0.0) -> float:
    a, b = fundamental_quotients(x, y, k)
    return abs(a - b)


def trace_gap(x: float, y: float, k: float = 0.0) -> float:
    """``|s11 + s22 - 2 (lambda + mu)(e11 + e22)|`` with closed-form stresses."""
    e11, e22, _ = strain_rate(x, y, Region.OMEGA1)
    s11, _, s22 = closed_form_stress(x, y, k)
    vis = viscosities(x, y, k)
    return abs(s11 + s22 - 2.0 * (vis.lam + vis.mu) * (e11 + e22))
