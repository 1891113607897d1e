"""Steady plane flow whose particle paths are the oscillator orbits.

Outside the unit disc about (1, 0) (region Omega1) the flow is compressible
with density 1/x and pressure H - 1; inside the disc (Omega2) it is a rigid
rotation with unit density.  Both satisfy the steady Euler equations.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..dynamics import SINGULAR_TOL, SingularityError
from ..numdiff import partial_x, partial_y


class Region(str, enum.Enum):
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class FlowFields:
    u: float
    v: float
    rho: float
    p: float
    region: Region


def region_of(x: float, y: float, R: float = 2.0) -> Region:
    if not R > 1:
        raise ValueError(f"outer radius must exceed 1, got {R!r}")
    if (x - 1.0) ** 2 + y * y < 1.0:
        return Region.OMEGA2
    if (x - R) ** 2 + y * y <= R * R:
        return Region.OMEGA1
    return Region.OUTSIDE


def _resolve(x, y, region):
    if region is None:
        region = Region.OMEGA2 if (x - 1.0) ** 2 + y * y < 1.0 else Region.OMEGA1
    region = Region(region)
    if region is Region.OUTSIDE:
        raise ValueError(f"({x!r}, {y!r}) lies outside the flow domain")
    if region is Region.OMEGA1:
        if abs(x) < SINGULAR_TOL:
            raise SingularityError(x, y, "Omega1 flow field")
        if x < 0:
            raise ValueError(f"Omega1 formulas need x > 0, got x={x!r}")
    return region


def euler_fields(x: float, y: float, region: Optional[Region] = None) -> FlowFields:
    region = _resolve(x, y, region)
    if region is Region.OMEGA1:
        H = (x * x + y * y) / (2.0 * x)
        return FlowFields(y, (y * y - x * x) / (2.0 * x), 1.0 / x, H - 1.0, region)
    return FlowFields(y, 1.0 - x, 1.0, (x * x + y * y - 2.0 * x) / 2.0, region)


def pressure(x: float, y: float, region: Optional[Region] = None) -> float:
    return euler_fields(x, y, region).p


def fluxes(x: float, y: float, region: Optional[Region] = None):
    """``(rho u, rho v, rho u^2, rho u v, rho v^2, p)`` at a point."""
    f = euler_fields(x, y, region)
    ru, rv = f.rho * f.u, f.rho * f.v
    return ru, rv, ru * f.u, ru * f.v, rv * f.v, f.p


def divergence(x: float, y: float, region: Optional[Region] = None) -> float:
    region = _resolve(x, y, region)
    return y / x if region is Region.OMEGA1 else 0.0


def continuity_residual(x: float, y: float, region: Optional[Region] = None) -> float:
    """``d(rho u)/dx + d(rho v)/dy`` from hand-derived derivatives."""
    region = _resolve(x, y, region)
    if region is Region.OMEGA2:
        return 0.0
    x2 = x * x
    d_rho_u_dx = -y / x2
    d_rho_v_dy = y / x2
    return d_rho_u_dx + d_rho_v_dy


def euler_momentum_residual(x: float, y: float,
                            region: Optional[Region] = None) -> Tuple[float, float]:
    region = _resolve(x, y, region)
    if region is Region.OMEGA2:
        rx = 0.0 + (1.0 - x) + (x - 1.0)
        ry = -y + 0.0 + y
        return rx, ry
    x2, x3, y2 = x * x, x * x * x, y * y
    # x-momentum: d(rho u^2)/dx + d(rho u v)/dy + dp/dx
    rx = -y2 / x2 + (1.5 * y2 / x2 - 0.5) + (0.5 - y2 / (2.0 * x2))
    # y-momentum: d(rho u v)/dx + d(rho v^2)/dy + dp/dy
    ry = -y2 * y / x3 + (y2 * y / x3 - y / x) + y / x
    return rx, ry


def continuity_residual_fd(x: float, y: float, region: Optional[Region] = None,
                           h: float = 1e-5) -> float:
    region = _resolve(x, y, region)
    return (partial_x(lambda a, b: fluxes(a, b, region)[0], x, y, h)
            + partial_y(lambda a, b: fluxes(a, b, region)[1], x, y, h))


def euler_momentum_residual_fd(x: float, y: float, region: Optional[Region] = None,
                               h: float = 1e-5) -> Tuple[float, float]:
    region = _resolve(x, y, region)

    def comp(i):
        return lambda a, b: fluxes(a, b, region)[i]

    rx = partial_x(comp(2), x, y, h) + partial_y(comp(3), x, y, h) + partial_x(comp(5), x, y, h)
    ry = partial_x(comp(3), x, y, h) + partial_y(comp(4), x, y, h) + partial_y(comp(5), x, y, h)
    return rx, ry


def convective_flux_divergence(x: float, y: float) -> Tuple[float, float]:
    """Analytic ``div(rho u (x) u)`` in Omega1."""
    _resolve(x, y, Region.OMEGA1)
    x2, x3, y2 = x * x, x * x * x, y * y
    return -y2 / x2 + 1.5 * y2 / x2 - 0.5, -y2 * y / x3 + y2 * y / x3 - y / x


def _circle_point(phi: float, which: str, R: float):
    if which == "inner":
        return 1.0 + math.cos(phi), math.sin(phi)
    if which == "outer":
        if not R > 1:
            raise ValueError(f"outer radius must exceed 1, got {R!r}")
        return R + R * math.cos(phi), R * math.sin(phi)
    raise ValueError(f"boundary must be 'inner' or 'outer', got {which!r}")


def _check_not_origin(x, y):
    if math.hypot(x, y) < 1e-9:
        raise ValueError("the origin is excluded from the boundary")


def boundary_normal_flux(phi: float, which: str = "inner", R: float = 2.0) -> float:
    """``u . n`` at the boundary point of angle ``phi`` (phi = pi is the origin)."""
    x, y = _circle_point(phi, which, R)
    _check_not_origin(x, y)
    f = euler_fields(x, y, Region.OMEGA1)
    return f.u * math.cos(phi) + f.v * math.sin(phi)


def rankine_hugoniot_check(phi: float) -> Tuple[float, float]:
    """Pressure jump and normal mass-flux jump across the unit circle about (1, 0)."""
    x, y = _circle_point(phi, "inner", 2.0)
    _check_not_origin(x, y)
    n1, n2 = math.cos(phi), math.sin(phi)
    out = euler_fields(x, y, Region.OMEGA1)
    inn = euler_fields(x, y, Region.OMEGA2)
    m_out = out.rho * (out.u * n1 + out.v * n2)
    m_in = inn.rho * (inn.u * n1 + inn.v * n2)
    return out.p - inn.p, m_out - m_in


def strain_rate(x: float, y: float, region: Optional[Region] = None) -> Tuple[float, float, float]:
    """``(e11, e22, e12)`` of the velocity field."""
    region = _resolve(x, y, region)
    if region is Region.OMEGA2:
        return 0.0, 0.0, 0.0
    x2 = x * x
    return 0.0, y / x, (x2 - y * y) / (4.0 * x2)
