"""Right-hand sides, entropy and closed-form orbits of the switching oscillator.

The oscillator

    x' = y,    y' = (y^2 - x^2) / (2x)

conserves the entropy ``H = (x^2 + y^2) / (2x)``; its orbits are the circles
``(x - c)^2 + y^2 = c^2`` that all touch at the origin.  Inside the unit disc
about ``(1, 0)`` the modified system replaces the second equation by
``y' = 1 - x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

SINGULAR_TOL = 1e-12


class SingularityError(ArithmeticError):
    """Raised when a formula is evaluated on the line x = 0 where it blows up."""

    def __init__(self, x, y=None, what="expression"):
        self.x = x
        self.y = y
        where = f"x={x!r}" if y is None else f"(x, y)=({x!r}, {y!r})"
        super().__init__(f"{what} is singular at {where}")


@dataclass(frozen=True)
class State:
    x: float
    y: float
    t: float = 0.0

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class OrbitParams:
    """Circle ``(x - c0)^2 + y^2 = c0^2`` plus the phase of the starting point."""

    c0: float
    theta0: float


@dataclass(frozen=True)
class PolarState:
    r: float
    theta: float


@dataclass(frozen=True)
class ControlChoice:
    """Scalar control ``w(x, y)`` of the family ``x' = 2xyw, y' = (y^2 - x^2)w``."""

    kind: str
    alpha: float = 1.0
    func: Optional[Callable[[float, float], float]] = None

    def __post_init__(self):
        if self.kind not in ("dafermos", "hamiltonian", "power", "custom"):
            raise ValueError(f"unknown control kind {self.kind!r}")
        if self.kind == "power" and not self.alpha > 0:
            raise ValueError("power control requires alpha > 0")
        if self.kind == "custom" and self.func is None:
            raise ValueError("custom control needs an evaluator")

    @classmethod
    def dafermos(cls):
        return cls("dafermos")

    @classmethod
    def hamiltonian(cls):
        return cls("hamiltonian")

    @classmethod
    def power(cls, alpha):
        return cls("power", alpha=alpha)

    def __call__(self, x, y):
        if self.kind == "custom":
            return self.func(x, y)
        _guard(x, y, "control")
        if self.kind == "dafermos":
            return 1.0 / (2.0 * x)
        if self.kind == "hamiltonian":
            return 1.0 / (2.0 * x * x)
        return x ** (-self.alpha)


def _guard(x, y=None, what="expression"):
    if np.any(np.abs(x) < SINGULAR_TOL):
        raise SingularityError(x, y, what)


def entropy(x, y):
    """``H(x, y) = (x^2 + y^2) / (2x)``; accepts scalars or arrays."""
    _guard(x, y, "entropy")
    return (x * x + y * y) / (2.0 * x)


def entropy_gradient(x, y):
    _guard(x, y, "entropy gradient")
    return (x * x - y * y) / (2.0 * x * x), y / x


def outer_branch(x, y):
    """True on and outside the unit circle about (1, 0)."""
    return (x - 1.0) ** 2 + y * y >= 1.0


def rhs_dafermos(x, y) -> Tuple[float, float]:
    _guard(x, y, "oscillator right-hand side")
    return y, (y * y - x * x) / (2.0 * x)


def _g(x, y):
    if outer_branch(x, y):
        _guard(x, y, "outer-branch right-hand side")
        return (y * y - x * x) / (2.0 * x)
    return 1.0 - x


def rhs_modified(x, y) -> Tuple[float, float]:
    return y, _g(x, y)


def rhs_friction(x, y, gamma) -> Tuple[float, float]:
    if gamma < 0:
        raise ValueError("friction coefficient must be non-negative")
    return y, _g(x, y) - gamma * y


def rhs_control(x, y, w) -> Tuple[float, float]:
    return 2.0 * x * y * w, (y * y - x * x) * w


def orbit_params_from_initial(x0, y0) -> OrbitParams:
    if not x0 > 0:
        raise ValueError(f"initial abscissa must be positive, got {x0!r}")
    c0 = entropy(x0, y0)
    return OrbitParams(c0, math.atan2(y0, x0 - c0))


def closed_form_state(t, params: OrbitParams) -> State:
    phase = -t + params.theta0
    c0 = params.c0
    return State(c0 + c0 * math.cos(phase), c0 * math.sin(phase), t)


def closed_form_velocity(t, params: OrbitParams) -> Tuple[float, float]:
    phase = -t + params.theta0
    return params.c0 * math.sin(phase), -params.c0 * math.cos(phase)


def closed_form_ab(t, x0, y0) -> State:
    """Same orbit written as ``x - c0 = A cos t + B sin t`` with A = x0 - c0, B = y0."""
    c0 = entropy(x0, y0)
    a, b = x0 - c0, y0
    return State(c0 + a * math.cos(t) + b * math.sin(t),
                 -a * math.sin(t) + b * math.cos(t), t)


def to_polar(x, y) -> PolarState:
    return PolarState(math.hypot(x, y), math.atan2(y, x))


def polar_rhs(state: PolarState) -> Tuple[float, float]:
    """Returns ``(dtheta, dr)``; the angle rotates at the constant rate -1/2."""
    c = math.cos(state.theta)
    if abs(c) < SINGULAR_TOL:
        raise SingularityError(0.0, what="polar right-hand side")
    return -0.5, 0.5 * state.r * math.tan(state.theta)


def polar_closed_form(t, x0, y0) -> PolarState:
    """Polar solution: theta = theta(0) - t/2 and r = 2 c0 cos(theta)."""
    c0 = entropy(x0, y0)
    theta = math.atan2(y0, x0) - 0.5 * t
    return PolarState(2.0 * c0 * math.cos(theta), theta)


def energy_eta(x, y, w, rho):
    """Kinetic energy density ``(rho/2)(x'^2 + y'^2)`` along the control system."""
    dx, dy = rhs_control(x, y, w)
    return 0.5 * rho * (dx * dx + dy * dy)


def energy_eta_from_entropy(x, y, w, rho):
    return 2.0 * x * x * w * w * rho * entropy(x, y) ** 2
