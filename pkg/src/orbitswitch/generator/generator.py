"""Flows built from a conserved function ``G`` and a weight ``w``.

The velocity ``(G_y w, -G_x w)`` is tangent to the level sets of ``G`` and the
density ``D / w`` makes the mass flux ``D (G_y, -G_x)``, which is divergence
free whenever the mixed partials of ``G`` agree.  The pressure is recovered
afterwards by integrating the momentum balance along a path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from .diff import differentiate
from .expr import BinOp, Expr, Neg, Num
from .parser import parse_expression

PRESSURE_BASE = (1.0, 1.0)
GAUSS_NODES = 8


class ZeroWeightError(ZeroDivisionError):
    """The weight vanishes, so the density ``D / w`` is undefined."""


class InconsistentPressureError(ArithmeticError):
    """The pressure gradient has a non-zero loop integral on a closed path."""

    def __init__(self, loop_value: float, tol: float):
        self.loop_value = loop_value
        super().__init__(f"loop integral {loop_value!r} exceeds {tol!r}: "
                         "no single-valued pressure on this loop")


def _tree(e: Union[str, Expr]) -> Expr:
    return parse_expression(e) if isinstance(e, str) else e


@dataclass(frozen=True)
class GeneratorSpec:
    G: Expr
    w: Expr
    D: float = 1.0
    _derived: Dict[str, Expr] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "G", _tree(self.G))
        object.__setattr__(self, "w", _tree(self.w))
        if not (self.D > 0 and math.isfinite(self.D)):
            raise ValueError(f"density constant must be positive, got {self.D!r}")
        G, w, D = self.G, self.w, Num(float(self.D))
        Gx, Gy = differentiate(G, "x"), differentiate(G, "y")
        u = BinOp("*", Gy, w)
        v = Neg(BinOp("*", Gx, w))
        rho = BinOp("/", D, w)
        mu, mv = BinOp("*", rho, u), BinOp("*", rho, v)
        muu, muv, mvv = BinOp("*", mu, u), BinOp("*", mu, v), BinOp("*", mv, v)
        object.__setattr__(self, "_derived", {
            "Gx": Gx, "Gy": Gy, "u": u, "v": v, "rho": rho,
            "continuity": BinOp("+", differentiate(mu, "x"), differentiate(mv, "y")),
            "px": Neg(BinOp("+", differentiate(muu, "x"), differentiate(muv, "y"))),
            "py": Neg(BinOp("+", differentiate(muv, "x"), differentiate(mvv, "y"))),
        })

    @classmethod
    def from_strings(cls, G: str, w: str, D: float = 1.0) -> "GeneratorSpec":
        return cls(parse_expression(G), parse_expression(w), D)

    def derived(self, name: str) -> Expr:
        return self._derived[name]

    def gradient(self, x, y):
        return self._derived["Gx"](x, y), self._derived["Gy"](x, y)

    def pressure_gradient(self, x, y):
        return self._derived["px"](x, y), self._derived["py"](x, y)


def catalog(alpha: float = 0.5) -> Dict[str, GeneratorSpec]:
    """Named specs; ``alpha`` sets the exponent of the power weight."""
    H = "(x^2+y^2)/(2*x)"
    return {
        "dafermos": GeneratorSpec.from_strings(H, "x"),
        "power": GeneratorSpec.from_strings(H, f"x^{alpha!r}"),
        "hamiltonian": GeneratorSpec.from_strings(H, "1/(2*x^2)"),
        "rigid": GeneratorSpec.from_strings("(x^2+y^2)/2", "1"),
    }


def velocity_from_generator(spec: GeneratorSpec, x, y) -> Tuple[float, float]:
    return spec.derived("u")(x, y), spec.derived("v")(x, y)


def density_from_generator(spec: GeneratorSpec, x, y):
    w = spec.w(x, y)
    if np.any(np.asarray(w) == 0):
        raise ZeroWeightError(f"weight vanishes at ({x!r}, {y!r})")
    return spec.D / w


def conservation_residual(spec: GeneratorSpec, x, y):
    """``grad G . (u, v)``, zero by construction."""
    gx, gy = spec.gradient(x, y)
    u, v = velocity_from_generator(spec, x, y)
    return gx * u + gy * v


def continuity_residual_generic(spec: GeneratorSpec, x, y):
    """``d(rho u)/dx + d(rho v)/dy`` from symbolic derivatives."""
    return spec.derived("continuity")(x, y)


def _segment_integral(spec, a, b, nodes, weights):
    (x0, y0), (x1, y1) = a, b
    dx, dy = x1 - x0, y1 - y0
    s = 0.5 * (nodes + 1.0)
    px, py = spec.pressure_gradient(x0 + s * dx, y0 + s * dy)
    return 0.5 * float(np.dot(weights, px * dx + py * dy))


def _line_integrals(spec, pts, n_nodes):
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    return [_segment_integral(spec, pts[i], pts[i + 1], nodes, weights)
            for i in range(len(pts) - 1)]


def loop_integral(spec: GeneratorSpec, loop: Sequence[Tuple[float, float]],
                  n_nodes: int = GAUSS_NODES) -> float:
    """Integral of the pressure gradient around a polygon (closed automatically)."""
    pts = [tuple(map(float, p)) for p in loop]
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    return float(math.fsum(_line_integrals(spec, pts, n_nodes)))


def pressure_semi_inverse(spec: GeneratorSpec, path: Sequence[Tuple[float, float]],
                          base: Tuple[float, float] = PRESSURE_BASE,
                          loop_tol: float = 1e-8, n_nodes: int = GAUSS_NODES) -> np.ndarray:
    """Pressure at each path point, normalised to zero at ``base``.

    The first path point is joined to ``base`` by a straight segment.  When
    the path is closed, a non-zero loop integral raises
    :class:`InconsistentPressureError`.
    """
    pts = [tuple(map(float, p)) for p in path]
    if not pts:
        raise ValueError("empty path")
    lead = _line_integrals(spec, [tuple(map(float, base)), pts[0]], n_nodes)[0]
    incr = _line_integrals(spec, pts, n_nodes)
    p = lead + np.concatenate([[0.0], np.cumsum(incr)])
    if len(pts) > 2 and math.hypot(pts[0][0] - pts[-1][0], pts[0][1] - pts[-1][1]) < 1e-12:
        gap = float(math.fsum(incr))
        if abs(gap) > loop_tol:
            raise InconsistentPressureError(gap, loop_tol)
    return p


def density_integral(spec: GeneratorSpec, R: float = 2.0, n: int = 400, m: int = 16) -> float:
    """Integral of ``D / w`` over the disc ``(x - R)^2 + y^2 <= R^2``.

    Midpoint rule in x (which never samples the singular edge x = 0) and
    Gauss-Legendre across each vertical chord.
    """
    if not R > 0:
        raise ValueError("radius must be positive")
    hx = 2.0 * R / n
    xs = (np.arange(n) + 0.5) * hx
    half = np.sqrt(xs * (2.0 * R - xs))
    nodes, weights = np.polynomial.legendre.leggauss(m)
    X = np.repeat(xs[:, None], m, axis=1)
    Y = half[:, None] * nodes[None, :]
    rho = density_from_generator(spec, X, Y)
    return float(hx * np.sum(half * (rho @ weights)))


def density_refinement(spec: GeneratorSpec, R: float = 2.0,
                       levels: Sequence[int] = (200, 400, 800)) -> Tuple[list, list]:
    """Integrals on successively refined grids and their relative changes."""
    vals = [density_integral(spec, R, n) for n in levels]
    changes = [abs(b - a) / abs(a) for a, b in zip(vals, vals[1:])]
    return vals, changes
