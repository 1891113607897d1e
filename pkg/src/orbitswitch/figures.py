"""Deterministic datasets behind the standard plots.

Each builder returns a :class:`FigureDataset`; plotting is left to external
tools.  Column names are fixed per figure id (see ``FIGURE_COLUMNS``).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .dynamics import orbit_params_from_initial
from .integrators import IntegrationConfig, integrate, origin_window_radius, post_switch_mask
from .trajectory import build_composite, first_arrival_time, profile_for

DEFAULT_IC = (0.5, 1.125)
PHASE_RADII = (1.0, 1.3, 1.6, 1.9, 2.2)
NEAR_ORIGIN_STEPS = (2.5e-4, 5e-4, 1e-3)
TRAJECTORY_ICS = ((0.5, 1.125), (3.0, 0.0), (1.0, 2.0), (2.5, 1.0))

FIGURE_COLUMNS: Dict[str, Tuple[str, ...]] = {
    "phase-portrait": ("c", "s", "x", "y"),
    "region": ("curve", "phi", "x", "y"),
    "profiles": ("profile", "t", "e", "x", "y"),
    "trajectories": ("ic", "t", "x", "y"),
    "near-origin": ("h", "t", "x", "y"),
    "entropy": ("t", "H"),
    "error": ("t", "H-1"),
    "explicit-euler": ("t", "x", "y", "H"),
}


@dataclass(frozen=True)
class FigureOptions:
    ic: Tuple[float, float] = DEFAULT_IC
    h: float = 1e-4
    T: Optional[float] = None
    stride: int = 10
    R: float = 2.0
    points: int = 201


@dataclass(frozen=True)
class FigureDataset:
    figure: str
    columns: Tuple[str, ...]
    rows: List[tuple]

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"row {r!r} does not match columns {self.columns}")

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
        return out.getvalue()


def _T(opts, default):
    return default if opts.T is None else opts.T


def _phase_portrait(opts):
    s = np.linspace(0.0, 2.0 * math.pi, opts.points).tolist()
    return [(c, t, c * (1.0 + math.cos(t)), c * math.sin(t)) for c in PHASE_RADII for t in s]


def _region(opts):
    phi = np.linspace(-math.pi, math.pi, opts.points).tolist()
    R = opts.R
    return ([("inner", p, 1.0 + math.cos(p), math.sin(p)) for p in phi]
            + [("outer", p, R * (1.0 + math.cos(p)), R * math.sin(p)) for p in phi])


def _profiles(opts):
    x0, y0 = opts.ic
    c0 = orbit_params_from_initial(x0, y0).c0
    choices = {"selected": (1.0,), "no-switch": (), "staircase": (0.5 * (c0 + 1.0), 1.0)}
    rows = []
    for name, later in choices.items():
        prof = profile_for(x0, y0, later)
        traj = build_composite(x0, y0, prof)
        ts = np.linspace(0.0, _T(opts, prof.t1 + 6.0 * math.pi), opts.points).tolist()
        for t in ts:
            s = traj(t)
            rows.append((name, t, prof(t), s.x, s.y))
    return rows


def _trajectories(opts):
    rows = []
    T = _T(opts, 8.0 * math.pi)
    for ic in TRAJECTORY_ICS:
        log = integrate(ic[0], ic[1], IntegrationConfig(opts.h, T))
        tag = f"{ic[0]!r},{ic[1]!r}"
        rows += [(tag, t, x, y) for t, x, y in zip(log.t[::opts.stride].tolist(),
                                                   log.x[::opts.stride].tolist(),
                                                   log.y[::opts.stride].tolist())]
    return rows


def _near_origin(opts):
    x0, y0 = opts.ic
    t1 = first_arrival_time(orbit_params_from_initial(x0, y0))
    rows = []
    for h in NEAR_ORIGIN_STEPS:
        log = integrate(x0, y0, IntegrationConfig(h, _T(opts, t1 + 0.5)))
        keep = np.hypot(log.x, log.y) < 0.05
        rows += [(h, t, x, y) for t, x, y in zip(log.t[keep].tolist(), log.x[keep].tolist(),
                                                 log.y[keep].tolist())]
    return rows


def _symplectic_log(opts):
    x0, y0 = opts.ic
    return integrate(x0, y0, IntegrationConfig(opts.h, _T(opts, 8.0 * math.pi)))


def _entropy(opts):
    log = _symplectic_log(opts)
    s = opts.stride
    return list(zip(log.t[::s].tolist(), log.H[::s].tolist()))


def _error(opts):
    log = _symplectic_log(opts)
    keep = post_switch_mask(log, origin_window_radius(opts.h))
    idx = np.nonzero(keep)[0][::opts.stride]
    return list(zip(log.t[idx].tolist(), (log.H[idx] - 1.0).tolist()))


def _explicit(opts):
    x0, y0 = opts.ic
    log = integrate(x0, y0, IntegrationConfig(opts.h, _T(opts, 4.0 * math.pi), "explicit"))
    s = opts.stride
    return list(zip(log.t[::s].tolist(), log.x[::s].tolist(), log.y[::s].tolist(),
                    log.H[::s].tolist()))


_BUILDERS: Dict[str, Callable[[FigureOptions], List[tuple]]] = {
    "phase-portrait": _phase_portrait,
    "region": _region,
    "profiles": _profiles,
    "trajectories": _trajectories,
    "near-origin": _near_origin,
    "entropy": _entropy,
    "error": _error,
    "explicit-euler": _explicit,
}

FIGURE_IDS: Sequence[str] = tuple(FIGURE_COLUMNS)


def build_figure(figure: str, opts: FigureOptions = FigureOptions()) -> FigureDataset:
    if figure not in _BUILDERS:
        raise KeyError(f"unknown figure id {figure!r}; choose from {', '.join(FIGURE_IDS)}")
    if opts.stride < 1:
        raise ValueError("stride must be at least 1")
    return FigureDataset(figure, FIGURE_COLUMNS[figure], _BUILDERS[figure](opts))
