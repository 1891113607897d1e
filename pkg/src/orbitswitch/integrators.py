"""Constant-step symplectic and explicit Euler for the two-branch oscillator.

The symplectic scheme updates ``y`` first and moves ``x`` with the new ``y``;
the explicit scheme evaluates both updates at the old state.  The branch is
chosen from the old state in both cases.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Union

import numpy as np

from .dynamics import SINGULAR_TOL, SingularityError, State

SCHEMES = ("symplectic", "explicit")


class IntegrationError(RuntimeError):
    def __init__(self, step: int, state: State, cause: Exception):
        self.step = step
        self.state = state
        super().__init__(f"step {step} failed at (x, y)=({state.x!r}, {state.y!r}): {cause}")


@dataclass(frozen=True)
class IntegrationConfig:
    h: float
    T: float
    scheme: str = "symplectic"
    gamma: float = 0.0

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"step size must be positive, got {self.h!r}")
        if not (self.T >= 0 and math.isfinite(self.T)):
            raise ValueError(f"final time must be non-negative, got {self.T!r}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not self.gamma >= 0:
            raise ValueError("friction coefficient must be non-negative")

    @property
    def n_steps(self) -> int:
        return int(math.floor(self.T / self.h + 1e-9))


@dataclass(frozen=True, eq=False)
class TrajectoryLog:
    """Samples on the grid ``t_n = n h``; ``branch[n]`` is the branch used for step n."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    branch: np.ndarray
    config: Optional[IntegrationConfig] = None
    H: np.ndarray = field(init=False)

    def __post_init__(self):
        for name in ("t", "x", "y", "branch"):
            arr = getattr(self, name)
            arr.setflags(write=False)
        with np.errstate(divide="ignore", invalid="ignore"):
            H = (self.x * self.x + self.y * self.y) / (2.0 * self.x)
        H.setflags(write=False)
        object.__setattr__(self, "H", H)

    def __len__(self):
        return len(self.t)

    def state(self, n: int) -> State:
        return State(float(self.x[n]), float(self.y[n]), float(self.t[n]))

    @classmethod
    def from_samples(cls, t, x, y):
        t, x, y = (np.asarray(a, dtype=float) for a in (t, x, y))
        return cls(t, x, y, (x - 1.0) ** 2 + y * y >= 1.0)

    def to_csv(self, fh=None) -> Optional[str]:
        """Columns t, x, y, H, branch; floats use round-trip repr."""
        out = fh if fh is not None else io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t", "x", "y", "H", "branch"])
        for row in zip(self.t.tolist(), self.x.tolist(), self.y.tolist(),
                       self.H.tolist(), self.branch.tolist()):
            w.writerow([repr(row[0]), repr(row[1]), repr(row[2]), repr(row[3]),
                        "outer" if row[4] else "inner"])
        return out.getvalue() if fh is None else None


@dataclass(frozen=True)
class DriftReport:
    max_drift: float
    lap_entropies: List[float]
    crossings: List[float]
    origin_radius: float


def _step(x, y, h, gamma, symplectic):
    # returns (x_new, y_new, outer)
    outer = (x - 1.0) ** 2 + y * y >= 1.0
    if outer:
        if abs(x) < SINGULAR_TOL:
            raise SingularityError(x, y, "outer-branch update")
        g = (y * y - x * x) / (2.0 * x)
    else:
        g = 1.0 - x
    y_new = y + h * (g - gamma * y)
    x_new = x + h * (y_new if symplectic else y)
    return x_new, y_new, outer


def symplectic_step(state: State, h: float, gamma: float = 0.0) -> State:
    x, y, _ = _step(state.x, state.y, h, gamma, True)
    return State(x, y, state.t + h)


def explicit_step(state: State, h: float, gamma: float = 0.0) -> State:
    x, y, _ = _step(state.x, state.y, h, gamma, False)
    return State(x, y, state.t + h)


def integrate(x0: float, y0: float, config: IntegrationConfig) -> TrajectoryLog:
    n = config.n_steps
    h, gamma = config.h, config.gamma
    symplectic = config.scheme == "symplectic"
    xs = [0.0] * (n + 1)
    ys = [0.0] * (n + 1)
    br = [False] * (n + 1)
    x, y = float(x0), float(y0)
    xs[0], ys[0] = x, y
    for i in range(n):
        try:
            x, y, br[i] = _step(x, y, h, gamma, symplectic)
        except SingularityError as exc:
            raise IntegrationError(i, State(x, y, i * h), exc) from exc
        xs[i + 1] = x
        ys[i + 1] = y
    br[n] = (x - 1.0) ** 2 + y * y >= 1.0
    t = np.arange(n + 1, dtype=float) * h
    return TrajectoryLog(t, np.array(xs), np.array(ys), np.array(br), config)


def origin_window_radius(h: float) -> float:
    return max(10.0 * h, 1e-3)


def _origin_mask(log: TrajectoryLog, radius: float) -> np.ndarray:
    return np.hypot(log.x, log.y) < radius


def lap_entropies(log: TrajectoryLog, radius: float) -> List[float]:
    """Median entropy of each stretch of samples between origin windows."""
    inside = _origin_mask(log, radius)
    out = []
    start = None
    for i, w in enumerate(inside.tolist() + [True]):
        if not w and start is None:
            start = i
        elif w and start is not None:
            out.append(float(np.median(log.H[start:i])))
            start = None
    return out


def entropy_drift(log: TrajectoryLog,
                  reference: Union[float, Callable[[float], float]],
                  origin_radius: Optional[float] = None) -> DriftReport:
    """Largest ``|H - e_ref(t)|`` over samples farther than ``origin_radius`` from 0.

    ``reference`` is a constant level or any callable of time, typically an
    :class:`~orbitswitch.trajectory.EntropyProfile`.
    """
    if len(log) == 0:
        raise ValueError("empty trajectory log")
    if origin_radius is None:
        h = log.config.h if log.config is not None else float(np.diff(log.t[:2])[0])
        origin_radius = origin_window_radius(h)
    if callable(reference):
        ref = np.array([reference(t) for t in log.t.tolist()])
    else:
        ref = np.full(len(log), float(reference))
    keep = ~_origin_mask(log, origin_radius)
    dev = np.abs(log.H - ref)[keep]
    drift = float(dev.max()) if dev.size else 0.0
    return DriftReport(drift, lap_entropies(log, origin_radius),
                       detect_origin_crossings(log), origin_radius)


def detect_origin_crossings(log: TrajectoryLog, x_max: float = 0.1) -> List[float]:
    """Abscissae where y changes sign with x < x_max, by linear interpolation."""
    x, y = log.x, log.y
    s = np.sign(y)
    idx = np.nonzero((s[:-1] * s[1:] < 0) & (x[:-1] < x_max))[0]
    out = []
    for i in idx.tolist():
        frac = y[i] / (y[i] - y[i + 1])
        out.append(float(x[i] + frac * (x[i + 1] - x[i])))
    return out


def post_switch_mask(log: TrajectoryLog, radius: Optional[float] = None) -> np.ndarray:
    """Samples after the trajectory has left its first origin window."""
    if radius is None:
        radius = origin_window_radius(log.config.h)
    inside = _origin_mask(log, radius)
    hits = np.nonzero(inside)[0]
    mask = np.zeros(len(log), dtype=bool)
    if hits.size:
        first = hits[0]
        exits = np.nonzero(~inside[first:])[0]
        if exits.size:
            mask[first + exits[0]:] = True
    return mask & ~inside


def write_csv(log: TrajectoryLog, path) -> None:
    with open(path, "w", newline="") as fh:
        log.to_csv(fh)
