"""Composite trajectories that switch circles at the origin, and their selection.

Every circle ``(x - c)^2 + y^2 = c^2`` with ``c >= 1`` passes through the
origin, so a solution may leave the origin on any of them.  An
:class:`EntropyProfile` fixes which circle is followed on each lap; different
profiles give different solutions with the same initial data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .dynamics import (
    State,
    closed_form_state,
    entropy,
    orbit_params_from_initial,
)
from .integrators import IntegrationConfig, integrate

TWO_PI = 2.0 * math.pi
SWITCH_TIME_TOL = 1e-9


@dataclass(frozen=True)
class EntropyProfile:
    """Piecewise-constant entropy ``e(t)``.

    ``levels[0]`` holds on ``[0, t1]`` and ``levels[n]`` on
    ``[t1 + 2(n-1)pi, t1 + 2n pi)``.  The last level repeats forever.
    """

    t1: float
    levels: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(float(c) for c in self.levels))
        if not self.levels:
            raise ValueError("profile needs at least one level")
        if not 0.0 <= self.t1 < TWO_PI:
            raise ValueError(f"first switch time must lie in [0, 2pi), got {self.t1!r}")
        low = [c for c in self.levels if not c >= 1.0]
        if low:
            raise ValueError(
                f"levels below 1 never reach the origin and cannot be switched to: {low}")

    def level(self, n: int) -> float:
        return self.levels[min(n, len(self.levels) - 1)]

    def switch_time(self, n: int) -> float:
        """Start time of piece ``n >= 1`` (the n-th origin passage)."""
        return self.t1 + TWO_PI * (n - 1)

    def piece_index(self, t: float) -> int:
        if t <= self.t1:
            return 0
        return int((t - self.t1) // TWO_PI) + 1

    def __call__(self, t: float) -> float:
        return self.level(self.piece_index(t))


@dataclass(frozen=True)
class CompositeTrajectory:
    """Closed-form piece through the initial point, then one circle per lap."""

    x0: float
    y0: float
    profile: EntropyProfile
    pieces: List[Tuple[float, float]] = field(init=False, compare=False)

    def __post_init__(self):
        # piece n: (start time, level); piece 0 starts at 0
        n = len(self.profile.levels)
        starts = [0.0] + [self.profile.switch_time(i) for i in range(1, n)]
        object.__setattr__(self, "pieces", list(zip(starts, self.profile.levels)))

    @property
    def switch_times(self) -> List[float]:
        return [s for s, _ in self.pieces[1:]]

    def __call__(self, t: float) -> State:
        return eval_composite(self, t)

    def velocity(self, t: float) -> Tuple[float, float]:
        n = self.profile.piece_index(t)
        if n == 0:
            params = orbit_params_from_initial(self.x0, self.y0)
            phase = -t + params.theta0
            return params.c0 * math.sin(phase), -params.c0 * math.cos(phase)
        c = self.profile.level(n)
        s = t - self.profile.switch_time(n)
        return c * math.sin(s), c * math.cos(s)


@dataclass(frozen=True)
class SelectionResult:
    profile: EntropyProfile
    terminal_entropy: float
    envelope_slope: float
    first_drop: float


def first_arrival_time(params) -> float:
    """Smallest t > 0 at which the closed-form orbit reaches the origin."""
    t = math.fmod(params.theta0 + math.pi, TWO_PI)
    if t <= 0.0:
        t += TWO_PI
    return t


def build_composite(x0: float, y0: float, profile: EntropyProfile) -> CompositeTrajectory:
    params = orbit_params_from_initial(x0, y0)
    if params.c0 < 1.0:
        raise ValueError(
            f"initial entropy {params.c0!r} < 1: orbit stays inside the unit disc")
    if not math.isclose(params.c0, profile.levels[0], rel_tol=1e-12, abs_tol=1e-12):
        raise ValueError(
            f"profile starts at level {profile.levels[0]!r} but the initial point "
            f"has entropy {params.c0!r}")
    t1 = first_arrival_time(params)
    if abs(t1 - profile.t1) > SWITCH_TIME_TOL:
        raise ValueError(
            f"profile switches at t1={profile.t1!r}; the orbit reaches the origin at {t1!r}")
    return CompositeTrajectory(x0, y0, profile)


def profile_for(x0: float, y0: float, levels: Sequence[float]) -> EntropyProfile:
    """Profile with the given later levels and the switch time implied by (x0, y0)."""
    params = orbit_params_from_initial(x0, y0)
    return EntropyProfile(first_arrival_time(params), (params.c0, *levels))


def eval_composite(traj: CompositeTrajectory, t: float) -> State:
    if t < 0:
        raise ValueError("composite trajectories are defined for t >= 0")
    prof = traj.profile
    n = prof.piece_index(t)
    if n == 0:
        s = closed_form_state(t, orbit_params_from_initial(traj.x0, traj.y0))
        return State(s.x, s.y, t)
    c = prof.level(n)
    s = t - prof.switch_time(n)
    return State(c * (1.0 - math.cos(s)), c * math.sin(s), t)


def acceleration_jump(c_prev: float, c_next: float) -> float:
    """Jump of y' (= x'') when the trajectory switches from level c_prev to c_next."""
    if c_prev < 1.0 or c_next < 1.0:
        raise ValueError("switching is only possible between levels >= 1")
    return c_next - c_prev


def is_admissible_profile(profile) -> bool:
    levels = profile.levels if isinstance(profile, EntropyProfile) else tuple(profile)
    return all(b <= a for a, b in zip(levels, levels[1:]))


def entropy_rate_select(c0: float, t1: float = 0.0) -> SelectionResult:
    """Admissible profile whose entropy falls at the maximal rate.

    The steepest non-increasing profile drops once, at the first origin
    passage, to the smallest reachable level 1 and stays there.
    """
    if c0 < 1.0:
        raise ValueError(f"selection needs c0 >= 1, got {c0!r}")
    levels = (c0,) if c0 == 1.0 else (c0, 1.0)
    profile = EntropyProfile(t1, levels)
    # envelope through points one period apart on consecutive levels
    slope = (profile.level(1) - c0) / TWO_PI
    return SelectionResult(profile, profile.levels[-1], slope, c0 - profile.level(1))


def friction_limit_probe(x0: float, y0: float, gamma: float, T: float, h: float) -> float:
    """Entropy at time T of the damped system integrated by symplectic Euler."""
    if not gamma > 0:
        raise ValueError("friction probe needs gamma > 0")
    log = integrate(x0, y0, IntegrationConfig(h=h, T=T, scheme="symplectic", gamma=gamma))
    return float(entropy(log.x[-1], log.y[-1]))


def format_number(v: float) -> str:
    """Shortest round-trip form; integral values drop the trailing ".0"."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def format_profile(profile: EntropyProfile) -> str:
    return f"{format_number(profile.t1)}; " + ", ".join(format_number(c) for c in profile.levels)


def parse_profile(text: str) -> EntropyProfile:
    try:
        head, _, tail = text.partition(";")
        if not tail.strip():
            raise ValueError("expected 't1; c0, c1, ...'")
        levels = [float(tok) for tok in tail.split(",") if tok.strip()]
        return EntropyProfile(float(head), tuple(levels))
    except ValueError as exc:
        raise ValueError(f"bad profile {text!r}: {exc}") from None
