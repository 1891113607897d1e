"""Seeded residual sweeps over the flow domain.

Every residual is reduced to its maximum absolute value over the samples and
compared with a per-family tolerance.  Samples closer than the exclusion
distance to the y-axis or to the origin are rejected, since the density 1/x
blows up there.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .airy import airy_equilibrium_residual, airy_pde_residual
from .fields import (Region, boundary_normal_flux, continuity_residual, continuity_residual_fd,
                     euler_momentum_residual, euler_momentum_residual_fd, pressure,
                     rankine_hugoniot_check, region_of)
from .stress import (closed_form_stress, constitutive_stress, fundamental_relation_check,
                     ns_momentum_residual, trace_gap, viscosities)

SCHEMA_VERSION = 1

# Families that need a non-degenerate strain rate skip points closer than this
# (in |cos 2 theta| or |tan theta|) to the degenerate loci.
DEGENERACY_CUTOFF = 1e-2

DEFAULT_TOLERANCES: Dict[str, float] = {
    "continuity": 1e-12,
    "euler_momentum": 1e-12,
    "boundary_flux_inner": 1e-12,
    "boundary_flux_outer": 1e-12,
    "rh_pressure_jump": 1e-12,
    "rh_mass_flux_jump": 1e-12,
    "pressure_along_orbit": 1e-12,
    "continuity_fd": 1e-6,
    "euler_momentum_fd": 1e-6,
    "ns_momentum": 1e-6,
    "stress_two_path": 1e-10,
    "trace_identity": 1e-10,
    "fundamental_relation": 1e-10,
    "airy_equilibrium": 1e-5,
    "airy_pde": 1e-6,
    "mu_negative_part": 0.0,
}


@dataclass(frozen=True)
class DomainSpec:
    R: float = 2.0
    exclusion: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if not self.R > 1:
            raise ValueError(f"outer radius must exceed 1, got {self.R!r}")
        if not self.exclusion >= 0:
            raise ValueError("exclusion distance must be non-negative")

    def _keep(self, x, y):
        return x >= self.exclusion and math.hypot(x, y) >= self.exclusion

    def sample(self, region: Region, n: int, rng: Optional[np.random.Generator] = None
               ) -> List[Tuple[float, float]]:
        """``n`` points of ``region`` by rejection sampling in its bounding box."""
        region = Region(region)
        if rng is None:
            rng = np.random.default_rng(self.seed)
        if region is Region.OMEGA1:
            lo, hi = (0.0, -self.R), (2.0 * self.R, self.R)
        elif region is Region.OMEGA2:
            lo, hi = (0.0, -1.0), (2.0, 1.0)
        else:
            raise ValueError("cannot sample outside the flow domain")
        out: List[Tuple[float, float]] = []
        while len(out) < n:
            pts = rng.uniform(lo, hi, size=(max(64, 2 * (n - len(out))), 2))
            for x, y in pts.tolist():
                if region_of(x, y, self.R) is region and self._keep(x, y):
                    out.append((x, y))
                    if len(out) == n:
                        break
        return out

    def sample_angles(self, n: int, which: str, rng: np.random.Generator) -> List[float]:
        """Boundary angles whose points keep clear of the exclusion zone."""
        scale = 1.0 if which == "inner" else self.R
        out: List[float] = []
        while len(out) < n:
            phi = float(rng.uniform(-math.pi, math.pi))
            if scale * (1.0 + math.cos(phi)) >= self.exclusion:
                out.append(phi)
        return out


@dataclass
class ResidualReport:
    values: Dict[str, float]
    tolerances: Dict[str, float]
    samples: int
    exclusion: str
    meta: Dict[str, object] = field(default_factory=dict)

    def failures(self) -> List[str]:
        return sorted(k for k, v in self.values.items()
                      if not (v <= self.tolerances.get(k, math.inf)))

    @property
    def passed(self) -> bool:
        return not self.failures()

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "residuals": dict(sorted(self.values.items())),
            "tolerances": {k: self.tolerances[k] for k in sorted(self.values)},
            "failures": self.failures(),
            "passed": self.passed,
            "samples": self.samples,
            "exclusion": self.exclusion,
            "meta": dict(sorted(self.meta.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


class _Max:
    """Running maxima of absolute values, keyed by residual name."""

    def __init__(self):
        self.v: Dict[str, float] = {}

    def add(self, name, *vals):
        m = max(abs(float(a)) for a in vals)
        if math.isnan(m):
            m = math.inf
        self.v[name] = max(self.v.get(name, 0.0), m)


def _theta(x, y):
    return math.atan2(y, x)


def run_verification(domain: DomainSpec = DomainSpec(), k: float = 0.0, samples: int = 1000,
                     tolerances: Optional[Dict[str, float]] = None) -> ResidualReport:
    """Evaluate every residual family on ``samples`` seeded points per region."""
    if samples < 1:
        raise ValueError("sample count must be positive")
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ValueError(f"unknown residual names: {sorted(unknown)}")
        tol.update(tolerances)

    rng = np.random.default_rng(domain.seed)
    om1 = domain.sample(Region.OMEGA1, samples, rng)
    om2 = domain.sample(Region.OMEGA2, samples, rng)
    acc = _Max()
    mu_min = math.inf
    bulk_min = math.inf
    skipped = 0

    for x, y in om1:
        acc.add("continuity", continuity_residual(x, y, Region.OMEGA1))
        acc.add("euler_momentum", *euler_momentum_residual(x, y, Region.OMEGA1))
        acc.add("continuity_fd", continuity_residual_fd(x, y, Region.OMEGA1))
        acc.add("euler_momentum_fd", *euler_momentum_residual_fd(x, y, Region.OMEGA1))
        acc.add("ns_momentum", *ns_momentum_residual(x, y, k, Region.OMEGA1))
        a = constitutive_stress(x, y, k)
        b = closed_form_stress(x, y, k)
        acc.add("stress_two_path", *(p - q for p, q in zip(a, b)))
        acc.add("trace_identity", trace_gap(x, y, k))
        vis = viscosities(x, y, k)
        mu_min = min(mu_min, vis.mu)
        bulk_min = min(bulk_min, vis.bulk_combination)
        acc.add("airy_equilibrium", airy_equilibrium_residual(x, y, k))
        th = _theta(x, y)
        if abs(math.cos(2.0 * th)) < DEGENERACY_CUTOFF or abs(math.tan(th)) < DEGENERACY_CUTOFF:
            skipped += 1
            continue
        acc.add("airy_pde", airy_pde_residual(x, y, k))
        acc.add("fundamental_relation", fundamental_relation_check(x, y, k))

    for x, y in om2:
        acc.add("continuity", continuity_residual(x, y, Region.OMEGA2))
        acc.add("euler_momentum", *euler_momentum_residual(x, y, Region.OMEGA2))
        acc.add("continuity_fd", continuity_residual_fd(x, y, Region.OMEGA2))
        acc.add("euler_momentum_fd", *euler_momentum_residual_fd(x, y, Region.OMEGA2))
        acc.add("ns_momentum", *ns_momentum_residual(x, y, k, Region.OMEGA2))

    for phi in domain.sample_angles(samples, "inner", rng):
        acc.add("boundary_flux_inner", boundary_normal_flux(phi, "inner", domain.R))
        acc.add("rh_pressure_jump", rankine_hugoniot_check(phi)[0])
        acc.add("rh_mass_flux_jump", rankine_hugoniot_check(phi)[1])
    for phi in domain.sample_angles(samples, "outer", rng):
        acc.add("boundary_flux_outer", boundary_normal_flux(phi, "outer", domain.R))

    # pressure on the orbit circle of radius c equals c - 1 at every point
    for c, s in zip(rng.uniform(1.0, domain.R, samples).tolist(),
                    domain.sample_angles(samples, "inner", rng)):
        x, y = c * (1.0 + math.cos(s)), c * math.sin(s)
        if x < domain.exclusion:
            continue
        acc.add("pressure_along_orbit", pressure(x, y, Region.OMEGA1) - (c - 1.0))

    acc.v["mu_negative_part"] = max(0.0, -mu_min)
    return ResidualReport(
        values=acc.v, tolerances=tol, samples=samples,
        exclusion=f"x < {domain.exclusion!r} or |(x, y)| < {domain.exclusion!r}",
        meta={"R": domain.R, "k": k, "seed": domain.seed, "mu_min": mu_min,
              "lambda_plus_2mu_min": bulk_min, "degenerate_points_skipped": skipped},
    )
