"""Command-line driver: ``orbitswitch <command> [flags]``.

Exit codes: 0 success, 2 configuration or parse error, 3 integration
failure, 4 verification failure (the report is still written).

Every flag may also come from a flat ``key=value`` file given by
``--config``; flags on the command line win.  Keys are the flag names
without dashes (``h``, ``T``, ``ic``, ...).  Times accept multiples of pi,
e.g. ``--T 8pi``.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np

from .dynamics import entropy, orbit_params_from_initial
from .figures import FIGURE_IDS, FigureOptions, build_figure
from .fluid import DomainSpec, Region, euler_fields, run_verification
from .fluid.verify import DEFAULT_TOLERANCES
from .generator import (DomainError, GeneratorSpec, InconsistentPressureError, ParseError,
                        conservation_residual, continuity_residual_generic,
                        density_from_generator, loop_integral, pressure_semi_inverse,
                        velocity_from_generator)
from .integrators import IntegrationConfig, IntegrationError, TrajectoryLog, integrate
from .trajectory import (format_number, acceleration_jump, entropy_rate_select, first_arrival_time,
                         friction_limit_probe, parse_profile, build_composite)

EXIT_OK, EXIT_CONFIG, EXIT_INTEGRATION, EXIT_VERIFY = 0, 2, 3, 4

DEFAULTS = {
    "ic": "0.5,1.125", "h": "1e-4", "T": None, "scheme": "symplectic", "gamma": None,
    "profile": None, "R": "2", "k": "0", "seed": "0", "samples": "1000", "out": None,
    "tol": None, "stride": None, "G": "(x^2+y^2)/(2*x)", "w": "x", "D": "1",
}

FLAG_HELP = {
    "ic": "initial state X,Y (default 0.5,1.125)",
    "h": "step size (default 1e-4)",
    "T": "final time; accepts forms like 8pi",
    "scheme": "symplectic or explicit",
    "gamma": "friction coefficient; a comma list for select",
    "profile": "'t1; c0, c1, ...' entropy profile",
    "stride": "keep every n-th step",
    "R": "outer radius of the flow domain (default 2)",
    "k": "viscosity parameter (default 0)",
    "seed": "sampling seed (default 0)",
    "samples": "number of sample points (default 1000)",
    "tol": "one tolerance for all checks, or name=value pairs",
    "G": "conserved function of x, y",
    "w": "weight function of x, y",
    "D": "density constant (default 1)",
}

GENERATOR_TOLERANCES = {"conservation": 1e-12, "continuity": 1e-10}
PRESSURE_LOOP_TOL = 1e-8


class ConfigError(ValueError):
    pass


_PI = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*pi\s*$")


def parse_float(text: str, name: str) -> float:
    m = _PI.match(text)
    try:
        if m:
            v = (float(m.group(1)) if m.group(1) else 1.0) * math.pi
        else:
            v = float(text)
    except ValueError:
        raise ConfigError(f"{name}: cannot read {text!r} as a number") from None
    if not math.isfinite(v):
        raise ConfigError(f"{name}: must be finite, got {text!r}")
    return v


def parse_pair(text: str, name: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{name}: expected X,Y, got {text!r}")
    return parse_float(parts[0], name), parse_float(parts[1], name)


def parse_list(text: str, name: str) -> List[float]:
    return [parse_float(t, name) for t in text.split(",") if t.strip()]


def read_config(path: str) -> Dict[str, str]:
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip().lstrip("-")
        if not sep or key not in DEFAULTS:
            raise ConfigError(f"{path}:{n}: expected key=value with a known key, got {line!r}")
        out[key] = val.strip()
    return out


class Settings:
    """Merged view of defaults, config file and command-line flags."""

    def __init__(self, args: argparse.Namespace):
        self.raw = {k: v for k, v in DEFAULTS.items()}
        if getattr(args, "config", None):
            self.raw.update(read_config(args.config))
        for k in DEFAULTS:
            v = getattr(args, k, None)
            if v is not None:
                self.raw[k] = v

    def get(self, key):
        return self.raw[key]

    def num(self, key, default=None):
        v = self.raw[key]
        return default if v is None else parse_float(v, key)

    def int(self, key):
        v = self.num(key)
        if not float(v).is_integer():
            raise ConfigError(f"{key}: expected an integer, got {self.raw[key]!r}")
        return int(v)

    def ic(self):
        return parse_pair(self.raw["ic"], "ic")


def _emit(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_simulate(s: Settings) -> int:
    x0, y0 = s.ic()
    gamma = s.num("gamma", 0.0)
    try:
        cfg = IntegrationConfig(s.num("h"), s.num("T", 8.0 * math.pi), s.get("scheme"), gamma)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    stride = int(s.num("stride", 1))
    if stride < 1:
        raise ConfigError("stride must be at least 1")
    log = integrate(x0, y0, cfg)
    if stride > 1:
        sl = slice(None, None, stride)
        log = TrajectoryLog(log.t[sl].copy(), log.x[sl].copy(), log.y[sl].copy(),
                            log.branch[sl].copy(), cfg)
    _emit(log.to_csv(), s.get("out"))
    return EXIT_OK


def cmd_select(s: Settings) -> int:
    x0, y0 = s.ic()
    if not x0 > 0:
        raise ConfigError(f"ic: x must be positive, got {x0!r}")
    p = orbit_params_from_initial(x0, y0)
    if p.c0 < 1.0:
        raise ConfigError(f"initial entropy {p.c0!r} < 1: the orbit stays inside the unit "
                          "disc, never reaches the origin, and no selection is needed")
    t1 = first_arrival_time(p)
    if s.get("profile"):
        try:
            prof = parse_profile(s.get("profile"))
            build_composite(x0, y0, prof)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        levels = prof.levels
    else:
        levels = entropy_rate_select(p.c0, t1 % (2.0 * math.pi)).profile.levels
    terminal = levels[-1]
    jump = acceleration_jump(levels[0], levels[1] if len(levels) > 1 else levels[0])
    report = {"profile": f"{format_number(levels[0])}, {format_number(terminal)}" if len(levels) <= 2
              else ", ".join(format_number(c) for c in levels),
              "levels": list(levels), "t1": t1, "jump": jump, "probes": []}
    lines = [f"profile: {report['profile']}", f"t1: {t1!r}", f"jump: {format_number(jump)}"]
    if s.get("gamma"):
        T = s.num("T", t1 + math.pi)
        h = s.num("h")
        if not h > 0:
            raise ConfigError("h must be positive")
        for g in parse_list(s.get("gamma"), "gamma"):
            if not g > 0:
                raise ConfigError("friction probes need gamma > 0")
            HT = friction_limit_probe(x0, y0, g, T, h)
            report["probes"].append({"gamma": g, "T": T, "H_T": HT, "dev": abs(HT - 1.0)})
            lines.append(f"gamma={g!r} T={T!r} H_T={HT!r} |H_T-1|={abs(HT - 1.0)!r}")
    print("\n".join(lines))
    if s.get("out"):
        _emit(_json(report), s.get("out"))
    return EXIT_OK


def _tolerances(text: Optional[str]):
    if text is None:
        return None
    if "=" not in text:
        v = parse_float(text, "tol")
        return {k: v for k in DEFAULT_TOLERANCES}
    out = {}
    for item in text.split(","):
        k, _, v = item.partition("=")
        k = k.strip()
        if k not in DEFAULT_TOLERANCES:
            raise ConfigError(f"tol: unknown residual {k!r}")
        out[k] = parse_float(v, "tol")
    return out


def cmd_verify(s: Settings) -> int:
    samples = s.int("samples")
    if samples < 1:
        raise ConfigError("samples must be positive")
    try:
        domain = DomainSpec(R=s.num("R"), seed=s.int("seed"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report = run_verification(domain, s.num("k"), samples, _tolerances(s.get("tol")))
    _emit(report.to_json(), s.get("out"))
    if not report.passed:
        print(f"verification failed: {', '.join(report.failures())}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def generator_report(spec: GeneratorSpec, samples: int, seed: int, R: float = 2.0,
                     tol: Optional[Dict[str, float]] = None) -> dict:
    """Conservation, continuity and pressure checks for a user spec."""
    tol = dict(GENERATOR_TOLERANCES, **(tol or {}))
    rng = np.random.default_rng(seed)
    pts = DomainSpec(R=R, seed=seed).sample(Region.OMEGA1, samples, rng)
    cons = cont = canon = 0.0
    used = skipped = 0
    for x, y in pts:
        try:
            if abs(spec.w(x, y)) <= 0.05:
                skipped += 1
                continue
            c1 = abs(conservation_residual(spec, x, y))
            c2 = abs(continuity_residual_generic(spec, x, y))
            u, v = velocity_from_generator(spec, x, y)
            rho = density_from_generator(spec, x, y)
        except (DomainError, ZeroDivisionError):
            skipped += 1
            continue
        f = euler_fields(x, y, Region.OMEGA1)
        cons, cont = max(cons, c1), max(cont, c2)
        canon = max(canon, abs(u - f.u), abs(v - f.v), abs(rho - f.rho))
        used += 1
    loop = [(2.0 + 0.5 * math.cos(a), 1.0 + 0.5 * math.sin(a))
            for a in np.linspace(0.0, 2.0 * math.pi, 200, endpoint=False).tolist()]
    try:
        loop_val = abs(loop_integral(spec, loop))
    except (DomainError, ZeroDivisionError):
        loop_val = math.inf
    values = {"conservation": cons, "continuity": cont}
    # a non-zero loop integral means no single-valued pressure exists; that is
    # a property of G and w, reported rather than treated as a failure
    report = {"schema": 1, "G": spec.G.to_string(), "w": spec.w.to_string(), "D": spec.D,
              "residuals": values, "tolerances": tol, "samples_used": used,
              "samples_skipped": skipped, "canonical_field_deviation": canon,
              "pressure": {"loop_integral": loop_val,
                           "single_valued": loop_val <= PRESSURE_LOOP_TOL}}
    if used and canon < 1e-10:
        path = [(1.0 + 0.5 * t, 1.0 - 0.4 * t) for t in np.linspace(0.0, 2.0, 41).tolist()]
        try:
            p = pressure_semi_inverse(spec, path)
            ref = np.array([entropy(x, y) - 1.0 for x, y in path])
            report["pressure_minus_canonical_std"] = float(np.std(p - ref))
        except (DomainError, InconsistentPressureError):
            pass
    failures = sorted(k for k, v in values.items() if not v <= tol[k])
    if not used:
        failures.append("no usable samples")
    report["failures"] = failures
    report["passed"] = not failures
    return report


def cmd_generator(s: Settings) -> int:
    try:
        spec = GeneratorSpec.from_strings(s.get("G"), s.get("w"), s.num("D"))
    except ParseError as exc:
        raise ConfigError(f"cannot parse {exc.text!r}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    tol = None
    if s.get("tol") is not None:
        tol = {k: s.num("tol") for k in GENERATOR_TOLERANCES}
    report = generator_report(spec, s.int("samples"), s.int("seed"), s.num("R"), tol)
    _emit(_json(report), s.get("out"))
    if not report["passed"]:
        print(f"generator checks failed: {', '.join(report['failures'])}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_emit_figure(s: Settings, figure: str) -> int:
    if figure not in FIGURE_IDS:
        raise ConfigError(f"unknown figure id {figure!r}; choose from {', '.join(FIGURE_IDS)}")
    stride = int(s.num("stride", 10))
    opts = FigureOptions(ic=s.ic(), h=s.num("h"), T=s.num("T"), stride=stride, R=s.num("R"))
    if not opts.h > 0 or opts.stride < 1:
        raise ConfigError("h must be positive and stride at least 1")
    _emit(build_figure(figure, opts).to_csv(), s.get("out"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbitswitch", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *flags):
        p.add_argument("--config", help="flat key=value file; flags override it")
        p.add_argument("--out", help="output path (default: stdout)")
        for f in flags:
            p.add_argument(f"--{f}", help=FLAG_HELP[f])
        return p

    common(sub.add_parser("simulate", help="integrate and write a CSV log"),
           "ic", "h", "T", "scheme", "gamma", "stride")
    common(sub.add_parser("select", help="entropy-rate selection and friction probes"),
           "ic", "profile", "gamma", "h", "T")
    common(sub.add_parser("verify", help="residual sweeps of the flow fields"),
           "R", "k", "seed", "samples", "tol")
    common(sub.add_parser("generator", help="checks for a conserved function and weight"),
           "G", "w", "D", "seed", "samples", "R", "tol")
    fig = common(sub.add_parser("emit-figure", help="write a figure dataset as CSV"),
                 "ic", "h", "T", "stride", "R")
    fig.add_argument("figure", help=", ".join(FIGURE_IDS))
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        s = Settings(args)
        if args.command == "simulate":
            return cmd_simulate(s)
        if args.command == "select":
            return cmd_select(s)
        if args.command == "verify":
            return cmd_verify(s)
        if args.command == "generator":
            return cmd_generator(s)
        return cmd_emit_figure(s, args.figure)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION


if __name__ == "__main__":
    sys.exit(main())
