"""Acceptance criteria, one test per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion (see ``conftest.py``).
"""
import math
import sys

import numpy as np
import pytest

from orbitswitch.dynamics import closed_form_state, entropy, orbit_params_from_initial, rhs_dafermos
from orbitswitch.fluid import DomainSpec, Region, run_verification
from orbitswitch.generator import (
    BinOp, Call, DomainError, GeneratorSpec, Neg, Num, ParseError, Var, catalog,
    conservation_residual, continuity_residual_generic, density_refinement, differentiate,
    parse_expression, pressure_semi_inverse,
)
from orbitswitch.integrators import (
    IntegrationConfig, detect_origin_crossings, entropy_drift, integrate, post_switch_mask,
)
from orbitswitch.trajectory import build_composite, first_arrival_time, profile_for

IC = (0.5, 1.125)
H0 = 1.515625

ANALYTIC = ("continuity", "euler_momentum", "boundary_flux_inner", "boundary_flux_outer",
            "rh_pressure_jump", "rh_mass_flux_jump")
FD_CHECKS = ("continuity_fd", "euler_momentum_fd")


@pytest.fixture(scope="module")
def reports():
    return {k: run_verification(DomainSpec(R=2.0, seed=0), k=k, samples=1000) for k in (0.0, 2.0)}


@pytest.fixture(scope="module")
def symplectic_log():
    return integrate(*IC, IntegrationConfig(1e-4, 8 * math.pi))


def test_criterion_01_entropy_preservation(symplectic_log):
    """Entropy preserved to 1e-3 outside origin windows; post-switch H in [0.999, 1.001]."""
    log = symplectic_log
    rep = entropy_drift(log, profile_for(*IC, [1.0]))
    post = log.H[post_switch_mask(log, rep.origin_radius)]
    print(f"max drift {rep.max_drift:.3e} (window {rep.origin_radius:g}); "
          f"post-switch H in [{post.min():.6f}, {post.max():.6f}]")
    assert rep.max_drift < 1e-3
    assert post.min() >= 0.999 and post.max() <= 1.001


def test_criterion_02_selection_by_discretization():
    """Final-period samples of four runs lie within 1e-2 of the unit circle."""
    T = 8 * math.pi
    worst = []
    for ic in [(0.5, 1.125), (3.0, 0.0), (1.0, 2.0), (2.5, 1.0)]:
        log = integrate(*ic, IntegrationConfig(1e-4, T))
        tail = log.t >= T - 2 * math.pi
        worst.append(float(np.abs((log.x[tail] - 1) ** 2 + log.y[tail] ** 2 - 1).max()))
    print(f"final-period circle deviations {worst}")
    assert max(worst) < 1e-2


def test_criterion_03_crossing_law():
    """First crossing abscissae are positive and shrink by a factor in [2, 8] per halving."""
    t1 = first_arrival_time(orbit_params_from_initial(*IC))
    xs = []
    for h in (1e-3, 5e-4, 2.5e-4):
        log = integrate(*IC, IntegrationConfig(h, t1 + 0.5))
        xs.append(detect_origin_crossings(log)[0])
    ratios = [a / b for a, b in zip(xs, xs[1:])]
    print(f"crossings {xs}, ratios {ratios}")
    assert all(x > 0 for x in xs)
    assert all(2 <= r <= 8 for r in ratios)


@pytest.mark.parametrize("h", [1e-4, 1e-5])
def test_criterion_04_explicit_euler_failure(h):
    """Explicit Euler ends with H(4 pi) > H(0)."""
    log = integrate(*IC, IntegrationConfig(h, 4 * math.pi, "explicit"))
    print(f"h={h:g}: H(0)={float(log.H[0])!r}, H(4pi)={float(log.H[-1])!r}")
    assert log.H[-1] > log.H[0]


def test_criterion_05_analytic_residuals(reports):
    """Analytic residuals below 1e-12 and finite-difference cross-checks below 1e-6."""
    vals = reports[0.0].values
    print({k: vals[k] for k in ANALYTIC + FD_CHECKS})
    assert max(vals[k] for k in ANALYTIC) < 1e-12
    assert max(vals[k] for k in FD_CHECKS) < 1e-6


def test_criterion_06_navier_stokes(reports):
    """NS momentum residual below 1e-6 (k = 0, 2); two-path stresses agree; mu >= 0."""
    for k, rep in reports.items():
        v = rep.values
        print(f"k={k}: ns {v['ns_momentum']:.2e}, two-path {v['stress_two_path']:.2e}, "
              f"mu_min {rep.meta['mu_min']:.4f}")
        assert v["ns_momentum"] < 1e-6
        assert v["stress_two_path"] < 1e-10
        assert rep.meta["mu_min"] >= 0


def test_criterion_07_airy(reports):
    """Airy equilibrium below 1e-5, Airy PDE below 1e-6, fundamental gap below 1e-10."""
    for k, rep in reports.items():
        v = rep.values
        print(f"k={k}: equilibrium {v['airy_equilibrium']:.2e}, pde {v['airy_pde']:.2e}, "
              f"fundamental {v['fundamental_relation']:.2e}")
        assert v["airy_equilibrium"] < 1e-5
        assert v["airy_pde"] < 1e-6
        assert v["fundamental_relation"] < 1e-10


def _ode_residual(traj, t, h=1e-6):
    a, b, s = traj(t - h), traj(t + h), traj(t)
    fx, fy = rhs_dafermos(s.x, s.y)
    return max(abs((b.x - a.x) / (2 * h) - fx), abs((b.y - a.y) / (2 * h) - fy))


def test_criterion_08_non_uniqueness():
    """Two admissible composites agree up to t1 and separate afterwards; both solve the ODE."""
    A = build_composite(*IC, profile_for(*IC, [1.0]))
    B = build_composite(*IC, profile_for(*IC, [1.3, 1.0]))
    t1 = A.profile.t1
    pre = np.linspace(0.0, t1, 400)
    agree = max(math.hypot(A(t).x - B(t).x, A(t).y - B(t).y) for t in pre)
    post = np.linspace(t1, t1 + 4 * math.pi, 800)
    sep = max(math.hypot(A(t).x - B(t).x, A(t).y - B(t).y) for t in post)
    res, gaps = 0.0, 0.0
    for traj in (A, B):
        switches = [traj.profile.switch_time(n) for n in range(1, 4)]
        for t in np.linspace(0.01, t1 + 4 * math.pi, 1500):
            if min(abs(t - s) for s in switches) < 1e-5 or abs(traj(t).x) < 1e-3:
                continue
            res = max(res, _ode_residual(traj, t))
        for s in switches:
            l, r = traj(s - 1e-14), traj(s + 1e-14)
            gaps = max(gaps, math.hypot(l.x - r.x, l.y - r.y))
    print(f"agree {agree:.1e}, separation {sep:.3f}, ode residual {res:.1e}, gaps {gaps:.1e}")
    assert agree < 1e-12
    assert sep > 0.5
    assert res < 1e-8
    assert gaps < 1e-12


def test_criterion_09_friction_probes():
    """|H_T - 1| strictly decreasing in gamma; H non-increasing in Omega1 along each run."""
    h = 1e-4
    T = first_arrival_time(orbit_params_from_initial(*IC)) + math.pi
    devs, worst = [], -math.inf
    for gamma in (0.1, 0.03, 0.01):
        log = integrate(*IC, IntegrationConfig(h, T, gamma=gamma))
        devs.append(abs(float(log.H[-1]) - 1.0))
        outer = (log.x > 0) & log.branch
        both = outer[:-1] & outer[1:]
        worst = max(worst, float(np.diff(log.H)[both].max()))
    print(f"T={T:.4f}: |H_T-1| = {devs}; max dH in Omega1 = {worst:.2e}")
    assert devs[0] > devs[1] > devs[2]
    assert worst <= 1e-6 * h


def test_criterion_10_convergence_order():
    """Closed-form deviation over the pre-switch lap halves when h halves."""
    p = orbit_params_from_initial(*IC)
    t1 = first_arrival_time(p)
    devs = []
    for h in (2e-4, 1e-4):
        log = integrate(*IC, IntegrationConfig(h, t1))
        ex = [closed_form_state(t, p) for t in log.t.tolist()]
        devs.append(max(math.hypot(a - s.x, b - s.y) for a, b, s in zip(log.x, log.y, ex)))
    ratio = devs[0] / devs[1]
    print(f"deviations {devs}, ratio {ratio:.3f}")
    assert 1.6 <= ratio <= 2.6


def test_criterion_11_generator():
    """Catalog and polynomial specs conserve G and mass; pressure and density checks."""
    specs = dict(catalog(0.5))
    specs["polynomial"] = GeneratorSpec.from_strings("x^2*y+y^3", "1+x^2")
    rng = np.random.default_rng(11)
    pts = DomainSpec(seed=11).sample(Region.OMEGA1, 500, rng)
    cons = cont = 0.0
    for spec in specs.values():
        for x, y in pts:
            if abs(spec.w(x, y)) <= 0.05:
                continue
            cons = max(cons, abs(conservation_residual(spec, x, y)))
            cont = max(cont, abs(continuity_residual_generic(spec, x, y)))
    path = [(1.0 + 0.1 * i, 1.0 - 0.05 * i) for i in range(40)]
    p = pressure_semi_inverse(specs["dafermos"], path)
    std = float(np.std(p - np.array([entropy(x, y) - 1.0 for x, y in path])))
    changes = max(max(density_refinement(catalog(a)["power"])[1]) for a in (0.25, 0.5, 0.75))
    print(f"conservation {cons:.1e}, continuity {cont:.1e}, pressure std {std:.1e}, "
          f"density refinement change {changes:.2e}")
    assert cons < 1e-12
    assert cont < 1e-10
    assert std < 1e-6
    assert changes < 0.01


def _random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.4:
            return Var("x")
        if r < 0.8:
            return Var("y")
        return Num(float(np.round(rng.uniform(-2, 2), 3)))
    kind = rng.integers(0, 8)
    a = _random_tree(rng, depth - 1)
    if kind <= 2:
        return BinOp("+-*"[kind], a, _random_tree(rng, depth - 1))
    if kind == 3:  # denominator bounded away from zero
        b = _random_tree(rng, depth - 1)
        return BinOp("/", a, BinOp("+", Num(1.5), Call("sin", b)))
    if kind == 4:
        return BinOp("^", a, Num(float(rng.integers(2, 4))))
    if kind == 5:
        return Neg(a)
    if kind == 6:
        return Call(("sin", "cos")[rng.integers(0, 2)], a)
    # log and sqrt of a positive argument, exp of a bounded one
    f = ("log", "sqrt", "exp")[rng.integers(0, 3)]
    inner = Call("sin", a) if f == "exp" else BinOp("+", Num(1.0), BinOp("^", a, Num(2.0)))
    return Call(f, inner)


def _fd(f, x, y, var, h=1e-3):
    if var == "x":
        g = lambda s: f(s, y)
        c = x
    else:
        g = lambda s: f(x, s)
        c = y
    return (-g(c + 2 * h) + 8 * g(c + h) - 8 * g(c - h) + g(c - 2 * h)) / (12 * h)


def test_criterion_12_parser():
    """50 seeded expressions: print/parse round trip to 1e-12, derivatives vs FD to 1e-6."""
    rng = np.random.default_rng(12)
    pts = rng.uniform(0.5, 1.5, size=(5, 2)).tolist()
    rt_err = d_err = 0.0
    for _ in range(50):
        tree = _random_tree(rng, 4)
        back = parse_expression(tree.to_string())
        for x, y in pts:
            v = tree(x, y)
            rt_err = max(rt_err, abs(back(x, y) - v) / max(1.0, abs(v)))
            for var in ("x", "y"):
                d = differentiate(tree, var)(x, y)
                d_err = max(d_err, abs(d - _fd(tree, x, y, var)) / max(1.0, abs(d)))
    cases = {"2*x*y - sin(": 12, "x +* y": 4, "(x": 1, "foo(x)": 1, "x 2": 3}
    cols = {}
    for text in cases:
        try:
            parse_expression(text)
            cols[text] = None
        except ParseError as exc:
            cols[text] = exc.column
    print(f"round trip {rt_err:.1e}, derivative {d_err:.1e}, error columns {cols}")
    assert rt_err < 1e-12
    assert d_err < 1e-6
    assert cols == cases


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
