import math

import numpy as np
import pytest

from orbitswitch.dynamics import closed_form_state, entropy, orbit_params_from_initial, rhs_dafermos
from orbitswitch.trajectory import (
    EntropyProfile, acceleration_jump, build_composite, entropy_rate_select, eval_composite,
    first_arrival_time, format_profile, friction_limit_probe, is_admissible_profile,
    parse_profile, profile_for,
)

IC = (0.5, 1.125)
C0 = 1.515625


def test_first_arrival_examples():
    assert first_arrival_time(orbit_params_from_initial(2, 0)) == pytest.approx(math.pi)
    assert first_arrival_time(orbit_params_from_initial(1, 1)) == pytest.approx(1.5 * math.pi)
    for ic in [IC, (3, 0), (1, 2), (2.5, 1), (0.2, -1.5)]:
        p = orbit_params_from_initial(*ic)
        t1 = first_arrival_time(p)
        assert 0 < t1 <= 2 * math.pi
        s = closed_form_state(t1, p)
        assert abs(s.x) < 1e-10 and abs(s.y) < 1e-10


def test_profile_validation():
    with pytest.raises(ValueError):
        EntropyProfile(1.0, (1.5, 0.9))
    with pytest.raises(ValueError):
        EntropyProfile(7.0, (1.5,))
    with pytest.raises(ValueError):
        EntropyProfile(1.0, ())
    prof = EntropyProfile(1.0, (2.0, 1.5, 1.0))
    assert prof.level(10) == 1.0
    assert prof(0.5) == 2.0 and prof(1.5) == 1.5 and prof(1.0 + 2 * math.pi + 0.1) == 1.0


def test_single_level_equals_closed_form():
    traj = build_composite(*IC, profile_for(*IC, []))
    p = orbit_params_from_initial(*IC)
    for t in np.linspace(0, 30, 61):
        a, b = traj(t), closed_form_state(t, p)
        assert abs(a.x - b.x) < 1e-12 and abs(a.y - b.y) < 1e-12


def test_switch_to_unit_circle():
    traj = build_composite(*IC, profile_for(*IC, [1.0]))
    t1 = traj.profile.t1
    for t in np.linspace(t1 + 1e-3, t1 + 20, 97):
        s = traj(t)
        assert abs((s.x - 1) ** 2 + s.y ** 2 - 1) < 1e-12


def test_two_profiles_differ():
    a = build_composite(*IC, profile_for(*IC, [2.0, 1.0]))
    b = build_composite(*IC, profile_for(*IC, [1.0, 1.0]))
    t1 = a.profile.t1
    sa, sb = a(t1 + math.pi), b(t1 + math.pi)
    assert math.hypot(sa.x - sb.x, sa.y - sb.y) == pytest.approx(2.0, abs=1e-12)
    # from the second passage on both follow the unit circle again
    sa, sb = a(t1 + 3 * math.pi), b(t1 + 3 * math.pi)
    assert math.hypot(sa.x - sb.x, sa.y - sb.y) < 1e-12


def test_build_rejections():
    with pytest.raises(ValueError):
        build_composite(*IC, EntropyProfile(first_arrival_time(orbit_params_from_initial(*IC)),
                                            (1.6, 1.0)))
    with pytest.raises(ValueError):
        build_composite(*IC, EntropyProfile(1.0, (C0, 1.0)))
    with pytest.raises(ValueError):
        build_composite(1.0, 0.2, EntropyProfile(1.0, (1.0,)))
    with pytest.raises(ValueError):
        build_composite(*IC, profile_for(*IC, [0.5]))


def test_composite_continuity_and_ode():
    traj = build_composite(*IC, profile_for(*IC, [1.3, 1.1, 1.0]))
    for n in range(1, 5):
        tn = traj.profile.switch_time(n)
        s = traj(tn)
        assert abs(s.x) < 1e-12 and abs(s.y) < 1e-12
        left, right = traj(tn - 1e-13), traj(tn + 1e-13)
        assert math.hypot(left.x - right.x, left.y - right.y) < 1e-12
    h = 1e-6
    switches = [traj.profile.switch_time(n) for n in range(1, 6)]
    for t in np.linspace(0.01, 25, 301):
        if min(abs(t - s) for s in switches) < 10 * h:
            continue
        a, b, s = traj(t - h), traj(t + h), traj(t)
        if abs(s.x) < 1e-3:
            continue
        fd = ((b.x - a.x) / (2 * h), (b.y - a.y) / (2 * h))
        rhs = rhs_dafermos(s.x, s.y)
        assert max(abs(fd[0] - rhs[0]), abs(fd[1] - rhs[1])) < 1e-8


def test_piece_entropy_identity():
    traj = build_composite(*IC, profile_for(*IC, [1.3, 1.0]))
    for t in np.linspace(0.1, 20, 50):
        s = traj(t)
        if s.x > 1e-6:
            assert entropy(s.x, s.y) == pytest.approx(traj.profile(t), rel=1e-9)


def test_acceleration_jump():
    assert acceleration_jump(1.3, 1.3) == 0
    assert acceleration_jump(1.515625, 1.0) == -0.515625
    traj = build_composite(*IC, profile_for(*IC, [1.0]))
    t1, d = traj.profile.t1, 1e-7
    left = traj.velocity(t1 - d)[1]
    right = traj.velocity(t1 + d)[1]
    assert right - left == pytest.approx(acceleration_jump(C0, 1.0), abs=1e-6)
    # velocity() against one-sided differences of positions
    eps = 1e-6
    s0, s1 = traj(t1 + 2 * eps), traj(t1 + 3 * eps)
    assert (s1.y - s0.y) / eps == pytest.approx(traj.velocity(t1 + 2.5 * eps)[1], abs=1e-6)
    with pytest.raises(ValueError):
        acceleration_jump(0.5, 1.0)


def test_admissibility():
    assert is_admissible_profile([2, 1, 1])
    assert not is_admissible_profile([2, 1, 1.5])
    assert is_admissible_profile([C0])


def test_entropy_rate_select():
    r = entropy_rate_select(1.0)
    assert r.profile.levels == (1.0,)
    r = entropy_rate_select(C0)
    assert r.profile.levels == (C0, 1.0)
    assert is_admissible_profile(r.profile)
    assert r.terminal_entropy == 1.0
    assert r.first_drop == pytest.approx(C0 - 1)
    assert r.envelope_slope < 0
    with pytest.raises(ValueError):
        entropy_rate_select(0.9)


def test_profile_text_round_trip():
    prof = profile_for(*IC, [1.0])
    text = format_profile(prof)
    assert text.endswith("; 1.515625, 1")
    back = parse_profile(text)
    assert back == prof
    with pytest.raises(ValueError):
        parse_profile("1.0")
    with pytest.raises(ValueError):
        parse_profile("x; 1")


def test_friction_probe_long_run():
    H_T = friction_limit_probe(*IC, gamma=0.01, T=200.0, h=1e-3)
    assert H_T < entropy(*IC)


def test_friction_probe_requires_positive_gamma():
    with pytest.raises(ValueError):
        friction_limit_probe(*IC, gamma=0.0, T=1.0, h=1e-3)


def test_eval_composite_rejects_negative_time():
    traj = build_composite(*IC, profile_for(*IC, [1.0]))
    assert eval_composite(traj, 0.0).x == pytest.approx(0.5)
    with pytest.raises(ValueError):
        eval_composite(traj, -1.0)
