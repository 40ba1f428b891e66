import math

import numpy as np
import pytest

from hydrosleigh.eps_core import EpsSystem, Constraint, suslov, sleigh_3d
from hydrosleigh.errors import IntegrationError, InvalidSpecError
from hydrosleigh.inertia import inertia6_from_blocks
from hydrosleigh.integrate import (
    default_time_span,
    fit_circle,
    reconstruct_2d,
    rk4_integrate,
    simulate_eps,
    simulate_sleigh,
    simulate_sleigh_momentum,
)
from hydrosleigh.sleigh2d import (
    Pose2,
    Regime,
    closed_form,
    closed_form_eval,
    equilibrium,
    fit_closed_form,
    limit_radius,
    reduced_rhs,
)

from conftest import F1_TENSOR, f2_tensor, random_coefficients


def oscillator(_t, y):
    return np.array([y[1], -y[0]])


def osc_error(dt):
    _, y = rk4_integrate(oscillator, [1.0, 0.0], 0.0, math.pi / 2, dt)
    return np.abs(y[-1] - [0.0, -1.0]).max()


def test_constant():
    t, y = rk4_integrate(lambda _t, y: np.zeros_like(y), [7.0], 0.0, 3.0, 0.1)
    assert np.all(y == 7.0)
    assert t[0] == 0.0 and t[-1] == 3.0


def test_oscillator_endpoint():
    assert osc_error(1e-3) < 1e-8


def test_last_step_lands_on_t1():
    t, _ = rk4_integrate(oscillator, [1.0, 0.0], 0.0, 1.05, 0.1)
    assert t[-1] == 1.05 and np.all(np.diff(t) > 0)
    assert t[-1] - t[-2] == pytest.approx(0.05)


def test_order_four():
    ratio = osc_error(0.02) / osc_error(0.01)
    assert 8 <= ratio <= 32


@pytest.mark.parametrize("t0, t1, dt", [(0, 1, 0), (0, 1, -0.1), (1, 1, 0.1), (2, 1, 0.1)])
def test_bad_grid(t0, t1, dt):
    with pytest.raises(ValueError):
        rk4_integrate(oscillator, [1.0, 0.0], t0, t1, dt)


def test_non_finite_aborts_with_last_state():
    def blowup(t, y):
        return np.array([np.inf if t > 0.5 else 1.0])

    with pytest.raises(IntegrationError) as err:
        rk4_integrate(blowup, [0.0], 0.0, 1.0, 0.1)
    # the step starting at t = 0.5 samples t = 0.55 and fails
    assert err.value.t == pytest.approx(0.5)
    assert err.value.state[0] == pytest.approx(0.5)


def test_reconstruct_straight_line():
    t = np.linspace(0, 5, 501)
    phi, x, y = reconstruct_2d(t, np.zeros_like(t), np.ones_like(t))
    np.testing.assert_allclose(x, t, atol=1e-14)
    np.testing.assert_array_equal(y, 0)
    np.testing.assert_array_equal(phi, 0)


def test_reconstruct_circle():
    t = np.linspace(0, 2 * math.pi, 6284)
    phi, x, y = reconstruct_2d(t, np.ones_like(t), np.ones_like(t))
    np.testing.assert_allclose(x, np.sin(t), atol=1e-8)
    np.testing.assert_allclose(y, 1 - np.cos(t), atol=1e-8)
    np.testing.assert_allclose(phi, t, atol=1e-12)


def test_reconstruct_grid_mismatch():
    with pytest.raises(InvalidSpecError):
        reconstruct_2d(np.linspace(0, 1, 10), np.zeros(9), np.zeros(10))


def test_time_reversal(f2):
    y0 = np.array([0.4, -0.8])

    def fwd(_t, y):
        return np.array(reduced_rhs(f2, (y[0], y[1])))

    _, y = rk4_integrate(fwd, y0, 0.0, 5.0, 1e-3)
    _, back = rk4_integrate(lambda t, y: -fwd(t, y), y[-1], 0.0, 5.0, 1e-3)
    np.testing.assert_allclose(back[-1], y0, atol=1e-9)


def test_steady_start(f2):
    state = tuple(equilibrium(f2, 0.6))
    traj, rep = simulate_sleigh(f2_tensor(), state, t_span=(0.0, 5.0), dt=1e-2)
    np.testing.assert_allclose(traj.omega, state[0], atol=1e-13)
    np.testing.assert_allclose(traj.v1, state[1], atol=1e-13)
    assert rep.regime is Regime.STEADY
    assert rep.r == pytest.approx(abs(state[1] / state[0]), rel=1e-14)
    assert rep.r == pytest.approx(limit_radius(f2), rel=1e-12)


def test_f1_generic_start_matches_closed_form(f1):
    state = (0.3, 1.1)
    traj, rep = simulate_sleigh(F1_TENSOR, state, Pose2(0.2, 1.0, -1.0), t_span=(-10, 10))
    cf = fit_closed_form(f1, state, t=-10, phi=0.2)
    (w, v), phi = closed_form_eval(cf, traj.t)
    err = max(np.abs(traj.omega - w).max(), np.abs(traj.v1 - v).max(), np.abs(traj.phi - phi).max())
    assert err < 1e-6
    assert rep.regime is Regime.CIRCLES
    assert rep.d_formula == pytest.approx(rep.d_quadrature, rel=1e-9)
    np.testing.assert_array_equal(traj.constraint_residual, 0.0)


def test_energy_column_constant(f2):
    traj, _ = simulate_sleigh(f2, (0.0, 1.0), t_span=(0.0, 20.0), report=False)
    drift = np.abs(traj.energy - traj.energy[0]).max() / 20.0
    assert drift < 1e-8


@pytest.mark.parametrize("tensor", [F1_TENSOR, f2_tensor()], ids=["F1", "F2"])
def test_momentum_path_agrees(tensor):
    state = (0.2, 1.0)
    red, _ = simulate_sleigh(tensor, state, t_span=(0.0, 20.0), report=False)
    mom = simulate_sleigh_momentum(tensor, state, t_span=(0.0, 20.0))
    assert np.abs(red.omega - mom.omega).max() < 1e-7
    assert np.abs(red.v1 - mom.v1).max() < 1e-7
    assert np.abs(mom.constraint_residual).max() < 1e-8
    assert np.abs(mom.energy - mom.energy[0]).max() / 20.0 < 1e-8


def test_eps_constraint_residual_3d(rng):
    R = rng.normal(size=(6, 6))
    I6 = R @ R.T + 2 * np.eye(6)
    for system in (suslov(I6, (0.2, 1.0, -0.3)), sleigh_3d(I6, (0.0, 1.0, 0.4))):
        tr = simulate_eps(system, rng.normal(size=6), 0.0, 10.0, 1e-3)
        assert tr.t.size == 10001
        assert np.abs(tr.residual).max() < 1e-8
        assert np.abs(tr.energy - tr.energy[0]).max() / 10.0 < 1e-8


def test_eps_two_constraints(rng):
    I6 = inertia6_from_blocks(np.diag([1.0, 2, 3]), None, np.diag([2.0, 3, 4]))
    system = EpsSystem(I6, [Constraint([1.0, 0, 0, 0, 0, 0]), Constraint([0, 0, 0, 0, 1.0, 0])])
    tr = simulate_eps(system, rng.normal(size=6), 0.0, 5.0, 1e-3)
    assert np.abs(tr.residual).max() < 1e-8


def test_default_time_span(f2):
    cf = closed_form(f2, 2.0, t0=1.0)
    lo, hi = default_time_span(cf)
    assert (lo, hi) == (1.0 - 7.5, 1.0 + 7.5)
    assert 1 - math.tanh(cf.A * (hi - cf.t0)) < 1e-12


def test_fit_circle_exact():
    th = np.linspace(0, 5, 200)
    cx, cy, r = fit_circle(3 + 0.5 * np.cos(th), -2 + 0.5 * np.sin(th))
    assert (cx, cy, r) == pytest.approx((3, -2, 0.5), abs=1e-12)


def test_f2_tail_circle(f2):
    cf = fit_closed_form(f2, (0.0, 1.0))
    t_start = cf.t0 - 25 / cf.A
    state, _ = closed_form_eval(cf, t_start)
    traj, _ = simulate_sleigh(f2, tuple(state), t_span=(t_start, cf.t0 + 25 / cf.A), report=False)
    n = len(traj) // 4
    _, _, r = fit_circle(traj.x[-n:], traj.y[-n:])
    assert r == pytest.approx(0.10610, abs=1e-3)


def test_center_point_velocity_vanishes(f2):
    # spatial speed of the body point (0, -L1/Z) is |L1 omega + Z v1| / |Z|
    cf = closed_form(f2, 0.8)
    span = (-20 / cf.A, 20 / cf.A)
    state, _ = closed_form_eval(cf, span[0])
    traj, _ = simulate_sleigh(f2, tuple(state), t_span=span, report=False)
    speed = np.abs(f2.L1 * traj.omega + f2.Z * traj.v1) / abs(f2.Z)
    assert speed[0] < 1e-4 and speed[-1] < 1e-4
    assert speed.max() > 0.1


def test_batched_coefficients_integrate():
    rng = np.random.default_rng(5)
    from hydrosleigh.inertia import SleighCoefficients

    cs = [random_coefficients(rng, 0.1) for _ in range(4)]
    batch = SleighCoefficients.stack(cs)
    y0 = rng.normal(size=(2, 4))
    _, yb = rk4_integrate(lambda _t, y: np.array(reduced_rhs(batch, (y[0], y[1]))), y0, 0, 2, 1e-2)
    for j, c in enumerate(cs):
        _, y = rk4_integrate(lambda _t, y: np.array(reduced_rhs(c, (y[0], y[1]))), y0[:, j], 0, 2, 1e-2)
        np.testing.assert_allclose(yb[:, :, j], y, atol=1e-14)
