"""Fixed-step integration, planar reconstruction and sleigh simulation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .eps_core import EpsSystem, eps_rhs, planar_sleigh
from .errors import IntegrationError, InvalidSpecError
from .inertia import SleighCoefficients, coefficients, tensor_from_coefficients
from .sleigh2d import ClosedForm, Pose2, ReducedState, energy, reduced_rhs

__all__ = [
    "EpsTrajectory",
    "Trajectory",
    "default_time_span",
    "fit_circle",
    "reconstruct_2d",
    "rk4_integrate",
    "simulate_eps",
    "simulate_sleigh",
    "simulate_sleigh_momentum",
]

DEFAULT_DT = 1e-3


def _time_grid(t0: float, t1: float, dt: float) -> np.ndarray:
    if not dt > 0:
        raise ValueError(f"step must be positive, got dt={dt}")
    if not t1 > t0:
        raise ValueError(f"end time must exceed start time, got [{t0}, {t1}]")
    n = math.ceil((t1 - t0) / dt - 1e-9)
    t = t0 + dt * np.arange(n + 1, dtype=float)
    t[-1] = t1
    return t


def rk4_integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0,
    t0: float,
    t1: float,
    dt: float = DEFAULT_DT,
) -> tuple[np.ndarray, np.ndarray]:
    """Classical fourth-order Runge-Kutta on a uniform grid.

    The last step is shortened to land on ``t1``.  ``y0`` may have any
    shape; ``rhs(t, y)`` must return an array of the same shape.

    Returns
    -------
    t : ndarray, shape (n,)
    y : ndarray, shape (n, *y0.shape)
    """
    t = _time_grid(t0, t1, dt)
    y = np.asarray(y0, dtype=float).copy()
    out = np.empty((t.size,) + y.shape)
    out[0] = y
    for i in range(t.size - 1):
        ti, h = t[i], t[i + 1] - t[i]
        k1 = np.asarray(rhs(ti, y))
        k2 = np.asarray(rhs(ti + 0.5 * h, y + 0.5 * h * k1))
        k3 = np.asarray(rhs(ti + 0.5 * h, y + 0.5 * h * k2))
        k4 = np.asarray(rhs(ti + h, y + h * k3))
        step = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(step)):
            raise IntegrationError(
                f"non-finite derivative at t={ti:.17g}", float(ti), y.copy()
            )
        y = y + step
        out[i + 1] = y
    return t, out


def reconstruct_2d(t, omega, v1, pose0: Pose2 = Pose2(), domega=None, dv1=None):
    """Integrate ``phi' = omega, x' = v1 cos phi, y' = v1 sin phi`` on the grid ``t``.

    Each step is an RK4 step; midpoint values of ``omega`` and ``v1`` come
    from cubic Hermite interpolation using the derivatives ``domega`` and
    ``dv1`` (estimated by finite differences when not supplied).

    Returns ``(phi, x, y)`` arrays sampled on ``t``.
    """
    t = np.asarray(t, dtype=float)
    omega = np.asarray(omega, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    if t.ndim != 1 or omega.shape != t.shape or v1.shape != t.shape:
        raise InvalidSpecError(
            f"time grid {t.shape}, omega {omega.shape} and v1 {v1.shape} must match"
        )
    if t.size < 2 or np.any(np.diff(t) <= 0):
        raise InvalidSpecError("time grid must be strictly increasing with >= 2 samples")
    if domega is None:
        domega = np.gradient(omega, t, edge_order=2)
    if dv1 is None:
        dv1 = np.gradient(v1, t, edge_order=2)
    h = np.diff(t)
    w0, w1 = omega[:-1], omega[1:]
    u0, u1 = v1[:-1], v1[1:]
    w_mid = 0.5 * (w0 + w1) + h * (domega[:-1] - domega[1:]) / 8.0
    u_mid = 0.5 * (u0 + u1) + h * (dv1[:-1] - dv1[1:]) / 8.0

    dphi = h / 6.0 * (w0 + 4.0 * w_mid + w1)
    phi = pose0.phi + np.concatenate([[0.0], np.cumsum(dphi)])
    p = phi[:-1]
    # RK4 stage headings: phi + h/2 k1, phi + h/2 k2, phi + h k3
    s2 = p + 0.5 * h * w0
    s3 = p + 0.5 * h * w_mid
    s4 = p + h * w_mid
    dx = h / 6.0 * (u0 * np.cos(p) + 2.0 * u_mid * (np.cos(s2) + np.cos(s3)) + u1 * np.cos(s4))
    dy = h / 6.0 * (u0 * np.sin(p) + 2.0 * u_mid * (np.sin(s2) + np.sin(s3)) + u1 * np.sin(s4))
    x = pose0.x + np.concatenate([[0.0], np.cumsum(dx)])
    y = pose0.y + np.concatenate([[0.0], np.cumsum(dy)])
    return phi, x, y


@dataclass
class Trajectory:
    """Sampled planar sleigh motion, one array per column."""

    t: np.ndarray
    omega: np.ndarray
    v1: np.ndarray
    phi: np.ndarray
    x: np.ndarray
    y: np.ndarray
    energy: np.ndarray
    constraint_residual: np.ndarray

    COLUMNS = ("t", "omega", "v1", "phi", "x", "y", "energy", "constraint_residual")

    def __len__(self):
        return self.t.size

    def as_array(self) -> np.ndarray:
        return np.column_stack([getattr(self, c) for c in self.COLUMNS])


def _as_coeffs(coeffs_or_tensor) -> SleighCoefficients:
    if isinstance(coeffs_or_tensor, SleighCoefficients):
        coefficients(tensor_from_coefficients(coeffs_or_tensor))  # validates
        return coeffs_or_tensor
    return coefficients(coeffs_or_tensor)


def _reduced_trajectory(c: SleighCoefficients, initial, pose0, t_span, dt) -> Trajectory:
    def rhs(_t, y):
        return np.array(reduced_rhs(c, (y[0], y[1])))

    t, y = rk4_integrate(rhs, [initial[0], initial[1]], t_span[0], t_span[1], dt)
    omega, v1 = y[:, 0], y[:, 1]
    domega, dv1 = reduced_rhs(c, (omega, v1))
    phi, x, yy = reconstruct_2d(t, omega, v1, pose0, domega, dv1)
    return Trajectory(
        t, omega, v1, phi, x, yy, energy(c, (omega, v1)), np.zeros_like(t)
    )


def default_time_span(cf: ClosedForm, width: float = 15.0) -> tuple[float, float]:
    """Window of ``+-width/A`` around the orbit's symmetric time.

    With the default width, ``tanh`` is saturated to about 1e-13 at both ends.
    """
    if cf.A <= 0:
        return (-width, width)
    return (cf.t0 - width / cf.A, cf.t0 + width / cf.A)


def simulate_sleigh(
    coeffs_or_tensor,
    initial: ReducedState,
    pose0: Pose2 = Pose2(),
    t_span: tuple[float, float] = (-10.0, 10.0),
    dt: float = DEFAULT_DT,
    report: bool = True,
    quadrature: bool = True,
):
    """Integrate the reduced equations and reconstruct the planar motion.

    ``t_span[0]`` is the time at which ``initial`` and ``pose0`` hold.
    Returns ``(trajectory, report)``; ``report`` is ``None`` when
    ``report=False``.
    """
    from .report import build_report

    c = _as_coeffs(coeffs_or_tensor)
    traj = _reduced_trajectory(c, initial, pose0, t_span, dt)
    rep = build_report(c, initial, quadrature=quadrature) if report else None
    return traj, rep


def simulate_sleigh_momentum(
    tensor, initial: ReducedState, pose0: Pose2 = Pose2(), t_span=(0.0, 10.0), dt=DEFAULT_DT
) -> Trajectory:
    """Same motion integrated in momentum space through the generic EPS path.

    The constraint residual column holds ``v2``, which the reduced path
    enforces identically.
    """
    system = planar_sleigh(tensor)
    mu0 = system.momentum([initial[0], initial[1], 0.0])
    ep = simulate_eps(system, mu0, t_span[0], t_span[1], dt)
    xi = ep.mu @ system.inertia_inv.T
    phi, x, y = reconstruct_2d(ep.t, xi[:, 0], xi[:, 1], pose0)
    return Trajectory(ep.t, xi[:, 0], xi[:, 1], phi, x, y, ep.energy, ep.residual[:, 0])


@dataclass
class EpsTrajectory:
    t: np.ndarray
    mu: np.ndarray
    energy: np.ndarray
    residual: np.ndarray

    def velocities(self, system: EpsSystem) -> np.ndarray:
        return self.mu @ system.inertia_inv.T


def simulate_eps(system: EpsSystem, mu0, t0: float, t1: float, dt: float = DEFAULT_DT):
    mu0 = np.asarray(mu0, dtype=float)
    if system.nu.shape[0]:
        mu0 = system.project(mu0)
    t, mu = rk4_integrate(lambda _t, m: eps_rhs(system, m), mu0, t0, t1, dt)
    xi = mu @ system.inertia_inv.T
    en = 0.5 * np.einsum("ij,ij->i", mu, xi)
    res = xi @ system.nu.T
    return EpsTrajectory(t, mu, en, res)


def fit_circle(x, y) -> tuple[float, float, float]:
    """Algebraic least-squares (Kasa) circle fit; returns ``(cx, cy, r)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mx, my = x.mean(), y.mean()
    u, v = x - mx, y - my
    A = np.column_stack([u, v, np.ones_like(u)])
    b = -(u * u + v * v)
    (p, q, s), *_ = np.linalg.lstsq(A, b, rcond=None)
    cu, cv = -0.5 * p, -0.5 * q
    return float(cu + mx), float(cv + my), float(math.sqrt(cu * cu + cv * cv - s))
