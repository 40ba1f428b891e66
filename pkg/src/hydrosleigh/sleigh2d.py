"""Reduced dynamics of the planar Chaplygin sleigh in a potential fluid.

With the blade constraint ``v2 = 0`` the state reduces to ``(omega, v1)``::

    omega' = (L1 omega + Z v1)(L2 omega - M v1) / D
    v1'    = (L1 omega + Z v1)(J omega  - L2 v1) / D

with ``D = M J - L2**2``.  The line ``L1 omega + Z v1 = 0`` consists of
equilibria, and every other orbit is an arc of an energy ellipse running
from an unstable to a stable equilibrium on that line.  The general orbit is
known in closed form and is implemented in :func:`closed_form_eval`.

All functions broadcast over numpy arrays in the state and, through
:meth:`SleighCoefficients.stack`, in the coefficients.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import RegimeError
from .inertia import SleighCoefficients, invert3

__all__ = [
    "ClosedForm",
    "Pose2",
    "ReducedState",
    "Regime",
    "bracket_factor",
    "center_point",
    "closed_form",
    "closed_form_eval",
    "energy",
    "equilibrium",
    "fit_closed_form",
    "heading_change_z0",
    "lagrange_multiplier",
    "limit_radius",
    "log_cosh",
    "reduced_rhs",
    "regime",
    "separatrix",
    "stability_eigenvalue",
]


class ReducedState(NamedTuple):
    omega: float
    v1: float


class Pose2(NamedTuple):
    phi: float = 0.0
    x: float = 0.0
    y: float = 0.0


class Regime(str, enum.Enum):
    """Asymptotic behaviour class of a tensor (or of a particular motion)."""

    CIRCLES = "circles"      # Z != 0: limit circles of radius |L1/Z|
    LINES = "lines"          # Z == 0, L1 != 0: limit straight lines
    STEADY = "steady"        # L1 == Z == 0, or a start on the equilibrium line


def regime(coeffs: SleighCoefficients) -> Regime:
    if coeffs.Z != 0:
        return Regime.CIRCLES
    if coeffs.L1 != 0:
        return Regime.LINES
    return Regime.STEADY


def separatrix(coeffs: SleighCoefficients, s: ReducedState):
    """``L1 omega + Z v1``; zero exactly on the line of equilibria."""
    return coeffs.L1 * s[0] + coeffs.Z * s[1]


def reduced_rhs(coeffs: SleighCoefficients, s: ReducedState):
    c = coeffs
    omega, v1 = s
    g = (c.L1 * omega + c.Z * v1) / c.D
    return (g * (c.L2 * omega - c.M * v1), g * (c.J * omega - c.L2 * v1))


def lagrange_multiplier(tensor, s: ReducedState) -> float:
    """Blade reaction keeping ``v2 = 0`` in the momentum equations."""
    t = np.asarray(tensor, dtype=float)
    inv = invert3(t)
    k, p1, p2 = t @ np.array([s[0], s[1], 0.0])
    free = np.array([-s[1] * p2, s[0] * p2, -s[0] * p1])
    return float(-(inv[2] @ free) / inv[2, 2])


def energy(coeffs: SleighCoefficients, s: ReducedState):
    c = coeffs
    omega, v1 = s
    return 0.5 * (c.J * omega**2 + c.M * v1**2 - 2.0 * c.L2 * omega * v1)


def bracket_factor(coeffs: SleighCoefficients, s: ReducedState):
    """Structure function ``-(L1 omega + Z v1)/D`` of the reduced Poisson bracket.

    The flow is ``(omega', v1') = factor * (dH/dv1, -dH/domega)``.
    """
    return -separatrix(coeffs, s) / coeffs.D


def _require_nondegenerate(coeffs: SleighCoefficients):
    if coeffs.L1 == 0 and coeffs.Z == 0:
        raise RegimeError(
            "L1 = Z = 0: every reduced state is an equilibrium "
            "(no isolated equilibrium family)"
        )


def _require_circles(coeffs: SleighCoefficients, what: str):
    if coeffs.Z == 0:
        raise RegimeError(
            f"{what} is undefined for Z = 0: the limit motions are straight lines"
        )


def equilibrium(coeffs: SleighCoefficients, s_param: float) -> ReducedState:
    """Point of the equilibrium line, parameterised as ``(-Z s, L1 s)``."""
    _require_nondegenerate(coeffs)
    return ReducedState(-coeffs.Z * s_param, coeffs.L1 * s_param)


def stability_eigenvalue(coeffs: SleighCoefficients, s_param: float) -> float:
    """Nonzero eigenvalue of the linearisation at ``equilibrium(coeffs, s)``.

    Equals ``-s E / D``: the equilibria with ``s > 0`` attract and those with
    ``s < 0`` repel.  The other eigenvalue is zero, along the line itself.
    """
    _require_nondegenerate(coeffs)
    return -s_param * coeffs.E / coeffs.D


def limit_radius(coeffs: SleighCoefficients) -> float:
    """Radius ``|L1/Z|`` of the circles traced by the contact point as t -> +-inf."""
    _require_circles(coeffs, "limit radius")
    return abs(coeffs.L1 / coeffs.Z)


def center_point(coeffs: SleighCoefficients) -> tuple[float, float]:
    """Body-frame point ``(0, -L1/Z)`` whose limit positions are the circle centres."""
    _require_circles(coeffs, "limit circle centre")
    return (0.0, -coeffs.L1 / coeffs.Z)


def heading_change_z0(coeffs: SleighCoefficients, sigma: int = 1) -> float:
    """Angle between the past and future limit lines when ``Z = 0``."""
    if coeffs.Z != 0:
        raise RegimeError("heading change between limit lines requires Z = 0")
    if coeffs.L1 == 0:
        raise RegimeError("L1 = Z = 0: the motion is steady, there are no limit lines")
    return sigma * math.pi * math.sqrt(coeffs.D) * coeffs.M * coeffs.L1 / coeffs.E


@dataclass(frozen=True)
class ClosedForm:
    """Parameters of one orbit of the reduced system.

    ``t0`` is the time at which the orbit passes its symmetric point, where
    ``omega = A sigma c1`` and ``v1 = A sigma c2``; the textbook form has
    ``t0 = 0``.
    """

    A: float
    sigma: int
    alpha: float
    beta: float
    c1: float
    c2: float
    phi0: float = 0.0
    t0: float = 0.0

    def at(self, t):
        return closed_form_eval(self, t)


def closed_form(
    coeffs: SleighCoefficients, A: float, sigma: int = 1, phi0: float = 0.0, t0: float = 0.0
) -> ClosedForm:
    c = coeffs
    if not c.E > 0:
        raise RegimeError("closed form needs E > 0, i.e. (L1, Z) != (0, 0)")
    if A < 0:
        raise ValueError(f"amplitude A must be >= 0, got {A}")
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    D, E, sD = c.D, c.E, math.sqrt(c.D)
    return ClosedForm(
        A=float(A),
        sigma=int(sigma),
        alpha=-D * c.Z / E,
        beta=D * c.L1 / E,
        c1=sD * (c.Z * c.L2 + c.M * c.L1) / E,
        c2=sD * (c.L1 * c.L2 + c.Z * c.J) / E,
        phi0=float(phi0),
        t0=float(t0),
    )


def log_cosh(x):
    """``ln cosh x`` without overflow for large ``|x|``."""
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def _sech(x):
    ax = np.abs(x)
    e = np.exp(-ax)
    return 2.0 * e / (1.0 + e * e)


def _phi1(cf: ClosedForm, T):
    # 2 arctan(e^T) - pi/2 == 2 arctan(tanh(T/2)), overflow-free
    return 2.0 * cf.sigma * cf.c1 * np.arctan(np.tanh(0.5 * T))


def closed_form_eval(cf: ClosedForm, t):
    """Reduced state and heading at time(s) ``t``.

    Returns ``(ReducedState(omega, v1), phi)``; each entry has the shape of
    ``t``.
    """
    T = cf.A * (np.asarray(t, dtype=float) - cf.t0)
    th, sh = np.tanh(T), _sech(T)
    omega = cf.A * (cf.alpha * th + cf.sigma * cf.c1 * sh)
    v1 = cf.A * (cf.beta * th + cf.sigma * cf.c2 * sh)
    phi = _phi1(cf, T) + cf.alpha * log_cosh(T) + cf.phi0
    if np.ndim(T) == 0:
        return ReducedState(float(omega), float(v1)), float(phi)
    return ReducedState(omega, v1), phi


def fit_closed_form(
    coeffs: SleighCoefficients, state: ReducedState, t: float = 0.0, phi: float = 0.0
) -> ClosedForm:
    """Closed-form orbit passing through ``state`` with heading ``phi`` at time ``t``.

    ``A`` comes from the energy, ``sigma`` and the time shift from inverting
    the tanh/sech parameterisation, and the heading offset is absorbed into
    ``phi0``.  Raises :class:`RegimeError` for a state on the equilibrium
    line, which no finite-time point of a heteroclinic orbit reaches.
    """
    c = coeffs
    base = closed_form(c, 0.0)
    H = float(energy(c, state))
    A = math.sqrt(2.0 * H * c.E) / c.D
    if A == 0.0:
        return replace(base, phi0=float(phi), t0=float(t))
    g = float(separatrix(c, state))
    if g == 0.0:
        raise RegimeError("state lies on the equilibrium line: the motion is steady")
    # [[alpha, c1], [beta, c2]] (tanh, sigma sech) = state / A
    det = base.alpha * base.c2 - base.beta * base.c1
    w0, w1 = state[0] / A, state[1] / A
    u = (base.c2 * w0 - base.c1 * w1) / det
    w = (base.alpha * w1 - base.beta * w0) / det
    if w == 0.0:
        raise RegimeError("state lies on the equilibrium line: the motion is steady")
    sigma = 1 if w > 0 else -1
    tau = math.asinh(u / abs(w))
    cf = ClosedForm(A, sigma, base.alpha, base.beta, base.c1, base.c2, 0.0, float(t) - tau / A)
    _, phi_t = closed_form_eval(cf, t)
    return replace(cf, phi0=float(phi) - phi_t)
