"""Euler-Poincare-Suslov dynamics on se(2)* and se(3)*.

A system is a positive definite inertia tensor together with fixed
constraint covectors ``nu_i``.  Velocities are admissible when
``<nu_i, I^-1 mu> = 0``; reaction forces act along the ``nu_i`` with
multipliers fixed by requiring the constraints to persist.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ConstraintDegeneracyError, InvalidSpecError
from .inertia import SleighCoefficients, check_positive_definite
from .lie_se import coadjoint2_array, coadjoint3_array

__all__ = [
    "Constraint",
    "EpsSystem",
    "MeasureCheck",
    "eps_rhs",
    "kirchhoff_free",
    "measure_exists_2d",
    "measure_residual_2d",
    "measure_residual_3d",
    "planar_sleigh",
    "sleigh_3d",
    "suslov",
]

log = logging.getLogger(__name__)

PROJECTION_TOL = 1e-9
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class Constraint:
    nu: np.ndarray
    label: str = ""

    def __post_init__(self):
        nu = np.asarray(self.nu, dtype=float)
        if nu.ndim != 1 or not np.all(np.isfinite(nu)):
            raise InvalidSpecError("constraint covector must be a finite vector")
        if not np.any(nu):
            raise InvalidSpecError(f"constraint {self.label!r} has a zero covector")
        object.__setattr__(self, "nu", nu)


@dataclass(eq=False)
class EpsSystem:
    """Inertia tensor plus constraints, with derived matrices cached.

    The tensor and constraints are treated as read-only after construction.
    ``projections`` counts how often a state had to be pulled back onto the
    constraint surface, as a diagnostic for long integrations.
    """

    inertia: np.ndarray
    constraints: Sequence[Constraint] = ()
    projections: int = field(default=0, init=False)

    def __post_init__(self):
        self.inertia = check_positive_definite(self.inertia, "inertia tensor")
        dim = self.inertia.shape[0]
        if dim not in (3, 6):
            raise InvalidSpecError(
                f"inertia must be 3x3 (se(2)) or 6x6 (se(3)), got {dim}x{dim}"
            )
        self.constraints = tuple(self.constraints)
        for c in self.constraints:
            if c.nu.shape != (dim,):
                raise InvalidSpecError(
                    f"constraint {c.label!r} has dimension {c.nu.size}, expected {dim}"
                )
        if len(self.constraints) > dim - 1:
            raise ConstraintDegeneracyError(
                f"at most {dim - 1} constraints allowed, got {len(self.constraints)}"
            )
        self.inertia_inv = np.linalg.inv(self.inertia)
        self.nu = np.array([c.nu for c in self.constraints]).reshape(-1, dim)
        self.gram = self.nu @ self.inertia_inv @ self.nu.T
        if self.nu.shape[0]:
            s = np.linalg.svd(self.gram, compute_uv=False)
            if s[-1] <= SINGULAR_TOL * s[0]:
                raise ConstraintDegeneracyError("constraint covectors are dependent")
        self._coadjoint = coadjoint3_array if dim == 6 else coadjoint2_array

    @property
    def dim(self) -> int:
        return self.inertia.shape[0]

    def velocity(self, mu) -> np.ndarray:
        return self.inertia_inv @ np.asarray(mu, dtype=float)

    def momentum(self, xi) -> np.ndarray:
        return self.inertia @ np.asarray(xi, dtype=float)

    def energy(self, mu) -> float:
        mu = np.asarray(mu, dtype=float)
        return 0.5 * float(mu @ self.inertia_inv @ mu)

    def residual(self, mu) -> np.ndarray:
        """Constraint values ``<nu_i, I^-1 mu>``."""
        return self.nu @ self.velocity(mu)

    def project(self, mu) -> np.ndarray:
        """Shift ``mu`` along ``I nu_i`` so that every constraint holds."""
        mu = np.asarray(mu, dtype=float)
        if not self.nu.shape[0]:
            return mu
        r = self.residual(mu)
        x = np.linalg.solve(self.nu @ self.nu.T, r)
        return mu - self.inertia @ (self.nu.T @ x)

    def multipliers(self, mu) -> np.ndarray:
        xi = self.velocity(mu)
        free = self._coadjoint(xi, mu)
        return _solve_pivoted(self.gram, -(self.nu @ (self.inertia_inv @ free)))


def _solve_pivoted(G: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting for the tiny multiplier system."""
    n = b.size
    if n == 0:
        return b
    if n == 1:
        g = float(G[0, 0])
        if g == 0.0:
            raise ConstraintDegeneracyError("singular multiplier system")
        return np.array([float(b[0]) / g])
    a = np.column_stack([G.astype(float), b.astype(float)])
    scale = np.max(np.abs(G))
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[piv, col]) <= SINGULAR_TOL * scale:
            raise ConstraintDegeneracyError("singular multiplier system")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        a[col + 1 :] -= np.outer(a[col + 1 :, col] / a[col, col], a[col])
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (a[row, n] - a[row, row + 1 : n] @ x[row + 1 :]) / a[row, row]
    return x


def eps_rhs(system: EpsSystem, mu, with_multipliers: bool = False):
    """Momentum derivative ``ad*_{I^-1 mu} mu + sum_i lambda_i nu_i``.

    States more than ``PROJECTION_TOL`` (relative) off the constraint surface
    are projected first and ``system.projections`` is incremented.  With
    ``with_multipliers`` the multipliers are returned as a second value.
    """
    mu = np.asarray(mu, dtype=float)
    if system.nu.shape[0]:
        r = system.residual(mu)
        scale = max(np.linalg.norm(system.velocity(mu)), 1.0)
        if np.max(np.abs(r)) > PROJECTION_TOL * scale:
            system.projections += 1
            log.debug("projecting state with constraint residual %s", r)
            mu = system.project(mu)
    xi = system.inertia_inv @ mu
    free = system._coadjoint(xi, mu)
    if system.nu.shape[0]:
        lam = _solve_pivoted(system.gram, -(system.nu @ (system.inertia_inv @ free)))
        out = free + system.nu.T @ lam
    else:
        lam = np.zeros(0)
        out = free
    return (out, lam) if with_multipliers else out


def kirchhoff_free(inertia) -> EpsSystem:
    """Unconstrained Kirchhoff equations on se(3)*."""
    return EpsSystem(np.asarray(inertia, dtype=float))


def suslov(inertia, a) -> EpsSystem:
    """Hydrodynamic Suslov problem: constraint ``a . omega = 0``."""
    return EpsSystem(
        np.asarray(inertia, dtype=float),
        [Constraint(np.concatenate([np.asarray(a, float), np.zeros(3)]), "suslov")],
    )


def sleigh_3d(inertia, F) -> EpsSystem:
    """Underwater sleigh with a fin: constraint ``F . V = 0``."""
    return EpsSystem(
        np.asarray(inertia, dtype=float),
        [Constraint(np.concatenate([np.zeros(3), np.asarray(F, float)]), "fin")],
    )


def planar_sleigh(tensor) -> EpsSystem:
    """Planar sleigh on se(2)*: blade constraint ``v2 = 0``."""
    return EpsSystem(np.asarray(tensor, dtype=float), [Constraint([0.0, 0.0, 1.0], "blade")])


class MeasureCheck(NamedTuple):
    residual: np.ndarray
    c: float
    exists: bool


def measure_residual_3d(inertia, a, F, rtol: float = 1e-10) -> MeasureCheck:
    """Smooth invariant measure test for one constraint ``a.omega + F.V = 0``.

    With ``(U, W) = I^-1 (a, F)`` a measure exists iff
    ``(a x U + F x W, F x U)`` is a multiple ``c (a, F)``.  The best ``c`` is
    found by least squares and the remainder is returned.
    """
    a = np.asarray(a, dtype=float)
    F = np.asarray(F, dtype=float)
    nu = np.concatenate([a, F])
    nn = float(nu @ nu)
    if nn == 0.0:
        raise InvalidSpecError("constraint (a, F) must be nonzero")
    inv = np.linalg.inv(check_positive_definite(inertia, "inertia tensor"))
    UW = inv @ nu
    U, W = UW[:3], UW[3:]
    lhs = np.concatenate([np.cross(a, U) + np.cross(F, W), np.cross(F, U)])
    c = float(lhs @ nu) / nn
    r = lhs - c * nu
    scale = nn * np.linalg.norm(inv, 2)
    return MeasureCheck(r, c, bool(np.linalg.norm(r) <= rtol * scale))


def measure_residual_2d(coeffs: SleighCoefficients) -> tuple[float, float]:
    """The pair ``(M L1 + Z L2, L1 L2 + J Z)``; both vanish iff a measure exists."""
    c = coeffs
    return (c.M * c.L1 + c.Z * c.L2, c.L1 * c.L2 + c.J * c.Z)


def measure_exists_2d(coeffs: SleighCoefficients, rtol: float = 0.0) -> bool:
    r1, r2 = measure_residual_2d(coeffs)
    c = coeffs
    tol = rtol * max(abs(c.J), abs(c.M), abs(c.L1), abs(c.L2), abs(c.Z)) ** 2
    return abs(r1) <= tol and abs(r2) <= tol
