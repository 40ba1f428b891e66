"""Kinematic value types on se(2), se(3) and their duals.

Elements of the algebras are body-frame twists (angular velocity, linear
velocity); elements of the duals are body-frame momenta (impulsive pair,
impulsive force).  All types are immutable named tuples that convert to
and from flat numpy vectors, which is the layout the integrators use.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "AlgebraElement2",
    "AlgebraElement3",
    "Momentum2",
    "Momentum3",
    "coadjoint2",
    "coadjoint3",
    "pairing2",
    "pairing3",
]


def _vec3(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


class AlgebraElement3(NamedTuple):
    """Twist ``(omega, v)`` in se(3)."""

    omega: np.ndarray
    v: np.ndarray

    @classmethod
    def from_array(cls, x) -> AlgebraElement3:
        x = np.asarray(x, dtype=float)
        return cls(x[:3].copy(), x[3:6].copy())

    @classmethod
    def of(cls, omega, v) -> AlgebraElement3:
        return cls(_vec3(omega), _vec3(v))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.omega, self.v])


class Momentum3(NamedTuple):
    """Momentum ``(k, p)`` in se(3)*: impulsive pair and impulsive force."""

    k: np.ndarray
    p: np.ndarray

    @classmethod
    def from_array(cls, x) -> Momentum3:
        x = np.asarray(x, dtype=float)
        return cls(x[:3].copy(), x[3:6].copy())

    @classmethod
    def of(cls, k, p) -> Momentum3:
        return cls(_vec3(k), _vec3(p))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.k, self.p])


class AlgebraElement2(NamedTuple):
    """Planar twist ``(omega, v1, v2)`` in se(2)."""

    omega: float
    v1: float
    v2: float

    @classmethod
    def from_array(cls, x) -> AlgebraElement2:
        return cls(float(x[0]), float(x[1]), float(x[2]))

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


class Momentum2(NamedTuple):
    """Planar momentum ``(k, p1, p2)`` in se(2)*."""

    k: float
    p1: float
    p2: float

    @classmethod
    def from_array(cls, x) -> Momentum2:
        return cls(float(x[0]), float(x[1]), float(x[2]))

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


def pairing3(mu: Momentum3, xi: AlgebraElement3) -> float:
    """Duality pairing ``k . omega + p . v``."""
    return float(np.dot(mu.k, xi.omega) + np.dot(mu.p, xi.v))


def pairing2(mu: Momentum2, xi: AlgebraElement2) -> float:
    return mu.k * xi.omega + mu.p1 * xi.v1 + mu.p2 * xi.v2


def coadjoint3(xi: AlgebraElement3, mu: Momentum3) -> Momentum3:
    """Coadjoint action ``ad*_xi mu`` on se(3)*.

    With ``xi = I^-1 mu`` this is the right-hand side of the Kirchhoff
    equations::

        k' = k x omega + p x v
        p' = p x omega
    """
    k, p = np.asarray(mu.k, float), np.asarray(mu.p, float)
    w, v = np.asarray(xi.omega, float), np.asarray(xi.v, float)
    return Momentum3(np.cross(k, w) + np.cross(p, v), np.cross(p, w))


def coadjoint2(xi: AlgebraElement2, mu: Momentum2) -> Momentum2:
    """Coadjoint action on se(2)*: ``(v2 p1 - v1 p2, omega p2, -omega p1)``."""
    omega, v1, v2 = xi
    k, p1, p2 = mu
    return Momentum2(v2 * p1 - v1 * p2, omega * p2, -omega * p1)


def coadjoint3_array(xi: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Flat-vector form of :func:`coadjoint3` used on integrator hot paths."""
    w1, w2, w3, v1, v2, v3 = np.asarray(xi, dtype=float).tolist()
    k1, k2, k3, p1, p2, p3 = np.asarray(mu, dtype=float).tolist()
    return np.array([
        (k2 * w3 - k3 * w2) + (p2 * v3 - p3 * v2),
        (k3 * w1 - k1 * w3) + (p3 * v1 - p1 * v3),
        (k1 * w2 - k2 * w1) + (p1 * v2 - p2 * v1),
        p2 * w3 - p3 * w2,
        p3 * w1 - p1 * w3,
        p1 * w2 - p2 * w1,
    ])


def coadjoint2_array(xi: np.ndarray, mu: np.ndarray) -> np.ndarray:
    omega, v1, v2 = xi
    k, p1, p2 = mu
    return np.array([v2 * p1 - v1 * p2, omega * p2, -omega * p1])
