"""Body, added and total inertia tensors for the planar and spatial problems.

Planar tensors act on ``(omega, v1, v2)`` and are laid out as::

    [[ J,  -L2,  L1],
     [-L2,   M,   Z],
     [ L1,   Z,   N]]

in a body frame centred at the blade contact point with ``E1`` along the
blade.  Spatial tensors are 6x6 and act on ``(omega, V)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTensorError, InvalidSpecError, SingularTensorError

__all__ = [
    "BodySpec2",
    "EllipseSpec",
    "SleighCoefficients",
    "body_inertia_2d",
    "body_inertia_3d",
    "check_positive_definite",
    "coefficients",
    "ellipse_added_inertia",
    "inertia6_from_blocks",
    "invert3",
    "tensor_from_coefficients",
    "total_inertia",
]

SYMMETRY_TOL = 1e-12
MINOR_TOL = 1e-12


@dataclass(frozen=True)
class BodySpec2:
    """Planar rigid body.

    ``(a, b)`` are the body coordinates of the centre of mass relative to the
    contact point and ``moment`` is the moment of inertia about the centre of
    mass.
    """

    m: float
    a: float
    b: float
    moment: float

    def __post_init__(self):
        if not (self.m > 0 and math.isfinite(self.m)):
            raise InvalidSpecError(f"body mass must be positive, got m={self.m}")
        if not (self.moment > 0 and math.isfinite(self.moment)):
            raise InvalidSpecError(
                f"body moment of inertia must be positive, got {self.moment}"
            )
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidSpecError("centre of mass coordinates must be finite")


@dataclass(frozen=True)
class EllipseSpec:
    """Elliptical hull centred on the contact point.

    ``theta`` is the counter-clockwise angle from the blade to the major axis.
    """

    rho: float
    semi_major: float
    semi_minor: float
    theta: float = 0.0

    def __post_init__(self):
        if not (self.rho >= 0 and math.isfinite(self.rho)):
            raise InvalidSpecError(f"fluid density must be >= 0, got {self.rho}")
        if not self.semi_minor > 0:
            raise InvalidSpecError(
                f"semi-minor axis must be positive, got {self.semi_minor}"
            )
        if self.semi_major < self.semi_minor:
            raise InvalidSpecError(
                f"semi-major axis {self.semi_major} is smaller than "
                f"semi-minor axis {self.semi_minor}"
            )
        if not math.isfinite(self.theta):
            raise InvalidSpecError("ellipse angle must be finite")


def _as_square(t, n: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if t.shape != (n, n):
        raise InvalidSpecError(f"expected a {n}x{n} tensor, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InvalidSpecError("tensor entries must be finite")
    return t


def check_positive_definite(t, name: str = "tensor") -> np.ndarray:
    """Validate symmetry and positive definiteness via leading principal minors.

    Raises :class:`DegenerateTensorError` when either check fails.  Returns
    the tensor as a float array.
    """
    t = np.asarray(t, dtype=float)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise InvalidSpecError(f"{name} must be square, got shape {t.shape}")
    scale = float(np.max(np.abs(t))) if t.size else 0.0
    if scale == 0.0:
        raise DegenerateTensorError(f"{name} is identically zero")
    if np.max(np.abs(t - t.T)) > SYMMETRY_TOL * scale:
        raise DegenerateTensorError(f"{name} is not symmetric")
    for k in range(1, t.shape[0] + 1):
        minor = np.linalg.det(t[:k, :k])
        if not minor > MINOR_TOL * scale**k:
            raise DegenerateTensorError(
                f"{name} is not positive definite "
                f"(leading minor {k} = {minor:.6g})"
            )
    return t


def body_inertia_2d(spec: BodySpec2) -> np.ndarray:
    m, a, b = spec.m, spec.a, spec.b
    return np.array(
        [
            [spec.moment + m * (a * a + b * b), -m * b, m * a],
            [-m * b, m, 0.0],
            [m * a, 0.0, m],
        ]
    )


def ellipse_added_inertia(spec: EllipseSpec) -> np.ndarray:
    """Added inertia of an ellipse in unbounded potential flow, origin at its centre.

    The result is only positive semidefinite: a circle carries no added
    rotational inertia and ``rho = 0`` gives the zero tensor.
    """
    A2, B2 = spec.semi_major**2, spec.semi_minor**2
    c, s = math.cos(spec.theta), math.sin(spec.theta)
    off = 0.5 * (A2 - B2) * math.sin(2.0 * spec.theta)
    return spec.rho * math.pi * np.array(
        [
            [0.25 * (A2 - B2) ** 2, 0.0, 0.0],
            [0.0, B2 * c * c + A2 * s * s, off],
            [0.0, off, A2 * c * c + B2 * s * s],
        ]
    )


def total_inertia(body, added) -> np.ndarray:
    """Sum body and added tensors and check that the total is positive definite."""
    body = np.asarray(body, dtype=float)
    added = np.asarray(added, dtype=float)
    if body.shape != added.shape:
        raise InvalidSpecError(
            f"body tensor {body.shape} and added tensor {added.shape} differ in shape"
        )
    return check_positive_definite(body + added, "total inertia tensor")


def body_inertia_3d(m: float, inertia, coupling=None) -> np.ndarray:
    """6x6 body tensor from mass, 3x3 inertia and optional 3x3 coupling block.

    The coupling block vanishes when the body frame origin is the centre of
    mass.
    """
    if not m > 0:
        raise InvalidSpecError(f"body mass must be positive, got m={m}")
    return inertia6_from_blocks(inertia, coupling, m * np.eye(3))


def inertia6_from_blocks(rotational, coupling=None, translational=None) -> np.ndarray:
    """Assemble ``[[I, K], [K^T, M]]``; missing blocks are zero."""
    rot = _as_square(rotational, 3)
    K = np.zeros((3, 3)) if coupling is None else _as_square(coupling, 3)
    M = np.zeros((3, 3)) if translational is None else _as_square(translational, 3)
    return np.block([[rot, K], [K.T, M]])


@dataclass(frozen=True)
class SleighCoefficients:
    """Scalar entries of the planar total inertia tensor.

    Fields may also hold equal-shape numpy arrays, in which case every derived
    quantity and the reduced vector field broadcast over them.  That is how
    batches of sleighs are integrated together.
    """

    J: float
    M: float
    N: float
    L1: float
    L2: float
    Z: float

    @property
    def D(self):
        return self.M * self.J - self.L2**2

    @property
    def E(self):
        return self.J * self.Z**2 + 2.0 * self.L1 * self.L2 * self.Z + self.M * self.L1**2

    @classmethod
    def stack(cls, items) -> SleighCoefficients:
        items = list(items)
        return cls(
            **{
                f: np.array([getattr(c, f) for c in items])
                for f in ("J", "M", "N", "L1", "L2", "Z")
            }
        )

    def tensor(self) -> np.ndarray:
        return tensor_from_coefficients(self)


def coefficients(tensor) -> SleighCoefficients:
    t = check_positive_definite(_as_square(tensor, 3), "total inertia tensor")
    return SleighCoefficients(
        J=float(t[0, 0]),
        M=float(t[1, 1]),
        N=float(t[2, 2]),
        L1=float(t[0, 2]),
        L2=float(-t[0, 1]),
        Z=float(t[1, 2]),
    )


def tensor_from_coefficients(c: SleighCoefficients) -> np.ndarray:
    return np.array(
        [[c.J, -c.L2, c.L1], [-c.L2, c.M, c.Z], [c.L1, c.Z, c.N]], dtype=float
    )


def invert3(tensor) -> np.ndarray:
    """Explicit adjugate inverse of a planar inertia tensor."""
    t = _as_square(tensor, 3)
    J, L2, L1 = t[0, 0], -t[0, 1], t[0, 2]
    M, Z, N = t[1, 1], t[1, 2], t[2, 2]
    det = J * (M * N - Z * Z) + L2 * (-L2 * N - Z * L1) + L1 * (-L2 * Z - M * L1)
    if not det > 1e-14 * np.linalg.norm(t) ** 3:
        raise SingularTensorError(f"tensor is numerically singular (det={det:.3g})")
    adj = np.array(
        [
            [M * N - Z * Z, Z * L1 + N * L2, -Z * L2 - M * L1],
            [Z * L1 + N * L2, J * N - L1 * L1, -L1 * L2 - J * Z],
            [-Z * L2 - M * L1, -L1 * L2 - J * Z, J * M - L2 * L2],
        ]
    )
    return adj / det
