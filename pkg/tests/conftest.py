import math

import numpy as np
import pytest

from hydrosleigh.inertia import (
    BodySpec2,
    EllipseSpec,
    SleighCoefficients,
    body_inertia_2d,
    coefficients,
    ellipse_added_inertia,
    total_inertia,
)

F1_TENSOR = np.array([[2.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, 3.0]])
F2_BODY = BodySpec2(m=1.0, a=0.5, b=0.3, moment=0.5)
F2_FLUID = EllipseSpec(rho=1.0, semi_major=2.0, semi_minor=1.0, theta=math.pi / 4)


def f2_tensor() -> np.ndarray:
    return total_inertia(body_inertia_2d(F2_BODY), ellipse_added_inertia(F2_FLUID))


def random_tensor(rng: np.random.Generator, min_abs_z: float = 0.0) -> np.ndarray:
    """Well-conditioned random planar inertia tensor."""
    while True:
        R = rng.uniform(-1.0, 1.0, (3, 3))
        t = R @ R.T + rng.uniform(0.3, 1.5) * np.eye(3)
        if abs(t[1, 2]) >= min_abs_z:
            return t


def random_coefficients(rng, min_abs_z: float = 0.0) -> SleighCoefficients:
    return coefficients(random_tensor(rng, min_abs_z))


@pytest.fixture
def f1() -> SleighCoefficients:
    return coefficients(F1_TENSOR)


@pytest.fixture
def f2() -> SleighCoefficients:
    return coefficients(f2_tensor())


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
