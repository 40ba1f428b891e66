"""Rigid bodies in a potential fluid under nonholonomic constraints.

The planar case is a Chaplygin sleigh whose blade runs through a body in an
ideal fluid; its reduced dynamics, closed-form orbits and limit-circle
geometry live in :mod:`hydrosleigh.sleigh2d` and
:mod:`hydrosleigh.asymptotics`.
"""

__version__ = "0.1.0"

from .inertia import (  # noqa: E402
    BodySpec2,
    EllipseSpec,
    SleighCoefficients,
    body_inertia_2d,
    coefficients,
    ellipse_added_inertia,
    total_inertia,
)
from .sleigh2d import ClosedForm, Pose2, ReducedState, Regime  # noqa: E402
from .integrate import Trajectory, simulate_sleigh  # noqa: E402
from .report import AsymptoticsReport, build_report  # noqa: E402

__all__ = [
    "AsymptoticsReport",
    "BodySpec2",
    "ClosedForm",
    "EllipseSpec",
    "Pose2",
    "ReducedState",
    "Regime",
    "SleighCoefficients",
    "Trajectory",
    "body_inertia_2d",
    "build_report",
    "coefficients",
    "ellipse_added_inertia",
    "simulate_sleigh",
    "total_inertia",
]
