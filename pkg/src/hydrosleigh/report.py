"""Asymptotic summary of a sleigh motion."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from .asymptotics import center_displacement_quadrature, center_distance_sq
from .eps_core import measure_exists_2d, measure_residual_2d
from .errors import RegimeError
from .inertia import SleighCoefficients
from .sleigh2d import (
    ReducedState,
    Regime,
    center_point,
    closed_form,
    energy,
    fit_closed_form,
    heading_change_z0,
    limit_radius,
    regime,
    separatrix,
)

__all__ = ["AsymptoticsReport", "build_report"]


@dataclass
class AsymptoticsReport:
    regime: Regime
    tensor_regime: Regime
    energy: float
    A: Optional[float] = None
    sigma: Optional[int] = None
    r: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    c1: Optional[float] = None
    c2: Optional[float] = None
    d_formula: Optional[float] = None
    d_quadrature: Optional[float] = None
    delta_phi: Optional[float] = None
    center_point: Optional[tuple[float, float]] = None
    measure_exists: bool = False
    measure_residuals: tuple[float, float] = field(default=(0.0, 0.0))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["regime"] = self.regime.value
        out["tensor_regime"] = self.tensor_regime.value
        for key in ("center_point", "measure_residuals"):
            if out[key] is not None:
                out[key] = list(out[key])
        return out

    def require(self, *names: str) -> None:
        """Raise :class:`RegimeError` if any named quantity is undefined."""
        for name in names:
            if getattr(self, name) is None:
                raise RegimeError(
                    f"{name} is not defined for a tensor in the "
                    f"{self.tensor_regime.value!r} regime"
                )


def build_report(
    coeffs: SleighCoefficients, initial: ReducedState, quadrature: bool = True
) -> AsymptoticsReport:
    c = coeffs
    treg = regime(c)
    res = measure_residual_2d(c)
    rep = AsymptoticsReport(
        regime=treg,
        tensor_regime=treg,
        energy=float(energy(c, initial)),
        measure_exists=measure_exists_2d(c),
        measure_residuals=(float(res[0]), float(res[1])),
    )
    if treg is Regime.STEADY or separatrix(c, initial) == 0:
        rep.regime = Regime.STEADY
        rep.r = abs(initial[1] / initial[0]) if initial[0] != 0 else None
    if treg is not Regime.STEADY:
        if rep.regime is Regime.STEADY:
            cf = closed_form(c, 0.0)
        else:
            cf = fit_closed_form(c, initial)
            rep.A, rep.sigma = cf.A, cf.sigma
        rep.alpha, rep.beta, rep.c1, rep.c2 = cf.alpha, cf.beta, cf.c1, cf.c2
    if treg is Regime.CIRCLES:
        if rep.regime is not Regime.STEADY:
            rep.r = limit_radius(c)
        rep.center_point = center_point(c)
        rep.d_formula = math.sqrt(center_distance_sq(c))
        if quadrature:
            dx, dy = center_displacement_quadrature(c)
            rep.d_quadrature = math.hypot(dx, dy)
    elif treg is Regime.LINES:
        rep.delta_phi = heading_change_z0(c, rep.sigma or 1)
    return rep
