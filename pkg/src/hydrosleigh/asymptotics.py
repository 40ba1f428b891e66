"""Displacement between the two limit circles of a fluid sleigh.

Three independent routes evaluate the vector joining the circle centres:

* :func:`center_displacement_quadrature` integrates the velocity of the
  body point ``C = (0, -L1/Z)`` over the whole orbit numerically;
* :func:`center_displacement_gamma` evaluates the same integrals through
  Euler Beta functions of complex argument;
* :func:`center_distance_sq` is the elementary closed form for the
  squared length.

``complex_gamma`` and ``complex_beta`` are self-contained (Lanczos) so
that the Beta route does not lean on the library used by the tests.
"""
from __future__ import annotations

import cmath
import math

from scipy.integrate import quad

from .errors import PoleError, RegimeError
from .inertia import SleighCoefficients
from .sleigh2d import closed_form, log_cosh

__all__ = [
    "center_displacement_gamma",
    "center_displacement_quadrature",
    "center_distance",
    "center_distance_sq",
    "complex_beta",
    "complex_gamma",
]

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

T_MAX = 40.0


def _is_pole(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _sinpi(z: complex) -> complex:
    # sin(pi z) with the real part reduced to [-1/2, 1/2] so that it stays
    # accurate next to the integers
    n = round(z.real)
    r = z.real - n
    s, c = math.sin(math.pi * r), math.cos(math.pi * r)
    if n % 2:
        s, c = -s, -c
    y = math.pi * z.imag
    return complex(s * math.cosh(y), c * math.sinh(y))


def complex_gamma(z) -> complex:
    """Euler Gamma function on the complex plane."""
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.pi / (_sinpi(z) * complex_gamma(1.0 - z))
    z -= 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def complex_beta(x, y) -> complex:
    x, y = complex(x), complex(y)
    for name, v in (("x", x), ("y", y), ("x + y", x + y)):
        if _is_pole(v):
            raise PoleError(f"Beta argument {name} = {v} is a Gamma pole")
    return complex_gamma(x) * complex_gamma(y) / complex_gamma(x + y)


def _circle_params(coeffs: SleighCoefficients):
    if coeffs.Z == 0:
        raise RegimeError(
            "Z = 0: the limit motions are straight lines, the distance "
            "between limit circle centres is undefined"
        )
    cf = closed_form(coeffs, 1.0)
    return cf.alpha, cf.c1, math.sqrt(coeffs.D) / coeffs.Z


def center_displacement_quadrature(
    coeffs: SleighCoefficients, phi0: float = 0.0, sigma: int = 1, epsabs: float = 1e-11
) -> tuple[float, float]:
    """Centre-to-centre vector ``(dx, dy)`` by adaptive quadrature.

    Integrates over the rescaled time ``T = A t`` on ``[-T_MAX, T_MAX]``, so
    the result is independent of the orbit amplitude.  The integrand decays
    like ``sech T`` and the truncated tails are below 1e-17.
    """
    alpha, c1, scale = _circle_params(coeffs)

    def envelope(T):
        return math.cos(2.0 * c1 * math.atan(math.tanh(0.5 * T))) / math.cosh(T)

    def fx(T):
        return envelope(T) * math.cos(alpha * log_cosh(T) + phi0)

    def fy(T):
        return envelope(T) * math.sin(alpha * log_cosh(T) + phi0)

    out = []
    for f in (fx, fy):
        total = 0.0
        for a, b in ((-T_MAX, 0.0), (0.0, T_MAX)):
            val, _ = quad(f, a, b, epsabs=epsabs, epsrel=1e-12, limit=1000)
            total += val
        out.append(sigma * scale * total)
    return out[0], out[1]


def center_displacement_gamma(coeffs: SleighCoefficients, sigma: int = 1) -> complex:
    """``dx + i dy`` through Beta functions, for the heading offset ``phi0 = alpha ln 2``."""
    alpha, c1, scale = _circle_params(coeffs)
    b = complex_beta(1.0 + 0.5 * (c1 + 1j * alpha), 1.0 + 0.5 * (-c1 + 1j * alpha))
    conj = sigma * scale * 4.0 ** (-1j * alpha) * math.pi / ((1.0 + 1j * alpha) * b)
    return conj.conjugate()


def _cosh_minus_cos_over_sinh(x: float, y: float) -> float:
    """``(cosh x - cos y) / sinh x`` evaluated through ``exp(-|x|)``."""
    ax = abs(x)
    e = math.exp(-ax)
    num = math.expm1(-ax) ** 2 + 4.0 * e * math.sin(0.5 * y) ** 2
    return math.copysign(num / -math.expm1(-2.0 * ax), x)


def center_distance_sq(coeffs: SleighCoefficients) -> float:
    """Squared distance between the centres of the two limit circles.

    Depends only on the inertia tensor, not on the energy of the orbit.
    """
    alpha, c1, _ = _circle_params(coeffs)
    D, Z = coeffs.D, coeffs.Z
    return (
        2.0 * math.pi * D / Z**2
        * (alpha / (c1 * c1 + alpha * alpha))
        * _cosh_minus_cos_over_sinh(math.pi * alpha, math.pi * c1)
    )


def center_distance(coeffs: SleighCoefficients) -> float:
    return math.sqrt(center_distance_sq(coeffs))
