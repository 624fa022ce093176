"""Exact classical Gaussian-beam model of the interferometer output.

The output field is a sum of up to three shifted Gaussians
coeff * exp(-(y - shift)^2), one per interferometer path, with beam width
fixed to 1 (shifts are measured in beam widths). Overlap integrals of
shifted Gaussians have closed forms, so the total-intensity and quad-cell
detector signals are exact and O(1) per time sample; quadrature versions
exist only as independent test oracles.
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np


@functools.lru_cache(maxsize=8)
def _leggauss_cached(nodes: int):
    return np.polynomial.legendre.leggauss(nodes)

from .scenario import MIRRORS, Scenario

SQRT_HALF_PI = math.sqrt(math.pi / 2.0)


@dataclass(frozen=True)
class BeamComponent:
    """One Gaussian addend coeff * exp(-(y - shift)^2)."""

    coeff: complex
    shift: float


@dataclass(frozen=True)
class BeamField:
    components: tuple

    def value(self, y):
        """Field amplitude at y (scalar or numpy array)."""
        total = 0j if np.isscalar(y) else np.zeros(np.shape(y), dtype=complex)
        for c in self.components:
            total = total + c.coeff * np.exp(-((y - c.shift) ** 2))
        return total

    def max_abs_shift(self) -> float:
        return max((abs(c.shift) for c in self.components), default=0.0)


def mirror_shifts(scenario: Scenario, t: float) -> dict:
    """d_i(t) = amplitude_i * sin(2 pi f_i t) for every mirror."""
    return {
        m: scenario.vib_amplitude[m]
        * math.sin(2.0 * math.pi * scenario.mirror_freq[m] * t)
        for m in MIRRORS
    }


def field_at(scenario: Scenario, t: float) -> BeamField:
    """Three-path output field; zero-coefficient components are dropped."""
    d = mirror_shifts(scenario, t)
    outer = d["E"] + d["F"]
    raw = (
        (complex(scenario.kappa), d["C"]),
        (-1.0 + 0j, d["A"] + outer),
        (cmath.exp(1j * scenario.phi), d["B"] + outer),
    )
    return BeamField(
        tuple(BeamComponent(c, s) for c, s in raw if c != 0)
    )


def total_intensity(field: BeamField) -> float:
    """I_T = integral |Psi|^2 dy, in closed form.

    integral exp(-(y-a)^2) exp(-(y-b)^2) dy = sqrt(pi/2) exp(-(a-b)^2/2).
    """
    comps = field.components
    total = sum(abs(c.coeff) ** 2 for c in comps)
    for j in range(len(comps)):
        for k in range(j + 1, len(comps)):
            cj, ck = comps[j], comps[k]
            cross = (cj.coeff * ck.coeff.conjugate()).real
            total += 2.0 * cross * math.exp(-((cj.shift - ck.shift) ** 2) / 2.0)
    return SQRT_HALF_PI * total


def total_intensity_quadrature(
    field: BeamField, half_width: float = 8.0, step: float = 1e-3
) -> float:
    """Trapezoid oracle for total_intensity over y in [-half_width, half_width]."""
    if half_width < 8.0:
        raise ValueError("half_width must be >= 8")
    if step > 1e-2:
        raise ValueError("step must be <= 1e-2")
    n = int(round(2.0 * half_width / step)) + 1
    y = np.linspace(-half_width, half_width, n)
    if not field.components:
        return 0.0
    return float(np.trapezoid(np.abs(field.value(y)) ** 2, y))


def quadcell_signal(field: BeamField) -> float:
    """Quad-cell difference dI = int_0^inf |Psi|^2 - int_-inf^0 |Psi|^2.

    Closed form: each Gaussian pair contributes
    sqrt(pi/2) * exp(-(a-b)^2/2) * erf((a+b)/sqrt(2)).
    """
    comps = field.components
    total = 0.0
    for j in range(len(comps)):
        for k in range(len(comps)):
            cj, ck = comps[j], comps[k]
            cross = (cj.coeff * ck.coeff.conjugate()).real
            if cross == 0.0:
                continue
            total += (
                cross
                * math.exp(-((cj.shift - ck.shift) ** 2) / 2.0)
                * math.erf((cj.shift + ck.shift) / math.sqrt(2.0))
            )
    return SQRT_HALF_PI * total


def quadcell_signal_quadrature(
    field: BeamField, half_width: float = 8.0, nodes: int = 400
) -> float:
    """Gauss-Legendre oracle for quadcell_signal, one rule per half-line.

    A fixed high-order rule is used instead of the trapezoid because the
    integrand is truncated at y = 0 where its derivatives do not vanish.
    """
    if half_width < 8.0:
        raise ValueError("half_width must be >= 8")
    if nodes < 16:
        raise ValueError("nodes must be >= 16")
    x, w = _leggauss_cached(nodes)
    # map [-1, 1] -> [0, half_width]
    y = 0.5 * half_width * (x + 1.0)
    wy = 0.5 * half_width * w
    pos = float(np.sum(wy * np.abs(field.value(y)) ** 2))
    neg = float(np.sum(wy * np.abs(field.value(-y)) ** 2))
    return pos - neg


def linearized_profile(scenario: Scenario, t: float):
    """First-order field: Psi_lin(y) = exp(-y^2) * (s0 + 2 s1 y).

    Each component is expanded exp(-(y-d)^2) ~ exp(-y^2)(1 + 2 y d), so
    s0 = sum of coefficients and s1 = sum of coeff * shift. For the
    blocked-arm case the static parts cancel (s0 = 0) and Psi_lin reduces
    to 2 y exp(-y^2) (d_B - d_A).
    """
    field = field_at(scenario, t)
    s0 = sum(c.coeff for c in field.components)
    s1 = sum(c.coeff * c.shift for c in field.components)
    return s0, s1


def linearized_field_intensity(scenario: Scenario, t: float):
    """(I_T, dI) of the linearized field, closed form.

    With Psi_lin = exp(-y^2)(s0 + 2 s1 y):
      I_T  = sqrt(pi/2) (|s0|^2 + |s1|^2)
      dI   = 2 Re(s0 conj(s1))
    using the Gaussian moments int exp(-2y^2) = sqrt(pi/2),
    int y^2 exp(-2y^2) = sqrt(pi/2)/4 and int_0^inf y exp(-2y^2) = 1/4.
    """
    s0, s1 = linearized_profile(scenario, t)
    i_lin = SQRT_HALF_PI * (abs(s0) ** 2 + abs(s1) ** 2)
    di_lin = 2.0 * (s0 * s1.conjugate()).real
    return i_lin, di_lin


def second_order_intensity(scenario: Scenario, t: float) -> float:
    """Taylor expansion of total_intensity through second order in shifts.

    I_T / sqrt(pi/2) = sum_j |c_j|^2
                     + sum_{j != k} c_j conj(c_k) (1 - (s_j - s_k)^2 / 2).
    Predicts which doubled tones survive per case; differs from the exact
    value at fourth order in the shifts. The smallness bound applies to the
    individual mirror shifts (component shifts are sums of up to three).
    """
    bound = max(abs(d) for d in mirror_shifts(scenario, t).values())
    if bound > 0.05:
        raise ValueError(f"mirror shift {bound} exceeds the 0.05 expansion bound")
    field = field_at(scenario, t)
    comps = field.components
    total = sum(abs(c.coeff) ** 2 for c in comps)
    for j in range(len(comps)):
        for k in range(len(comps)):
            if j == k:
                continue
            cj, ck = comps[j], comps[k]
            cross = (cj.coeff * ck.coeff.conjugate()).real
            total += cross * (1.0 - ((cj.shift - ck.shift) ** 2) / 2.0)
    return SQRT_HALF_PI * total
