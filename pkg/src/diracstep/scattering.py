"""Closed-form reflection and transmission amplitudes for the step."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .kinematics import MediumParams, RefractionResult, Side, critical_sine_squared


class SingularDenominator(ArithmeticError):
    pass


@dataclass(frozen=True)
class IncidentAmplitudes:
    """Helicity +1 / -1 amplitudes of the incoming wave, normalised to 1."""

    i_plus: complex
    i_minus: complex

    def __post_init__(self):
        norm = abs(self.i_plus) ** 2 + abs(self.i_minus) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"incident amplitudes must satisfy |I+|^2 + |I-|^2 = 1, got {norm!r}")

    @classmethod
    def polar(cls, mag_plus: float, mag_minus: float, delta_omega: float = 0.0,
              phase: float = 0.0) -> "IncidentAmplitudes":
        """Build I+ = |I+| e^{i w+}, I- = |I-| e^{i w-} with w+ - w- = delta_omega."""
        return cls(
            mag_plus * cmath.exp(1j * (phase + delta_omega / 2)),
            mag_minus * cmath.exp(1j * (phase - delta_omega / 2)),
        )

    @property
    def pair(self) -> tuple[complex, complex]:
        return self.i_plus, self.i_minus


@dataclass(frozen=True)
class ScatteredAmplitudes:
    r_plus: complex
    r_minus: complex
    t_plus: complex
    t_minus: complex

    @property
    def reflected(self) -> tuple[complex, complex]:
        return self.r_plus, self.r_minus

    @property
    def transmitted(self) -> tuple[complex, complex]:
        return self.t_plus, self.t_minus

    @property
    def reflection(self) -> float:
        return abs(self.r_plus) ** 2 + abs(self.r_minus) ** 2

    @property
    def transmission(self) -> float:
        return abs(self.t_plus) ** 2 + abs(self.t_minus) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.r_plus, self.r_minus, self.t_plus, self.t_minus], dtype=complex)


@dataclass(frozen=True)
class AParam:
    """The reflection parameter A together with its analytic partner.

    ``partner`` is A with the numerator ``mu cos(theta) + i sin(theta)``
    conjugated but the square root left on its continued branch.  Below the
    critical angle it is exactly ``conj(value)``; past it the two differ, and
    ``re_part``/``im_part`` become the complex symmetric and antisymmetric
    combinations that replace Re A and Im A in the amplitude formulas.
    """

    value: complex
    partner: complex
    zone_side: Side
    oscillatory: bool = True

    @property
    def re_part(self) -> complex:
        return (self.value + self.partner) / 2

    @property
    def im_part(self) -> complex:
        return (self.value - self.partner) / 2j


def _a_param(mu: float, theta: float, sin2_c: float, side: Side) -> AParam:
    cos2_c = 1.0 - sin2_c
    # mu^2 cos^2 + sin^2 equals (1-nu)^2 >= 0; clip round-off
    root_c = math.sqrt(max(mu**2 * cos2_c + sin2_c, 0.0))
    sign = 1.0 if side is Side.DIFFUSION else -1.0
    gap = sin2_c - math.sin(theta) ** 2
    oscillatory = gap > 0.0
    root = complex(math.sqrt(gap)) if gap >= 0.0 else 1j * math.sqrt(-gap)

    c = math.cos(theta)
    den = cos2_c - (1.0 + sign * root_c) * (c**2 + c * root)
    scale = abs(cos2_c) + abs(1.0 + sign * root_c) * (c**2 + c * abs(root))
    if abs(den) <= 1e-14 * max(scale, 1e-300):
        raise SingularDenominator(
            f"A denominator vanishes at mu={mu}, theta={theta}, sin^2(theta_c)={sin2_c}, side={side.value}"
        )
    s = math.sin(theta)
    return AParam(
        value=(mu * c + 1j * s) * cos2_c / den,
        partner=(mu * c - 1j * s) * cos2_c / den,
        zone_side=side,
        oscillatory=oscillatory,
    )


def compute_A(mu: float, theta: float, sin_theta_c: float, zone_side: Side | str) -> AParam:
    return _a_param(mu, theta, sin_theta_c**2, Side(zone_side))


def a_param_for(params: MediumParams, theta: float) -> AParam:
    """A for a medium given by (mu, nu); handles sin^2(theta_c) < 0."""
    return _a_param(params.mu, theta, critical_sine_squared(params), params.side)


def scatter(A: AParam, theta: float, refr: RefractionResult, inc: IncidentAmplitudes) -> ScatteredAmplitudes:
    """Map incident helicity amplitudes to (R+, R-, T+, T-).

    Reflected amplitudes follow ``R(+/-) = +/- i Im[A] I(+/-) -/+ Re[A] I(-/+)``.
    Transmitted amplitudes come from the interface matching: the sum and
    difference channels ``T+ +/- T-`` are fixed by ``I+ +/- I-`` through the
    even/odd coefficients of ``refr``.
    """
    ip, im = inc.pair
    re_a, im_a = A.re_part, A.im_part
    r_plus = 1j * im_a * ip - re_a * im
    r_minus = -1j * im_a * im + re_a * ip

    e = cmath.exp(1j * theta)
    t_sum = (1.0 - e * A.partner) * (ip + im) / refr.match_even
    t_diff = (1.0 + e * A.value) * (ip - im) / refr.match_odd
    return ScatteredAmplitudes(r_plus, r_minus, (t_sum + t_diff) / 2, (t_sum - t_diff) / 2)


def conservation_residual(amps: ScatteredAmplitudes, flux_ratio: float) -> float:
    return amps.reflection + flux_ratio * amps.transmission - 1.0


def reflected_product_with_phase(A: AParam, mags: tuple[float, float], delta_omega: float) -> float:
    """|R+|^2 |R-|^2 for incident moduli ``mags`` and relative phase ``delta_omega``.

    Below the critical angle this is the four-term expansion in Re A, Im A and
    sin(delta_omega).  Past it Re A and Im A are complex and the expansion is
    replaced by the product of the two moduli written with the same
    variables.
    """
    p, n = mags
    x, y = A.im_part, A.re_part
    if A.oscillatory:
        x, y = x.real, y.real
        xy = x * y
        d = x * x - y * y
        s = math.sin(delta_omega)
        pn = p * n
        return (xy**2 + d**2 * pn**2
                - 2.0 * xy * d * s * pn * (p**2 - n**2)
                - 4.0 * xy**2 * s**2 * pn**2)
    cross = x * y.conjugate()
    plus = abs(x) ** 2 * p**2 + abs(y) ** 2 * n**2 + 2 * p * n * (cross * cmath.exp(1j * delta_omega)).imag
    minus = abs(x) ** 2 * n**2 + abs(y) ** 2 * p**2 + 2 * p * n * (cross * cmath.exp(-1j * delta_omega)).imag
    return plus * minus
