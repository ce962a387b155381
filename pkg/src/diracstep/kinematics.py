"""Dimensionless kinematics of a Dirac plane wave hitting an electrostatic step.

All quantities are measured in units of the incident energy E, so the medium
is fixed by ``mu = m/E`` and ``nu = V0/E``.  Angles are radians measured from
the step normal (the x axis).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass


class Side(str, enum.Enum):
    """Which side of ``nu = 1`` the step sits on."""

    DIFFUSION = "diffusion"
    KLEIN = "klein"


class Zone(str, enum.Enum):
    DIFFUSION_OSCILLATORY = "diffusion_oscillatory"
    KLEIN_OSCILLATORY = "klein_oscillatory"
    TUNNELING_SUB = "tunneling_sub"
    TUNNELING_KLEIN = "tunneling_klein"

    @property
    def oscillatory(self) -> bool:
        return self in (Zone.DIFFUSION_OSCILLATORY, Zone.KLEIN_OSCILLATORY)


class DegenerateTransmission(ValueError):
    """The transmitted wave has zero momentum or zero energy; amplitudes are singular."""


class NormalFluxZero(ValueError):
    """Grazing incidence: the incident flux through the interface vanishes."""


@dataclass(frozen=True)
class MediumParams:
    """Step parameters ``mu = m/E`` and ``nu = V0/E``.

    Negative ``mu`` is accepted; it describes the charge-conjugated problem
    produced by :func:`diracstep.entanglement.antiparticle_transform`.
    """

    mu: float
    nu: float

    def __post_init__(self):
        if not abs(self.mu) < 1.0:
            raise ValueError(f"|mu| must be < 1 for a propagating incident wave, got mu={self.mu}")
        if not self.nu >= 0.0:
            raise ValueError(f"nu must be >= 0, got nu={self.nu}")

    @property
    def side(self) -> Side:
        return Side.KLEIN if self.nu > 1.0 else Side.DIFFUSION

    @classmethod
    def from_critical(cls, mu: float, sin_theta_c: float, side: Side | str) -> "MediumParams":
        return cls(mu, nu_from_critical(mu, sin_theta_c, side))


@dataclass(frozen=True)
class RefractionResult:
    """Transmitted-wave geometry for one incidence angle.

    ``sin_theta_prime``/``cos_theta_prime`` are complex in general: past the
    critical angle ``cos_theta_prime`` sits on the +i branch so the wave decays
    for x > 0.  Below threshold (``(1-nu)**2 < mu**2``) the momentum itself is
    imaginary and the sine picks up the imaginary part instead.

    ``match_odd``/``match_even`` are the ratios of transmitted to incident
    spinor normalisation on the odd and even parity blocks; they are the
    coefficients multiplying ``T+ -/+ T-`` in the interface matching.
    """

    sin_theta_prime: complex
    cos_theta_prime: complex
    evanescent: bool
    momentum: complex
    normal_momentum: complex
    match_odd: complex
    match_even: complex


def _check_angle(theta: float) -> None:
    if not 0.0 <= theta < math.pi / 2:
        raise ValueError(f"incidence angle must lie in [0, pi/2), got theta={theta}")


def _decaying_sqrt(x: float) -> complex:
    # +i branch for negative arguments: exp(i*k*x) decays for x > 0
    return complex(math.sqrt(x), 0.0) if x >= 0 else complex(0.0, math.sqrt(-x))


def critical_sine_squared(params: MediumParams) -> float:
    """sin^2 of the critical angle; may be negative or exceed 1."""
    mu, nu = params.mu, params.nu
    return ((1.0 - nu) ** 2 - mu**2) / (1.0 - mu**2)


def nu_from_critical(mu: float, sin_theta_c: float, side: Side | str) -> float:
    """Step height reproducing a given critical angle on the requested side of nu = 1."""
    side = Side(side)
    if not abs(mu) < 1.0:
        raise ValueError(f"|mu| must be < 1, got {mu}")
    if not 0.0 <= sin_theta_c <= 1.0:
        raise ValueError(f"sin_theta_c must lie in [0, 1], got {sin_theta_c}")
    r = math.sqrt(mu**2 + (1.0 - mu**2) * sin_theta_c**2)
    return 1.0 - r if side is Side.DIFFUSION else 1.0 + r


def classify(params: MediumParams, theta: float) -> Zone:
    _check_angle(theta)
    mu, nu = params.mu, params.nu
    r = math.sqrt((1.0 - mu**2) * math.sin(theta) ** 2 + mu**2)
    if 1.0 > nu + r:
        return Zone.DIFFUSION_OSCILLATORY
    if abs(mu) < 1.0 < nu - r:
        return Zone.KLEIN_OSCILLATORY
    return Zone.TUNNELING_SUB if nu <= 1.0 else Zone.TUNNELING_KLEIN


def refract(params: MediumParams, theta: float) -> RefractionResult:
    """Relativistic Snell refraction plus the interface matching coefficients."""
    _check_angle(theta)
    mu, nu = params.mu, params.nu
    energy = 1.0 - nu
    q2 = energy**2 - mu**2
    if q2 == 0.0:
        raise DegenerateTransmission(f"transmitted momentum vanishes: (1-nu)^2 = mu^2 at mu={mu}, nu={nu}")
    if energy == 0.0:
        raise DegenerateTransmission(f"transmitted energy E - V0 vanishes at nu={nu}")

    p = math.sqrt(1.0 - mu**2)
    q = _decaying_sqrt(q2)
    # q_x^2 = q^2 - p_y^2 = (1 - mu^2)(sin^2 theta_c - sin^2 theta)
    qx2 = (1.0 - mu**2) * (critical_sine_squared(params) - math.sin(theta) ** 2)
    qx = _decaying_sqrt(qx2)

    # Normalisations of the helicity spinors, c = sqrt((E-m)/4E), K = (E+m)/|p|.
    # K' = (E'+m)/q keeps the sign of E'+m, so Klein-zone states are genuine
    # negative-energy eigenstates.
    c_in = math.sqrt((1.0 - mu) / 4.0)
    k_in = (1.0 + mu) / p
    c_out = cmath.sqrt((energy - mu) / (4.0 * energy))
    k_out = (energy + mu) / q
    return RefractionResult(
        sin_theta_prime=p * math.sin(theta) / q,
        cos_theta_prime=qx / q,
        evanescent=qx2 <= 0.0,
        momentum=q,
        normal_momentum=qx,
        match_odd=c_out / c_in,
        match_even=c_out * k_out / (c_in * k_in),
    )


def flux_ratio(params: MediumParams, theta: float) -> float:
    """Ratio v_{q,x} / v_{p,x} of normal velocities, transmitted over incident.

    Negative in the Klein zone, exactly zero past the critical angle.
    """
    if math.isclose(theta, math.pi / 2, rel_tol=0.0, abs_tol=1e-15):
        raise NormalFluxZero("incident normal velocity vanishes at theta = pi/2")
    refr = refract(params, theta)
    if refr.evanescent:
        return 0.0
    mu, nu = params.mu, params.nu
    v_q = refr.cos_theta_prime.real * math.sqrt((1.0 - nu) ** 2 - mu**2) / (1.0 - nu)
    v_p = math.cos(theta) * math.sqrt(1.0 - mu**2)
    return v_q / v_p
