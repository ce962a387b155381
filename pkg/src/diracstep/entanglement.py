"""Parity-spin entanglement, parity and chirality of the three plane waves.

Every wave alpha in {I, R, T} is a superposition a+ psi+ + a- psi- of the two
helicity bi-spinors.  Its parity/spin structure is fixed by one number,
kappa_alpha, the ratio of the small to the large parity block; the reduced
spectrum then depends only on kappa and on |a+|, |a-|.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy.optimize import minimize_scalar
from scipy.special import entr

from .config import StepConfig
from .kinematics import (MediumParams, RefractionResult, Side, Zone, classify,
                         critical_sine_squared, flux_ratio, refract)
from .scattering import (AParam, IncidentAmplitudes, ScatteredAmplitudes,
                         a_param_for, conservation_residual, scatter)

LN2 = math.log(2.0)


class Wave(str, enum.Enum):
    INCIDENT = "incident"
    REFLECTED = "reflected"
    TRANSMITTED = "transmitted"


class EvanescentKappa(ValueError):
    """kappa_T is not real: the transmitted momentum is imaginary."""


class ZeroAmplitudes(ValueError):
    pass


class PreconditionPhase(ValueError):
    """The closed-form extremal points need real incident amplitudes."""


@dataclass(frozen=True)
class KappaFactor:
    """Small-over-large parity block ratio of a wave.

    ``even_dominant`` tells which block is the large one: the even block for
    positive-energy states, the odd block for the negative-energy transmitted
    wave of the Klein zone.
    """

    value: float
    wave: Wave
    even_dominant: bool = True


@dataclass(frozen=True)
class ReducedSpectrum:
    lambda_plus: float
    lambda_minus: float


@dataclass(frozen=True)
class EntanglementReport:
    entropy: float
    spectrum: ReducedSpectrum
    p_odd: float
    p_even: float
    avg_parity: float
    chirality: float


def kappa(wave: Wave | str, mu: float, nu: float) -> KappaFactor:
    wave = Wave(wave)
    if wave is not Wave.TRANSMITTED:
        return KappaFactor(math.sqrt((1.0 - mu) / (1.0 + mu)), wave)
    energy = 1.0 - nu
    if energy > 0:
        num, den, even = energy - mu, energy + mu, True
    else:
        # Klein zone: 1 - nu -> nu - 1
        num, den, even = -energy - mu, -energy + mu, False
    if not (num > 0 and den > 0):
        raise EvanescentKappa(f"kappa_T is not real at mu={mu}, nu={nu}: |1 - nu| <= |mu|")
    return KappaFactor(math.sqrt(num / den), wave, even)


def parity_observables(k: KappaFactor) -> tuple[float, float, float]:
    """(p_odd, p_even, <P>) with P = +1 on the even block."""
    k2 = k.value**2
    large, small = 1.0 / (1.0 + k2), k2 / (1.0 + k2)
    p_even, p_odd = (large, small) if k.even_dominant else (small, large)
    return p_odd, p_even, p_even - p_odd


def reduced_spectrum(k: KappaFactor, a_plus: complex, a_minus: complex) -> ReducedSpectrum:
    w, v = abs(a_plus) ** 2, abs(a_minus) ** 2
    total = w + v
    if total == 0.0:
        raise ZeroAmplitudes(f"both {k.wave.value} amplitudes vanish; the reduced state is undefined")
    k2 = k.value**2
    det = 4.0 * k2 / (1.0 + k2) ** 2 * (w / total) * (v / total)
    gap = 0.25 - det
    if gap < -1e-12:
        raise ArithmeticError(f"negative discriminant {gap!r} in reduced spectrum")
    lam_plus = 0.5 + math.sqrt(max(gap, 0.0))
    # det / lam_plus keeps the small eigenvalue accurate when det << 1
    lam_minus = det / lam_plus
    return ReducedSpectrum(1.0 - lam_minus, lam_minus)


def von_neumann_entropy(spec: ReducedSpectrum) -> float:
    """Base-2 entropy with 0 log 0 = 0."""
    return float(entr([spec.lambda_plus, spec.lambda_minus]).sum() / LN2)


def chirality(wave: Wave | str, mu: float, sin_theta_c: float, zone_side: Side | str,
              amps: ScatteredAmplitudes | IncidentAmplitudes | tuple[complex, complex]) -> float:
    """<gamma5> of a wave built from unit-norm helicity states.

    For the transmitted wave the closed form holds where the wave propagates.
    """
    wave = Wave(wave)
    if isinstance(amps, ScatteredAmplitudes):
        pair = amps.transmitted if wave is Wave.TRANSMITTED else amps.reflected
    elif isinstance(amps, IncidentAmplitudes):
        pair = amps.pair
    else:
        pair = tuple(amps)
    diff = abs(pair[0]) ** 2 - abs(pair[1]) ** 2
    if wave is not Wave.TRANSMITTED:
        return math.sqrt(1.0 - mu**2) * diff
    q2 = (1.0 - mu**2) * sin_theta_c**2
    factor = math.sqrt(q2 / (q2 + mu**2))
    sign = 1.0 if Side(zone_side) is Side.DIFFUSION else -1.0
    return sign * factor * diff


def wave_report(wave: Wave, k: KappaFactor, pair: tuple[complex, complex], chi: float) -> EntanglementReport:
    spec = reduced_spectrum(k, *pair)
    p_odd, p_even, avg = parity_observables(k)
    return EntanglementReport(von_neumann_entropy(spec), spec, p_odd, p_even, avg, chi)


def extremal_points(mu: float, inc: IncidentAmplitudes) -> list[tuple[float, ReducedSpectrum]]:
    """Stationary points of S_R for real incident amplitudes.

    The first point sits at normal incidence, the second at
    sin(theta_0) = mu / sqrt(1 + mu^2) where the spectrum is ((1+mu)/2, (1-mu)/2)
    whatever the incident amplitudes.
    """
    ip, im = inc.pair
    if abs((ip * im.conjugate()).imag) > 1e-12:
        raise PreconditionPhase("incident amplitudes carry a relative phase; scan S_R numerically instead")
    prod = abs(ip * im) ** 2
    root = math.sqrt(max(1.0 - 4.0 * (1.0 - mu**2) * prod, 0.0))
    first = ReducedSpectrum(0.5 + 0.5 * root, 0.5 - 0.5 * root)
    if mu == 0.0:
        # massless: S_R is flat and equal to the incident entropy, both points merge at theta = 0
        return [(0.0, first), (0.0, first)]
    a = abs(mu)
    second = ReducedSpectrum((1.0 + a) / 2.0, (1.0 - a) / 2.0)
    return [(0.0, first), (mu / math.sqrt(1.0 + mu**2), second)]


@dataclass(frozen=True)
class PointAnalysis:
    """Everything derived at one (medium, theta, incident) point."""

    theta: float
    zone: Zone
    A: AParam
    refraction: RefractionResult
    amplitudes: ScatteredAmplitudes
    flux: float
    residual: float
    incident: EntanglementReport
    reflected: EntanglementReport | None
    transmitted: EntanglementReport | None


def analyze(medium: MediumParams, theta: float, inc: IncidentAmplitudes) -> PointAnalysis:
    zone = classify(medium, theta)
    refr = refract(medium, theta)
    A = a_param_for(medium, theta)
    amps = scatter(A, theta, refr, inc)
    flux = flux_ratio(medium, theta)
    residual = conservation_residual(amps, flux)

    mu, nu = medium.mu, medium.nu
    s2 = critical_sine_squared(medium)
    side = medium.side
    k_in = kappa(Wave.INCIDENT, mu, nu)
    incident = wave_report(Wave.INCIDENT, k_in, inc.pair,
                           chirality(Wave.INCIDENT, mu, 0.0, side, inc))
    reflected = None
    if amps.reflection > 0.0:
        reflected = wave_report(Wave.REFLECTED, kappa(Wave.REFLECTED, mu, nu), amps.reflected,
                                chirality(Wave.REFLECTED, mu, 0.0, side, amps))
    transmitted = None
    if zone.oscillatory and amps.transmission > 0.0:
        chi_t = chirality(Wave.TRANSMITTED, mu, math.sqrt(s2), side, amps)
        transmitted = wave_report(Wave.TRANSMITTED, kappa(Wave.TRANSMITTED, mu, nu), amps.transmitted, chi_t)
    return PointAnalysis(theta, zone, A, refr, amps, flux, residual, incident, reflected, transmitted)


@dataclass(frozen=True)
class ScanPoint:
    theta: float
    s_r: float | None
    s_t: float | None
    zone: Zone | None
    error: str | None = None


def _scan_one(medium: MediumParams, inc: IncidentAmplitudes, theta: float) -> ScanPoint:
    try:
        pa = analyze(medium, theta, inc)
    except (ArithmeticError, ValueError) as exc:
        return ScanPoint(float(theta), None, None, None, f"{type(exc).__name__}: {exc}")
    s_r = pa.reflected.entropy if pa.reflected else None
    s_t = pa.transmitted.entropy if pa.transmitted else None
    return ScanPoint(float(theta), s_r, s_t, pa.zone)


def entropy_scan(config: StepConfig, theta_grid: Sequence[float] | None = None,
                 threads: int | None = None) -> list[ScanPoint]:
    """S_R and S_T over a grid of angles; S_T is None on evanescent points.

    Failed points are kept with ``error`` set.  Output follows the grid order
    whatever ``threads`` is.
    """
    grid = config.theta_grid() if theta_grid is None else theta_grid
    medium, inc = config.medium(), config.incident()
    if threads is None or threads <= 1:
        return [_scan_one(medium, inc, t) for t in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda t: _scan_one(medium, inc, t), grid))


def antiparticle_transform(config: StepConfig) -> StepConfig:
    """E -> -E, V -> -V, i.e. mu -> -mu at fixed nu."""
    return dataclasses.replace(config, mu=-config.mu)


def locate_extremum(func: Callable[[float], float], bracket: tuple[float, float],
                    kind: str = "min", xatol: float = 1e-10) -> tuple[float, float]:
    """Bounded scalar search for a minimum or maximum; returns (x, func(x))."""
    if kind not in ("min", "max"):
        raise ValueError(f"kind must be 'min' or 'max', got {kind!r}")
    sign = 1.0 if kind == "min" else -1.0
    res = minimize_scalar(lambda x: sign * func(x), bounds=bracket, method="bounded",
                          options={"xatol": xatol})
    return float(res.x), float(sign * res.fun)


def transmitted_entropy(config: StepConfig) -> Callable[[float], float]:
    """S_T as a function of sin(theta), for use with :func:`locate_extremum`."""
    medium, inc = config.medium(), config.incident()

    def s_t(sin_theta: float) -> float:
        pa = analyze(medium, math.asin(sin_theta), inc)
        if pa.transmitted is None:
            raise EvanescentKappa(f"S_T undefined at sin(theta)={sin_theta}")
        return pa.transmitted.entropy

    return s_t


def reflected_entropy(config: StepConfig) -> Callable[[float], float]:
    medium, inc = config.medium(), config.incident()

    def s_r(sin_theta: float) -> float:
        pa = analyze(medium, math.asin(sin_theta), inc)
        if pa.reflected is None:
            raise ZeroAmplitudes(f"no reflected wave at sin(theta)={sin_theta}")
        return pa.reflected.entropy

    return s_r
