"""Self-verification: the acceptance checks A1-A12 against the spinor oracle.

Each check returns a :class:`CheckResult` with its worst residual and the
parameters where it occurred.  ``run_all`` is what ``diracstep verify`` runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .config import StepConfig
from .entanglement import (analyze, antiparticle_transform, entropy_scan, extremal_points,
                           locate_extremum, reflected_entropy)
from .kinematics import MediumParams, Side, nu_from_critical, refract
from .scattering import (IncidentAmplitudes, SingularDenominator, a_param_for,
                         reflected_product_with_phase, scatter)
from .spinor_oracle import (SingularSystem, boundary_solve, density_matrix, gamma5_expectation,
                            parity_expectation, partial_trace, reduced_eigenvalues, wave_state)

MUS = (0.1, 0.5, 0.9)
SIN_THETA_CS = (0.5, 1 / math.sqrt(2), math.sqrt(3) / 2)
SIN_THETA_MAX = 0.999


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    where: dict = field(default_factory=dict)
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        msg = f"[{tag}] {self.name}: worst={self.worst:.3e} tol={self.tolerance:.0e}"
        if self.detail:
            msg += f" ({self.detail})"
        if not self.passed and self.where:
            msg += " at " + ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                                      for k, v in self.where.items())
        return msg


class _Worst:
    def __init__(self):
        self.value = 0.0
        self.where: dict = {}

    def update(self, value: float, **where) -> None:
        if not value <= self.value:  # also catches nan
            self.value = value
            self.where = where


def _sin_grid(n: int, top: float = SIN_THETA_MAX) -> np.ndarray:
    return top * np.arange(1, n + 1) / n


def acceptance_grid(n: int) -> Iterator[tuple[MediumParams, float, float, Side, float]]:
    """(medium, theta, sin_theta_c, side, mu) over mu x sin_theta_c x side x n angles."""
    for mu in MUS:
        for s in SIN_THETA_CS:
            for side in Side:
                medium = MediumParams(mu, nu_from_critical(mu, s, side))
                for st in _sin_grid(n):
                    yield medium, math.asin(st), s, side, mu


MIXED = IncidentAmplitudes.polar(0.6, 0.8, 0.9)
PURE = IncidentAmplitudes(1.0, 0.0)


def check_conservation(n: int = 200, corrupt_flux_sign: bool = False) -> CheckResult:
    worst = _Worst()
    klein_bad = 0
    klein_rows = 0
    for medium, theta, s, side, mu in acceptance_grid(n):
        pa = analyze(medium, theta, PURE)
        flux = -pa.flux if corrupt_flux_sign else pa.flux
        amps = pa.amplitudes
        res = abs(amps.reflection + flux * amps.transmission - 1.0)
        worst.update(res, mu=mu, sin_theta_c=s, side=side.value, sin_theta=math.sin(theta))
        if pa.zone.oscillatory and side is Side.KLEIN:
            klein_rows += 1
            if not (flux * amps.transmission < 0 and amps.reflection > 1):
                klein_bad += 1
    passed = worst.value < 1e-10 and klein_bad == 0 and klein_rows > 0
    return CheckResult("A1 conservation", passed, worst.value, 1e-10, worst.where,
                       f"{klein_rows} Klein oscillatory rows, {klein_bad} without negative flux and R > 1")


def check_oracle(n: int = 200, seed: int = 0, random_points: int = 1000) -> CheckResult:
    worst = _Worst()
    skipped = 0
    for medium, theta, s, side, mu in acceptance_grid(n):
        for inc in (PURE, MIXED):
            d = np.abs(scatter(a_param_for(medium, theta), theta, refract(medium, theta), inc).as_array()
                       - boundary_solve(medium.mu, medium.nu, theta, inc).as_array()).max()
            worst.update(float(d), mu=mu, nu=medium.nu, sin_theta=math.sin(theta))
    rng = np.random.default_rng(seed)
    for _ in range(random_points):
        mu = rng.uniform(0.0, 0.95)
        s = rng.uniform(0.05, 0.95)
        side = Side.DIFFUSION if rng.random() < 0.5 else Side.KLEIN
        theta = math.asin(rng.uniform(0.0, SIN_THETA_MAX))
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z /= np.linalg.norm(z)
        inc = IncidentAmplitudes(complex(z[0]), complex(z[1]))
        medium = MediumParams(mu, nu_from_critical(mu, s, side))
        try:
            closed = scatter(a_param_for(medium, theta), theta, refract(medium, theta), inc)
            oracle = boundary_solve(mu, medium.nu, theta, inc)
        except (SingularDenominator, SingularSystem):
            skipped += 1
            continue
        d = np.abs(closed.as_array() - oracle.as_array()).max()
        worst.update(float(d), mu=mu, nu=medium.nu, sin_theta=math.sin(theta))
    return CheckResult("A2 oracle equivalence", worst.value < 1e-10, worst.value, 1e-10, worst.where,
                       f"{random_points} random points, {skipped} singular skipped")


def check_total_reflection(n: int = 200) -> CheckResult:
    worst = _Worst()
    count = 0
    for medium, theta, s, side, mu in acceptance_grid(n):
        if math.sin(theta) <= s:
            continue
        for inc in (PURE, MIXED):
            pa = analyze(medium, theta, inc)
            count += 1
            worst.update(abs(pa.amplitudes.reflection - 1.0), mu=mu, sin_theta_c=s, side=side.value,
                         sin_theta=math.sin(theta))
    return CheckResult("A3 total reflection", worst.value < 1e-10 and count > 0, worst.value, 1e-10,
                       worst.where, f"{count} evanescent points")


def _oracle_spectrum(mu, nu, theta, pair, wave) -> float:
    rho = density_matrix(wave_state(mu, nu, theta, pair, wave))
    return reduced_eigenvalues(partial_trace(rho, "parity"))[0]


def check_spectrum(n: int = 200) -> CheckResult:
    worst = _Worst()
    for medium, theta, s, side, mu in acceptance_grid(n):
        for inc in (PURE, MIXED):
            pa = analyze(medium, theta, inc)
            waves = [("incident", pa.incident, inc.pair), ("reflected", pa.reflected, pa.amplitudes.reflected),
                     ("transmitted", pa.transmitted, pa.amplitudes.transmitted)]
            for name, rep, pair in waves:
                if rep is None:
                    continue
                lam = _oracle_spectrum(medium.mu, medium.nu, theta, pair, name)
                worst.update(abs(lam - rep.spectrum.lambda_plus), wave=name, mu=mu, nu=medium.nu,
                             sin_theta=math.sin(theta))
    return CheckResult("A4 spectrum oracle", worst.value < 1e-10, worst.value, 1e-10, worst.where)


def check_extremal(n: int = 2000) -> CheckResult:
    mu = 0.5
    target = mu / math.sqrt(1 + mu**2)
    cfg = StepConfig(mu=mu, sin_theta_c=0.5, zone_side=Side.DIFFUSION)
    s_r = reflected_entropy(cfg)
    grid = 0.5 * np.arange(1, n) / n
    values = np.array([s_r(x) for x in grid])
    step = grid[1] - grid[0]
    i_max, i_min = int(values.argmax()), int(values.argmin())
    (s_min, _), (s0, spec0) = extremal_points(mu, PURE)
    bracket_max = abs(grid[i_max] - target) <= step
    bracket_min = abs(grid[i_min] - s_min) <= step
    x_num, _ = locate_extremum(s_r, (grid[max(i_max - 1, 0)], grid[min(i_max + 1, len(grid) - 1)]), "max")

    pa = analyze(cfg.medium(), math.asin(target), PURE)
    spec = pa.reflected.spectrum
    spec_err = max(abs(spec.lambda_plus - 0.75), abs(spec.lambda_minus - 0.25))
    s_err = abs(pa.reflected.entropy - 0.8112781)
    passed = bracket_max and bracket_min and spec_err < 1e-8 and s_err < 1e-7 and abs(s0 - target) < 1e-15
    return CheckResult("A5 extremal points", passed, spec_err, 1e-8, {"sin_theta_0": target},
                       f"argmax={grid[i_max]:.7f} argmin={grid[i_min]:.7f} refined={x_num:.9f} "
                       f"|S-0.8112781|={s_err:.1e}")


def check_limits(n: int = 200) -> CheckResult:
    ur = _Worst()
    for p, m in ((1.0, 0.0), (0.6, 0.8), (1 / math.sqrt(2), 1 / math.sqrt(2))):
        inc = IncidentAmplitudes(p, m)
        target = (p * m) ** 2
        for s in SIN_THETA_CS:
            for side in Side:
                medium = MediumParams(1e-6, nu_from_critical(1e-6, s, side))
                for st in _sin_grid(n):
                    theta = math.asin(st)
                    pa = analyze(medium, theta, inc)
                    a = pa.amplitudes
                    r = abs(a.r_plus * a.r_minus) ** 2 / a.reflection**2
                    ur.update(abs(r - target), wave="R", i_plus=p, sin_theta=st, side=side.value)
                    if pa.zone.oscillatory:
                        t = abs(a.t_plus * a.t_minus) ** 2 / a.transmission**2
                        ur.update(abs(t - target), wave="T", i_plus=p, sin_theta=st, side=side.value)
    nr = _Worst()
    mu_nr = 1 - 1e-9
    for s in SIN_THETA_CS:
        for side in Side:
            cfg = StepConfig(mu=mu_nr, sin_theta_c=s, zone_side=side, i_plus_mag=0.6, i_minus_mag=0.8,
                             theta_samples=n, theta_max=math.asin(SIN_THETA_MAX))
            for pt in entropy_scan(cfg):
                for v in (pt.s_r, pt.s_t):
                    if v is not None:
                        nr.update(v, sin_theta_c=s, side=side.value, theta=pt.theta)
    a_err = _Worst()
    for nu in (0.5, 1.0, 1.5):
        medium = MediumParams(mu_nr, nu)
        for st in _sin_grid(n):
            theta = math.asin(st)
            a_err.update(abs(a_param_for(medium, theta).value - complex(math.cos(theta), math.sin(theta))),
                         nu=nu, sin_theta=st)
    passed = ur.value < 1e-5 and nr.value < 1e-6 and a_err.value < 1e-4
    where = ur.where if ur.value >= 1e-5 else nr.where if nr.value >= 1e-6 else a_err.where
    return CheckResult("A6 limits", passed, max(ur.value / 1e-5, nr.value / 1e-6, a_err.value / 1e-4), 1.0,
                       where, f"UR={ur.value:.2e} NR entropy={nr.value:.2e} |A-e^(i theta)|={a_err.value:.2e}; "
                              "worst is relative to each tolerance")


def check_phase_formula(seed: int = 0, samples: int = 1000) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = _Worst()
    for _ in range(samples):
        mu = rng.uniform(0.0, 0.95)
        s = rng.uniform(0.05, 0.95)
        side = Side.DIFFUSION if rng.random() < 0.5 else Side.KLEIN
        theta = math.asin(rng.uniform(0.0, SIN_THETA_MAX))
        dw = rng.uniform(-math.pi, math.pi)
        p = rng.uniform(0.0, 1.0)
        m = math.sqrt(1 - p * p)
        medium = MediumParams(mu, nu_from_critical(mu, s, side))
        try:
            A = a_param_for(medium, theta)
        except SingularDenominator:
            continue
        inc = IncidentAmplitudes.polar(p, m, dw)
        amps = scatter(A, theta, refract(medium, theta), inc)
        direct = abs(amps.r_plus) ** 2 * abs(amps.r_minus) ** 2
        worst.update(abs(reflected_product_with_phase(A, (p, m), dw) - direct),
                     mu=mu, sin_theta_c=s, side=side.value, sin_theta=math.sin(theta), delta_omega=dw)
    return CheckResult("A7 phase formula", worst.value < 1e-10, worst.value, 1e-10, worst.where)


def check_phase_zero() -> CheckResult:
    mu = 0.5
    target = mu / math.sqrt(1 + mu**2)
    worst = _Worst()
    for s in SIN_THETA_CS:
        cfg = StepConfig(mu=mu, sin_theta_c=s, zone_side=Side.DIFFUSION, i_plus_mag=1 / math.sqrt(2),
                         i_minus_mag=1 / math.sqrt(2), delta_omega=math.pi / 2)
        worst.update(reflected_entropy(cfg)(target), sin_theta_c=s)
    return CheckResult("A8 phase zero of S_R", worst.value < 1e-8, worst.value, 1e-8, worst.where)


def check_universality(n: int = 200) -> CheckResult:
    """Oscillatory S_R profiles coincide across the three critical angles, per zone."""
    mu = 0.5
    grid = _sin_grid(n, min(SIN_THETA_CS) * (1 - 1e-9))
    spread = _Worst()
    for side in Side:
        curves = []
        for s in SIN_THETA_CS:
            f = reflected_entropy(StepConfig(mu=mu, sin_theta_c=s, zone_side=side))
            curves.append(np.array([f(x) for x in grid]))
        dev = np.max(np.abs(np.array(curves) - curves[0]))
        spread.update(float(dev), side=side.value)
    return CheckResult("A9 universality", spread.value < 1e-10, spread.value, 1e-10, spread.where)


def check_slope_jump(h: float = 1e-5) -> CheckResult:
    """One-sided slopes of S_R(theta) at theta_c must differ by a factor > 10."""
    mu = 0.5
    ratios = []
    where = {}
    for side in Side:
        for s in SIN_THETA_CS:
            f = reflected_entropy(StepConfig(mu=mu, sin_theta_c=s, zone_side=side))
            tc = math.asin(s)
            g = lambda t: f(math.sin(t))
            left = (g(tc) - g(tc - h)) / h
            right = (g(tc + h) - g(tc)) / h
            ratios.append(max(abs(right / left), abs(left / right)))
            if ratios[-1] == min(ratios):
                where = {"side": side.value, "sin_theta_c": s, "left": left, "right": right}
    kink = min(ratios)
    return CheckResult("A9 slope jump at theta_c", kink > 10, kink, 10, where,
                       "worst is the smallest slope ratio; it must exceed the tolerance")


def check_chirality(n: int = 200) -> CheckResult:
    worst = _Worst()
    sign_bad = 0
    equal = IncidentAmplitudes(1 / math.sqrt(2), 1 / math.sqrt(2))
    zero = 0.0
    for medium, theta, s, side, mu in acceptance_grid(n):
        for inc in (PURE, MIXED, equal):
            pa = analyze(medium, theta, inc)
            a = pa.amplitudes
            waves = [("incident", pa.incident, inc.pair), ("reflected", pa.reflected, a.reflected),
                     ("transmitted", pa.transmitted, a.transmitted)]
            for name, rep, pair in waves:
                if rep is None:
                    continue
                oracle = gamma5_expectation(wave_state(medium.mu, medium.nu, theta, pair, name))
                worst.update(abs(oracle - rep.chirality), wave=name, mu=mu, nu=medium.nu,
                             sin_theta=math.sin(theta))
                if inc is equal:
                    zero = max(zero, abs(rep.chirality))
            if pa.transmitted is not None:
                diff = abs(a.t_plus) ** 2 - abs(a.t_minus) ** 2
                if abs(diff) > 1e-12:
                    expected = 1.0 if side is Side.DIFFUSION else -1.0
                    if np.sign(pa.transmitted.chirality / diff) != expected:
                        sign_bad += 1
    passed = worst.value < 1e-10 and zero < 1e-12 and sign_bad == 0
    return CheckResult("A10 chirality", passed, worst.value, 1e-10, worst.where,
                       f"max |chi| for equal helicities={zero:.1e}, zone-sign violations={sign_bad}")


def check_antiparticle(n: int = 200) -> CheckResult:
    worst = _Worst()
    for dw in (0.0, math.pi / 4, math.pi / 3, math.pi / 2):
        for s in SIN_THETA_CS:
            for side in Side:
                cfg = StepConfig(mu=0.5, sin_theta_c=s, zone_side=side, i_plus_mag=0.6, i_minus_mag=0.8,
                                 delta_omega=dw, theta_samples=n)
                mirror = StepConfig.from_dict({**cfg.to_dict(), "delta_omega": -dw})
                anti = entropy_scan(antiparticle_transform(mirror))
                for a, b in zip(entropy_scan(cfg), anti):
                    if a.s_r is None or b.s_r is None:
                        if (a.s_r is None) != (b.s_r is None):
                            worst.update(math.inf, delta_omega=dw, theta=a.theta)
                        continue
                    worst.update(abs(a.s_r - b.s_r), delta_omega=dw, sin_theta_c=s, side=side.value,
                                 theta=a.theta)
    return CheckResult("A11 antiparticle symmetry", worst.value < 1e-10, worst.value, 1e-10, worst.where)


def check_parity_constancy(n: int = 200) -> CheckResult:
    worst = _Worst()
    for mu in MUS:
        for s in SIN_THETA_CS:
            for side in Side:
                medium = MediumParams(mu, nu_from_critical(mu, s, side))
                closed: dict[str, list] = {}
                oracle: dict[str, list] = {}
                for st in _sin_grid(n):
                    theta = math.asin(st)
                    pa = analyze(medium, theta, MIXED)
                    a = pa.amplitudes
                    for name, rep, pair in (("incident", pa.incident, MIXED.pair),
                                            ("reflected", pa.reflected, a.reflected),
                                            ("transmitted", pa.transmitted, a.transmitted)):
                        if rep is None:
                            continue
                        closed.setdefault(name, []).append((rep.p_odd, rep.p_even, rep.avg_parity))
                        oracle.setdefault(name, []).append(
                            parity_expectation(wave_state(mu, medium.nu, theta, pair, name)))
                for name in closed:
                    c = np.array(closed[name])
                    o = np.array(oracle[name])
                    dev = max(float(np.ptp(c, axis=0).max()), float(np.ptp(o)))
                    worst.update(dev, wave=name, mu=mu, sin_theta_c=s, side=side.value)
    return CheckResult("A12 parity theta-independence", worst.value < 1e-12, worst.value, 1e-12, worst.where)


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "A1": check_conservation,
    "A2": check_oracle,
    "A3": check_total_reflection,
    "A4": check_spectrum,
    "A5": check_extremal,
    "A6": check_limits,
    "A7": check_phase_formula,
    "A8": check_phase_zero,
    "A9": check_universality,
    "A9b": check_slope_jump,
    "A10": check_chirality,
    "A11": check_antiparticle,
    "A12": check_parity_constancy,
}


def run_all(grid_density: int = 200, seed: int = 0, corrupt_flux_sign: bool = False) -> list[CheckResult]:
    if grid_density < 10:
        raise ValueError(f"grid_density must be >= 10, got {grid_density}")
    n = grid_density
    return [
        check_conservation(n, corrupt_flux_sign),
        check_oracle(n, seed),
        check_total_reflection(n),
        check_spectrum(n),
        check_extremal(),
        check_limits(n),
        check_phase_formula(seed),
        check_phase_zero(),
        check_universality(n),
        check_slope_jump(),
        check_chirality(n),
        check_antiparticle(n),
        check_parity_constancy(n),
    ]
