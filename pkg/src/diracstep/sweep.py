"""Sweeps over sin(theta), CSV output and single-point reports."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .config import StepConfig
from .entanglement import PointAnalysis, PreconditionPhase, analyze, extremal_points, von_neumann_entropy
from .kinematics import MediumParams, critical_sine_squared
from .scattering import IncidentAmplitudes
from .spinor_oracle import boundary_solve, gamma5_expectation, interface_mismatch, wave_state


@dataclass(frozen=True)
class SweepRow:
    sin_theta: float
    zone_tag: str
    R2_total: float
    T2_flux: float
    S_R: float | None
    S_T: float | None
    chi_R: float
    chi_T: float
    conservation_residual: float


HEADER = [f.name for f in fields(SweepRow)]


def sweep_row(medium: MediumParams, inc: IncidentAmplitudes, sin_theta: float) -> SweepRow:
    theta = math.asin(sin_theta)
    pa = analyze(medium, theta, inc)
    amps = pa.amplitudes
    if pa.transmitted is not None:
        chi_t = pa.transmitted.chirality
    else:
        # closed form only covers propagating waves; take <gamma5> of the state at the interface
        chi_t = gamma5_expectation(wave_state(medium.mu, medium.nu, theta, amps.transmitted, "transmitted"))
    chi_r = pa.reflected.chirality if pa.reflected else 0.0
    return SweepRow(
        sin_theta=float(sin_theta),
        zone_tag=pa.zone.value,
        R2_total=amps.reflection,
        T2_flux=pa.flux * amps.transmission,
        S_R=pa.reflected.entropy if pa.reflected else None,
        S_T=pa.transmitted.entropy if pa.transmitted else None,
        chi_R=chi_r,
        chi_T=chi_t,
        conservation_residual=pa.residual,
    )


def run_sweep(config: StepConfig, threads: int | None = None) -> list[SweepRow]:
    if config.theta_samples < 2:
        raise ValueError(f"a sweep needs at least 2 samples, got {config.theta_samples}")
    medium, inc = config.medium(), config.incident()
    grid = [float(s) for s in config.sin_theta_grid()]
    if threads is None or threads <= 1:
        return [sweep_row(medium, inc, s) for s in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda s: sweep_row(medium, inc, s), grid))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(HEADER)]
    lines.extend(",".join(_cell(v) for v in astuple(row)) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(rows: list[SweepRow], path: str | Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(rows_to_csv(rows))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _c(z: complex) -> list[float]:
    # + 0.0 turns -0.0 into 0.0
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def _wave(rep) -> dict | None:
    if rep is None:
        return None
    return {
        "entropy": rep.entropy,
        "spectrum": [rep.spectrum.lambda_plus, rep.spectrum.lambda_minus],
        "p_odd": rep.p_odd,
        "p_even": rep.p_even,
        "avg_parity": rep.avg_parity,
        "chirality": rep.chirality,
    }


def point_report(config: StepConfig, theta: float) -> dict:
    """Every derived quantity at one angle, JSON-ready (complex numbers as [re, im])."""
    medium, inc = config.medium(), config.incident()
    pa: PointAnalysis = analyze(medium, theta, inc)
    amps = pa.amplitudes
    oracle = boundary_solve(medium.mu, medium.nu, theta, inc)
    report = {
        "mu": medium.mu,
        "nu": medium.nu,
        "theta": theta,
        "sin_theta": math.sin(theta),
        "sin2_theta_c": critical_sine_squared(medium),
        "zone": pa.zone.value,
        "incident": {"i_plus": _c(inc.i_plus), "i_minus": _c(inc.i_minus)},
        "A": _c(pa.A.value),
        "sin_theta_prime": _c(complex(pa.refraction.sin_theta_prime)),
        "cos_theta_prime": _c(complex(pa.refraction.cos_theta_prime)),
        "amplitudes": {
            "r_plus": _c(amps.r_plus), "r_minus": _c(amps.r_minus),
            "t_plus": _c(amps.t_plus), "t_minus": _c(amps.t_minus),
        },
        "R2_total": amps.reflection,
        "T2": amps.transmission,
        "flux_ratio": pa.flux,
        "T2_flux": pa.flux * amps.transmission,
        "conservation_residual": pa.residual,
        "oracle_max_deviation": float(abs(amps.as_array() - oracle.as_array()).max()),
        "interface_mismatch": interface_mismatch(medium.mu, medium.nu, theta, inc, amps),
        "waves": {
            "incident": _wave(pa.incident),
            "reflected": _wave(pa.reflected),
            "transmitted": _wave(pa.transmitted),
        },
    }
    try:
        report["extremal_points"] = [
            {"sin_theta_0": s, "spectrum": [sp.lambda_plus, sp.lambda_minus], "entropy": von_neumann_entropy(sp)}
            for s, sp in extremal_points(medium.mu, inc)
        ]
    except PreconditionPhase:
        report["extremal_points"] = None
    return report


def format_report(report: dict) -> str:
    def fmt(v, key=""):
        if isinstance(v, list) and key == "spectrum":
            return f"({v[0]:.12g}, {v[1]:.12g})"
        if isinstance(v, list) and len(v) == 2:
            return f"{v[0]:+.12g} {v[1]:+.12g}i"
        if isinstance(v, float):
            return f"{v:.12g}"
        return str(v)

    out = []
    for key, value in report.items():
        if isinstance(value, dict):
            out.append(f"{key}:")
            for k2, v2 in value.items():
                if isinstance(v2, dict):
                    out.append(f"  {k2}: " + ", ".join(f"{a}={fmt(b, a)}" for a, b in v2.items()))
                else:
                    out.append(f"  {k2}: {fmt(v2)}")
        elif key == "extremal_points" and value:
            for i, ep in enumerate(value, 1):
                out.append(f"extremal point {i}: sin_theta_0={ep['sin_theta_0']:.12g} "
                           f"spectrum=({ep['spectrum'][0]:.12g}, {ep['spectrum'][1]:.12g}) S_R={ep['entropy']:.12g}")
        else:
            out.append(f"{key}: {fmt(value)}")
    return "\n".join(out)
