"""Run configuration shared by the library front end and the CLI."""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kinematics import MediumParams, Side, nu_from_critical
from .scattering import IncidentAmplitudes

DEFAULT_THETA_MAX = math.asin(0.999)


@dataclass(frozen=True)
class StepConfig:
    """Physical parameters of one step problem plus the sampling of sin(theta).

    The barrier is given either by ``nu`` or by ``sin_theta_c`` together with
    ``zone_side``.  Incident magnitudes are renormalised on use once they pass
    the 1e-9 check, so values typed on a command line (0.7071...) are fine.
    """

    mu: float
    nu: float | None = None
    sin_theta_c: float | None = None
    zone_side: Side | None = None
    i_plus_mag: float = 1.0
    i_minus_mag: float = 0.0
    delta_omega: float = 0.0
    theta_samples: int = 200
    theta_max: float = DEFAULT_THETA_MAX

    def __post_init__(self):
        if self.zone_side is not None and not isinstance(self.zone_side, Side):
            object.__setattr__(self, "zone_side", Side(self.zone_side))
        if not abs(self.mu) < 1.0:
            raise ValueError(f"|mu| must be < 1, got mu={self.mu}")
        by_nu = self.nu is not None
        by_critical = self.sin_theta_c is not None or self.zone_side is not None
        if by_nu == by_critical:
            raise ValueError("give exactly one barrier: nu, or sin_theta_c together with zone_side")
        if by_critical and (self.sin_theta_c is None or self.zone_side is None):
            raise ValueError("sin_theta_c and zone_side must be given together")
        if by_nu and not self.nu >= 0.0:
            raise ValueError(f"nu must be >= 0, got nu={self.nu}")
        if by_critical and not 0.0 <= self.sin_theta_c <= 1.0:
            raise ValueError(f"sin_theta_c must lie in [0, 1], got {self.sin_theta_c}")
        if self.i_plus_mag < 0 or self.i_minus_mag < 0:
            raise ValueError("incident magnitudes must be non-negative")
        norm = self.i_plus_mag**2 + self.i_minus_mag**2
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"|I+|^2 + |I-|^2 must be 1 within 1e-9, got {norm!r}")
        if int(self.theta_samples) != self.theta_samples or self.theta_samples < 1:
            raise ValueError(f"theta_samples must be a positive integer, got {self.theta_samples}")
        if not 0.0 < self.theta_max < math.pi / 2:
            raise ValueError(f"theta_max must lie in (0, pi/2), got {self.theta_max}")

    def medium(self) -> MediumParams:
        if self.nu is not None:
            return MediumParams(self.mu, self.nu)
        return MediumParams(self.mu, nu_from_critical(self.mu, self.sin_theta_c, self.zone_side))

    def incident(self, phase: float = 0.0) -> IncidentAmplitudes:
        scale = math.hypot(self.i_plus_mag, self.i_minus_mag)
        return IncidentAmplitudes.polar(self.i_plus_mag / scale, self.i_minus_mag / scale,
                                        self.delta_omega, phase)

    def sin_theta_grid(self) -> np.ndarray:
        # uniform in sin(theta) over (0, sin(theta_max)]
        n = int(self.theta_samples)
        return math.sin(self.theta_max) * np.arange(1, n + 1) / n

    def theta_grid(self) -> np.ndarray:
        return np.arcsin(self.sin_theta_grid())

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        if self.zone_side is not None:
            out["zone_side"] = self.zone_side.value
        return {k: v for k, v in out.items() if v is not None}

    @classmethod
    def from_dict(cls, data: dict) -> "StepConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, path: str | Path) -> "StepConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))
