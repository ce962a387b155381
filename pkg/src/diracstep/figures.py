"""Datasets and plot scripts for the five standard figures.

fig1  reflection and flux-weighted transmission
fig2  S_R and S_T, with the extremal S_R values as reference lines
fig3  chirality of the reflected and transmitted waves
fig4  chirality next to entropy, per wave
fig5  S_R and S_T for |I+| = |I-| and three relative phases
"""
from __future__ import annotations

import math
from pathlib import Path

from .config import StepConfig
from .entanglement import extremal_points, von_neumann_entropy
from .kinematics import Side
from .sweep import run_sweep, write_csv

MU = 0.5
SIN_THETA_C = {"s050": 0.5, "s071": 1 / math.sqrt(2), "s087": math.sqrt(3) / 2}
PHASES = {"dw045": math.pi / 4, "dw060": math.pi / 3, "dw090": math.pi / 2}
FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")

# columns plotted per figure: (panel title, column)
PANELS = {
    "fig1": [("|R|^2", "R2_total"), ("flux * |T|^2", "T2_flux")],
    "fig2": [("S_R", "S_R"), ("S_T", "S_T")],
    "fig3": [("<gamma5>_R", "chi_R"), ("<gamma5>_T", "chi_T")],
    "fig4": [("<gamma5>_R", "chi_R"), ("S_R", "S_R"), ("<gamma5>_T", "chi_T"), ("S_T", "S_T")],
    "fig5": [("S_R", "S_R"), ("S_T", "S_T")],
}


def figure_configs(which: str, samples: int = 400) -> dict[str, StepConfig]:
    if which not in FIGURES:
        raise ValueError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
    out = {}
    for side in Side:
        for tag, s in SIN_THETA_C.items():
            if which != "fig5":
                out[f"{side.value}_{tag}"] = StepConfig(mu=MU, sin_theta_c=s, zone_side=side,
                                                        theta_samples=samples)
                continue
            for ptag, dw in PHASES.items():
                out[f"{side.value}_{tag}_{ptag}"] = StepConfig(
                    mu=MU, sin_theta_c=s, zone_side=side,
                    i_plus_mag=1 / math.sqrt(2), i_minus_mag=1 / math.sqrt(2),
                    delta_omega=dw, theta_samples=samples)
    return out


def reference_lines(config: StepConfig) -> list[float]:
    """S_R at the two closed-form extremal points (min and max of the oscillatory profile)."""
    values = [von_neumann_entropy(spec) for _, spec in extremal_points(config.mu, config.incident())]
    return sorted(values)


def _plot_script(which: str, names: list[str], refs: list[float] | None) -> str:
    panels = PANELS[which]
    lines = [
        "import csv",
        "import matplotlib",
        "matplotlib.use('Agg')",
        "import matplotlib.pyplot as plt",
        "",
        f"CURVES = {names!r}",
        f"PANELS = {panels!r}",
        f"REFERENCE = {refs!r}",
        "",
        "def load(name):",
        "    with open(name + '.csv') as fh:",
        "        return list(csv.DictReader(fh))",
        "",
        "fig, axes = plt.subplots(1, len(PANELS), figsize=(5 * len(PANELS), 4))",
        "for ax, (title, col) in zip(axes, PANELS):",
        "    for name in CURVES:",
        "        rows = [r for r in load(name) if r[col] != '']",
        "        width = 2.0 if name.startswith('diffusion') else 0.8",
        "        ax.plot([float(r['sin_theta']) for r in rows], [float(r[col]) for r in rows],",
        "                lw=width, label=name)",
        "    if REFERENCE and col == 'S_R':",
        "        for y in REFERENCE:",
        "            ax.axhline(y, ls=':', color='k')",
        "    ax.set_xlabel('sin theta')",
        "    ax.set_title(title)",
        "axes[0].legend(fontsize=6)",
        "fig.tight_layout()",
        f"fig.savefig('{which}.png', dpi=150)",
        "",
    ]
    return "\n".join(lines)


def write_figure(which: str, out_dir: str | Path, samples: int = 400,
                 threads: int | None = None) -> list[Path]:
    out_dir = Path(out_dir) / which
    configs = figure_configs(which, samples)
    written = [write_csv(run_sweep(cfg, threads), out_dir / f"{name}.csv") for name, cfg in configs.items()]
    refs = None
    if which == "fig2":
        refs = reference_lines(next(iter(configs.values())))
    script = out_dir / f"plot_{which}.py"
    try:
        script.write_text(_plot_script(which, list(configs), refs), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {script}: {exc.strerror or exc}") from exc
    return written + [script]
