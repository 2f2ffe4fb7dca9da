"""Built-in scenarios reproducing the three headline plots, plus SVG output.

- ``fig1``: excitation number vs time at fixed detuning, driven vs undriven.
- ``fig2``: period-averaged excitation number vs detuning for both drive signs.
- ``fig3``: driven/undriven ratio vs detuning for both drive signs.

All three use the reference parameter set n = 2, eps = 1/18, kappa = 0.25,
g_eff^2 = 0.25 (units of nu0) and the closed-form analytic engine.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ConfigError
from .scenario import Scenario, Sweep, run_scenario

FIG_DELTA = -0.9469
FIG_EPS = 1.0 / 18.0
FIG_KAPPA = 0.25
FIG_G_EFF = 0.5  # g_eff^2 = 0.25 nu0^2


def fig1_scenario(plot: bool = True) -> Scenario:
    return Scenario(
        name="fig1",
        engines=("analytic",),
        n=2,
        eps=FIG_EPS,
        delta=FIG_DELTA,
        kappa=FIG_KAPPA,
        g_eff=FIG_G_EFF,
        periods=2,
        samples_per_period=256,
        plot=plot,
    )


def _sweep_scenario(name: str, plot: bool) -> Scenario:
    return Scenario(
        name=name,
        engines=("analytic",),
        n=2,
        eps=FIG_EPS,
        delta=FIG_DELTA,
        kappa=FIG_KAPPA,
        g_eff=FIG_G_EFF,
        sweep=Sweep(parameter="delta", minimum=-1.2, maximum=-0.8, count=81),
        plot=plot,
    )


def fig2_scenario(plot: bool = True) -> Scenario:
    return _sweep_scenario("fig2", plot)


def fig3_scenario(plot: bool = True) -> Scenario:
    return _sweep_scenario("fig3", plot)


FIGURES = {"fig1": fig1_scenario, "fig2": fig2_scenario, "fig3": fig3_scenario}


def run_figure(which: str, out_dir) -> list[Path]:
    if which not in FIGURES:
        raise ConfigError(f"unknown figure '{which}', expected one of {sorted(FIGURES)}")
    return run_scenario(FIGURES[which](), out_dir)


def _load_csv(path: Path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header, rows


def _column(header, rows, name) -> np.ndarray:
    idx = header.index(name)
    return np.array([float(row[idx]) if row[idx] not in ("", "nan") else np.nan for row in rows])


def plot_scenario(sc: Scenario, out_dir) -> Path:
    """Render the scenario's first engine table to a deterministic SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = sc.name

    out_dir = Path(out_dir)
    table = out_dir / f"{sc.name}_{sc.engines[0]}.csv"
    header, rows = _load_csv(table)
    svg_path = out_dir / f"{sc.name}.svg"

    if sc.sweep is None:
        fig, ax = plt.subplots(figsize=(4.2, 3.0), dpi=120)
        ts = _column(header, rows, "time")
        ax.plot(ts, _column(header, rows, "m_driven"), "--", lw=1.2, label="driven")
        ax.plot(ts, _column(header, rows, "m_undriven"), ":", lw=1.2, label="undriven")
        ax.set_xlabel("time (1/nu0)")
        ax.set_ylabel("mechanical excitations")
    else:
        fig, axes = plt.subplots(1, 2, figsize=(7.6, 3.0), dpi=120)
        xs = _column(header, rows, sc.sweep.parameter)
        m_p = _column(header, rows, "m_bar_plus")
        m_m = _column(header, rows, "m_bar_minus")
        m_u = _column(header, rows, "m_bar_undriven")
        axes[0].plot(xs, m_p, "--", lw=1.2, label="eps > 0")
        axes[0].plot(xs, m_m, "-.", lw=1.2, label="eps < 0")
        axes[0].plot(xs, m_u, ":", lw=1.2, label="undriven")
        axes[0].set_xlabel(f"{sc.sweep.parameter} (nu0 units)")
        axes[0].set_ylabel("period-averaged excitations")
        axes[0].legend(fontsize=7, frameon=False)
        axes[1].plot(xs, _column(header, rows, "ratio_plus"), "--", lw=1.2, label="eps > 0")
        axes[1].plot(xs, _column(header, rows, "ratio_minus"), "-.", lw=1.2, label="eps < 0")
        axes[1].axhline(1.0, color="k", lw=0.6)
        axes[1].set_xlabel(f"{sc.sweep.parameter} (nu0 units)")
        axes[1].set_ylabel("driven / undriven")
        axes[1].legend(fontsize=7, frameon=False)
        ax = axes[0]
    handles, _ = ax.get_legend_handles_labels()
    if handles and sc.sweep is None:
        ax.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    fig.savefig(svg_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return svg_path
