"""Batch scenarios: config parsing, engine dispatch, CSV output.

A scenario file is flat ``key = value`` text (``#`` starts a comment).
Floats may be written as fractions like ``1/18``.  Required keys are
``schema_version`` (must be 1), ``name`` and ``engines``; everything else
has a default.  All frequencies and rates are in units of nu0.

Engines:

- ``analytic``        closed-form covariance trace
- ``covariance_ode``  numerically integrated covariance equation
- ``full_lindblad``   brute-force master-equation evolution

Without a sweep block a scenario produces a time-series table (driven and
undriven excitation number over a few drive periods); with one it produces
a table of period-averaged excitation numbers and driven/undriven ratios
per sweep point.  Each row carries the full parameter echo, and identical
scenario files produce byte-identical CSVs.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cooling import (
    m_bar,
    mean_m,
    rates,
    settling_time,
    trace_analytic,
    vacuum_covariance,
    covariance_evolve,
)
from .errors import ConfigError, OptoFloquetError
from .evolve import evolve, period_average, write_trajectory_csv
from .floquet import MechanicalDrive, drive_from_floquet
from .model import CavityConfig, DrivenCavityModel, EffectiveCoupling

ENGINES = ("analytic", "covariance_ode", "full_lindblad")
SWEEPABLE = ("delta", "kappa", "g_eff")
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Sweep:
    parameter: str
    minimum: float
    maximum: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.minimum, self.maximum, self.count)


@dataclass(frozen=True)
class Scenario:
    name: str
    engines: tuple[str, ...]
    nu0: float = 1.0
    n: int = 2
    eps: float = 0.0
    gamma: float = 0.0
    n_m: float = 0.0
    delta: float = -1.0
    kappa: float = 0.25
    n_p: float = 0.0
    g_eff: float | None = None
    Omega: float | None = None
    chi0: float | None = None
    periods: int = 2
    samples_per_period: int = 256
    cav_dim: int = 12
    mech_dim: int = 12
    plot: bool = False
    sweep: Sweep | None = None
    schema_version: int = SCHEMA_VERSION

    @property
    def omega(self) -> float:
        return self.nu0 / self.n

    def drive(self, eps: float | None = None) -> MechanicalDrive:
        value = self.eps if eps is None else eps
        return drive_from_floquet(self.nu0, value, self.omega, self.gamma, self.n_m)

    def cavity(self, delta: float | None = None, kappa: float | None = None) -> CavityConfig:
        return CavityConfig(
            delta=self.delta if delta is None else delta,
            kappa=self.kappa if kappa is None else kappa,
            n_p=self.n_p,
            Omega=self.Omega or 0.0,
            chi0=self.chi0 or 0.0,
        )

    def coupling(self, cfg: CavityConfig, g_eff: float | None = None) -> EffectiveCoupling:
        if g_eff is not None:
            return EffectiveCoupling.from_g_eff(g_eff, cfg)
        if self.g_eff is not None:
            return EffectiveCoupling.from_g_eff(self.g_eff, cfg)
        return EffectiveCoupling.from_config(cfg)

    def validate(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(f"schema_version must be {SCHEMA_VERSION}")
        if not self.engines:
            raise ConfigError("engines must list at least one engine")
        for engine in self.engines:
            if engine not in ENGINES:
                raise ConfigError(f"engines contains unknown engine '{engine}'")
        if self.g_eff is None and (self.Omega is None or self.chi0 is None):
            raise ConfigError("coupling needs either g_eff or both Omega and chi0")
        if self.sweep is not None:
            sw = self.sweep
            if sw.parameter not in SWEEPABLE:
                raise ConfigError(f"sweep_parameter must be one of {SWEEPABLE}")
            if not (np.isfinite(sw.minimum) and np.isfinite(sw.maximum)):
                raise ConfigError("sweep_min/sweep_max must be finite")
            if sw.count < 2:
                raise ConfigError("sweep_count must be >= 2")
        if self.periods < 1:
            raise ConfigError("periods must be >= 1")
        if self.samples_per_period < 8:
            raise ConfigError("samples_per_period must be >= 8")
        if self.cav_dim < 4 or self.mech_dim < 4:
            raise ConfigError("cav_dim and mech_dim must be >= 4")
        try:
            self.drive()
            self.cavity()
        except ConfigError:
            raise
        except OptoFloquetError as exc:
            raise ConfigError(f"drive parameters invalid: {exc}") from exc
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


_FLOAT_KEYS = {
    "nu0", "eps", "gamma", "n_m", "delta", "kappa", "n_p",
    "g_eff", "Omega", "chi0", "sweep_min", "sweep_max",
}
_INT_KEYS = {"schema_version", "n", "periods", "samples_per_period",
             "cav_dim", "mech_dim", "sweep_count"}
_BOOL_KEYS = {"plot"}
_STR_KEYS = {"name", "engines", "sweep_parameter"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS


def _parse_number(key: str, text: str) -> float:
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"key '{key}': cannot parse number '{text}'") from exc


def parse_scenario_text(text: str) -> Scenario:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key '{key}'")
        if key in raw:
            raise ConfigError(f"duplicate key '{key}'")
        raw[key] = value

    for required in ("schema_version", "name", "engines"):
        if required not in raw:
            raise ConfigError(f"missing required key '{required}'")

    kwargs: dict = {}
    for key, value in raw.items():
        if key in _FLOAT_KEYS:
            kwargs[key] = _parse_number(key, value)
        elif key in _INT_KEYS:
            number = _parse_number(key, value)
            if number != int(number):
                raise ConfigError(f"key '{key}': expected an integer, got '{value}'")
            kwargs[key] = int(number)
        elif key in _BOOL_KEYS:
            lowered = value.lower()
            if lowered not in ("true", "false"):
                raise ConfigError(f"key '{key}': expected true/false, got '{value}'")
            kwargs[key] = lowered == "true"
        elif key == "engines":
            kwargs[key] = tuple(part.strip() for part in value.split(",") if part.strip())
        elif key == "name":
            kwargs[key] = value
        # sweep_* handled below

    sweep_keys = {k for k in raw if k.startswith("sweep_")}
    if sweep_keys:
        missing = {"sweep_parameter", "sweep_min", "sweep_max", "sweep_count"} - sweep_keys
        if missing:
            raise ConfigError(f"incomplete sweep block, missing {sorted(missing)}")
        kwargs["sweep"] = Sweep(
            parameter=raw["sweep_parameter"],
            minimum=kwargs.pop("sweep_min"),
            maximum=kwargs.pop("sweep_max"),
            count=kwargs.pop("sweep_count"),
        )
        kwargs.pop("sweep_parameter", None)

    scenario = Scenario(**kwargs)
    scenario.validate()
    return scenario


def parse_scenario_file(path) -> Scenario:
    return parse_scenario_text(Path(path).read_text())


def worker_count() -> int:
    env = os.environ.get("OPTOMECH_THREADS")
    if env:
        try:
            count = int(env)
        except ValueError as exc:
            raise ConfigError(f"OPTOMECH_THREADS must be an integer, got '{env}'") from exc
        if count < 1:
            raise ConfigError("OPTOMECH_THREADS must be >= 1")
        return count
    return min(4, os.cpu_count() or 1)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _echo_columns(sc: Scenario) -> dict:
    return {
        "nu0": sc.nu0,
        "n": sc.n,
        "eps": sc.eps,
        "gamma": sc.gamma,
        "n_m": sc.n_m,
        "delta": sc.delta,
        "kappa": sc.kappa,
        "n_p": sc.n_p,
        "g_eff": sc.g_eff if sc.g_eff is not None else "",
        "Omega": sc.Omega if sc.Omega is not None else "",
        "chi0": sc.chi0 if sc.chi0 is not None else "",
        "cav_dim": sc.cav_dim,
        "mech_dim": sc.mech_dim,
        "schema_version": sc.schema_version,
    }


def _write_csv(path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(cell) for cell in row) + "\n")


def _aligned_settle(sc: Scenario, rs) -> float:
    """Settling time rounded up to a whole number of drive periods.

    Keeps the modulation phase of windows extracted after the transient
    identical to the phase of the closed form at t = 0.
    """
    period = np.pi / sc.omega
    return float(np.ceil(settling_time(rs) / period) * period)


def _timeseries_analytic(sc: Scenario):
    cfg = sc.cavity()
    coup = sc.coupling(cfg)
    rs = rates(sc.drive(), cfg, coup)
    period = np.pi / sc.omega
    ts = np.arange(sc.periods * sc.samples_per_period + 1) * (period / sc.samples_per_period)
    m_driven = [mean_m(trace_analytic(rs, sc.eps, sc.omega, t)) for t in ts]
    m_undriven = [mean_m(trace_analytic(rs, 0.0, sc.omega, t)) for t in ts]
    return ts, np.array(m_driven), np.array(m_undriven)


def _timeseries_covariance(sc: Scenario):
    cfg = sc.cavity()
    coup = sc.coupling(cfg)
    rs = rates(sc.drive(), cfg, coup)
    period = np.pi / sc.omega
    t_settle = _aligned_settle(sc, rs)
    dt = period / sc.samples_per_period
    t_end = t_settle + sc.periods * period

    def window(eps):
        states = covariance_evolve(rs, sc.drive(eps), vacuum_covariance(), t_end, dt)
        times = np.array([s.time for s in states])
        values = np.array([mean_m(s.trace) for s in states])
        mask = times >= t_settle - 1e-9
        return times[mask] - t_settle, values[mask]

    ts, m_driven = window(sc.eps)
    _, m_undriven = window(0.0)
    return ts, m_driven, m_undriven


def _timeseries_lindblad(sc: Scenario, out_dir: Path):
    cfg = sc.cavity()
    coup = sc.coupling(cfg)
    rs = rates(sc.drive(), cfg, coup)
    period = np.pi / sc.omega
    t_settle = _aligned_settle(sc, rs)
    dt = period / min(sc.samples_per_period, 128)
    t_end = t_settle + sc.periods * period
    extra_paths = []

    def window(eps, tag):
        drive = sc.drive(eps)
        model = DrivenCavityModel(drive, cfg, coup, (sc.cav_dim, sc.mech_dim))
        traj = evolve(model.initial_state(), model, t_end, dt)
        traj_path = out_dir / f"{sc.name}_full_lindblad_traj_{tag}.csv"
        write_trajectory_csv(traj, traj_path)
        extra_paths.append(traj_path)
        mask = traj.times >= t_settle - 1e-9
        return traj.times[mask] - t_settle, traj.observables["m_mech"][mask]

    ts, m_driven = window(sc.eps, "driven")
    _, m_undriven = window(0.0, "undriven")
    return ts, m_driven, m_undriven, extra_paths


def _sweep_point(sc: Scenario, engine: str, value: float):
    """One sweep point: (m_plus, m_minus, m_undriven, status, reason)."""
    overrides = {"delta": None, "kappa": None, "g_eff": None}
    overrides[sc.sweep.parameter] = value
    try:
        cfg = sc.cavity(delta=overrides["delta"], kappa=overrides["kappa"])
        coup = sc.coupling(cfg, g_eff=overrides["g_eff"])
        eps_mag = abs(sc.eps)

        def one(eps):
            drive = sc.drive(eps)
            rs = rates(drive, cfg, coup)
            if engine == "analytic":
                return m_bar(rs, eps, sc.omega)
            period = np.pi / sc.omega
            t_settle = _aligned_settle(sc, rs)
            dt = period / sc.samples_per_period
            t_end = t_settle + period
            if engine == "covariance_ode":
                states = covariance_evolve(rs, drive, vacuum_covariance(), t_end, dt)
                times = np.array([s.time for s in states])
                values = np.array([mean_m(s.trace) for s in states])
                mask = times >= t_settle - 1e-9
                return float(np.trapezoid(values[mask], times[mask]) / period)
            model = DrivenCavityModel(drive, cfg, coup, (sc.cav_dim, sc.mech_dim))
            traj = evolve(model.initial_state(), model, t_end, period / 128)
            return period_average(traj, "m_mech", period)

        return one(eps_mag), one(-eps_mag), one(0.0), "ok", ""
    except OptoFloquetError as exc:
        return float("nan"), float("nan"), float("nan"), type(exc).__name__, str(exc)


def run_scenario(sc: Scenario, out_dir) -> list[Path]:
    """Run all engines of a scenario; returns the list of files written."""
    sc.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    echo = _echo_columns(sc)

    for engine in sc.engines:
        path = out_dir / f"{sc.name}_{engine}.csv"
        if sc.sweep is None:
            if engine == "analytic":
                ts, m_d, m_u = _timeseries_analytic(sc)
            elif engine == "covariance_ode":
                ts, m_d, m_u = _timeseries_covariance(sc)
            else:
                ts, m_d, m_u, extra = _timeseries_lindblad(sc, out_dir)
                written.extend(extra)
            header = ["time", "m_driven", "m_undriven", "engine", *echo.keys()]
            rows = [
                [t, md, mu, engine, *echo.values()]
                for t, md, mu in zip(ts, m_d, m_u)
            ]
        else:
            values = sc.sweep.values()
            with ThreadPoolExecutor(max_workers=worker_count()) as pool:
                points = list(pool.map(lambda v: _sweep_point(sc, engine, v), values))
            header = [
                sc.sweep.parameter, "m_bar_plus", "m_bar_minus", "m_bar_undriven",
                "ratio_plus", "ratio_minus", "status", "reason", "engine", *echo.keys(),
            ]
            rows = []
            for value, (m_p, m_m, m_u, status, reason) in zip(values, points):
                echo_row = dict(echo)
                echo_row[sc.sweep.parameter] = value
                rows.append([
                    value, m_p, m_m, m_u,
                    m_p / m_u if m_u else float("nan"),
                    m_m / m_u if m_u else float("nan"),
                    status, reason.replace(",", ";"), engine, *echo_row.values(),
                ])
        _write_csv(path, header, rows)
        written.append(path)

    if sc.plot:
        from .figures import plot_scenario

        written.append(plot_scenario(sc, out_dir))
    return written
