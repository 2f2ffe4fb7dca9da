"""Cooling analytics: rates, covariance dynamics, and phonon-number formulas.

The adiabatically eliminated cavity leaves the mechanics with time-periodic
cooling/heating rates

    A_-+(t) = A0_-+ + eps sin(2 w t) Aeps_-+,

a scalar 2x2 covariance ODE, and a closed-form late-time covariance trace
whose period average gives the mean excitation number.  The ODE route here
is the independent oracle for the closed form; the full master equation in
:mod:`optofloquet.evolve` is the oracle for both.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import AdiabaticWarning, Heating, InvalidTrace, StepFailure
from .floquet import MechanicalDrive
from .model import CavityConfig, EffectiveCoupling

TRACE_FLOOR = 1.0 - 1e-3
SETTLING_DECADES = 10.0


@dataclass(frozen=True)
class RateSet:
    """Base cooling/heating rates and their first-order drive corrections."""

    A_minus_0: float
    A_plus_0: float
    A_minus_eps: float
    A_plus_eps: float
    gamma: float = 0.0
    n_m: float = 0.0

    @property
    def A_minus_tilde_0(self) -> float:
        return self.A_minus_0 + 0.5 * self.gamma * (self.n_m + 1.0)

    @property
    def A_plus_tilde_0(self) -> float:
        return self.A_plus_0 + 0.5 * self.gamma * self.n_m

    @property
    def Gamma_cool(self) -> float:
        return self.A_minus_0 - self.A_plus_0


def rates(drive: MechanicalDrive, cfg: CavityConfig, coupling: EffectiveCoupling) -> RateSet:
    """Rates of the reduced mechanical master equation.

    A0_-+  = (g_eff^2 / 2) kappa / ((delta -+ nu0)^2 + kappa^2/4)
    Aeps_-+ = (g_eff^2 / 2) (delta -+ nu0) / (n ((delta -+ nu0)^2 + kappa^2/4))

    where the upper sign belongs to the heating rate A_+ and the lower to the
    cooling rate A_-.
    """
    half_g2 = 0.5 * coupling.g_eff**2
    nu0, n = drive.nu0, drive.n
    d_minus = (cfg.delta + nu0) ** 2 + cfg.kappa**2 / 4.0
    d_plus = (cfg.delta - nu0) ** 2 + cfg.kappa**2 / 4.0
    return RateSet(
        A_minus_0=half_g2 * cfg.kappa / d_minus,
        A_plus_0=half_g2 * cfg.kappa / d_plus,
        A_minus_eps=half_g2 * (cfg.delta + nu0) / (n * d_minus),
        A_plus_eps=half_g2 * (cfg.delta - nu0) / (n * d_plus),
        gamma=drive.gamma,
        n_m=drive.n_m,
    )


def rate_at_time(rs: RateSet, eps: float, omega: float, t: float) -> tuple[float, float]:
    """Instantaneous damping-dressed rates (A_minus(t), A_plus(t))."""
    mod = eps * np.sin(2.0 * omega * t)
    return (
        rs.A_minus_tilde_0 + mod * rs.A_minus_eps,
        rs.A_plus_tilde_0 + mod * rs.A_plus_eps,
    )


def _require_cooling(rs: RateSet) -> None:
    if rs.A_minus_tilde_0 <= rs.A_plus_tilde_0:
        raise Heating(
            f"A_minus_tilde={rs.A_minus_tilde_0:.4g} <= A_plus_tilde={rs.A_plus_tilde_0:.4g}: "
            "excitation number diverges"
        )


def settling_time(rs: RateSet) -> float:
    """Time after which the exponential transients are negligible."""
    _require_cooling(rs)
    return SETTLING_DECADES / rs.Gamma_cool


@dataclass(frozen=True)
class CovarianceState:
    """2x2 symmetric covariance matrix of the mechanical quadratures."""

    matrix: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.shape != (2, 2):
            raise ValueError("covariance matrix must be 2x2")
        object.__setattr__(self, "matrix", mat)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def validate(self) -> None:
        if np.max(np.abs(self.matrix - self.matrix.T)) > 1e-10:
            raise InvalidTrace("covariance matrix not symmetric")
        if self.trace < 1.0 - 1e-6:
            raise InvalidTrace(f"trace {self.trace:.8g} below the Heisenberg bound")


def vacuum_covariance() -> CovarianceState:
    return CovarianceState(0.5 * np.eye(2), 0.0)


def covariance_evolve(
    rs: RateSet,
    drive: MechanicalDrive,
    gamma0: CovarianceState,
    t_end: float,
    dt_control: float,
    rtol: float = 1e-10,
    atol: float = 1e-14,
) -> list[CovarianceState]:
    """Integrate d gamma/dt = 2(A_+(t) - A_-(t)) gamma + (A_+(t) + A_-(t)) I.

    Oracle for ``trace_analytic``; raises ``Heating`` outside the cooling
    regime, where the linear system is unstable.
    """
    _require_cooling(rs)
    eps, omega = drive.eps, drive.omega

    def rhs(t, y):
        a_minus, a_plus = rate_at_time(rs, eps, omega, t)
        mat = y.reshape(2, 2)
        out = 2.0 * (a_plus - a_minus) * mat + (a_plus + a_minus) * np.eye(2)
        return out.reshape(-1)

    t_eval = np.arange(0.0, t_end + 0.5 * dt_control, dt_control)
    sol = solve_ivp(
        rhs,
        (0.0, t_end),
        gamma0.matrix.reshape(-1),
        t_eval=t_eval,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise StepFailure(f"covariance integration failed: {sol.message}")
    return [
        CovarianceState(sol.y[:, i].reshape(2, 2), float(t)) for i, t in enumerate(sol.t)
    ]


def trace_analytic(rs: RateSet, eps: float, omega: float, t: float) -> float:
    """Closed-form late-time covariance trace.

    Tr gamma(t) = (At_+ + At_-)/(At_- - At_+)
        - eps (Ae_+ + Ae_-) (At_+ - At_-) sin(2wt) / ((At_+ - At_-)^2 + w^2)
        - eps (Ae_+ + Ae_-) w cos(2wt) / ((At_+ - At_-)^2 + w^2)
        + (eps/w) (Ae_+ - Ae_-)(At_+ - At_-)(At_+ + At_-) / ((At_+ - At_-)^2 + w^2)
        - (eps/w) (Ae_+ - Ae_-)(At_- + At_+) / (At_+ - At_-)

    with damping-dressed base rates At and bare corrections Ae.  Valid once
    the exponential transients have decayed (t >= ``settling_time``).
    """
    _require_cooling(rs)
    at_m, at_p = rs.A_minus_tilde_0, rs.A_plus_tilde_0
    base = (at_p + at_m) / (at_m - at_p)
    if eps == 0.0:
        return base
    d_a = at_p - at_m
    s_a = at_p + at_m
    sum_eps = rs.A_plus_eps + rs.A_minus_eps
    diff_eps = rs.A_plus_eps - rs.A_minus_eps
    denom = d_a**2 + omega**2
    osc = (
        -eps * sum_eps * d_a * np.sin(2.0 * omega * t) / denom
        - eps * sum_eps * omega * np.cos(2.0 * omega * t) / denom
    )
    const = (eps / omega) * diff_eps * (d_a * s_a / denom - s_a / d_a)
    return float(base + osc + const)


def mean_m(trace: float) -> float:
    """Mean excitation number (trace - 1)/2, clamped at 0 within tolerance."""
    if trace < TRACE_FLOOR:
        raise InvalidTrace(f"trace {trace:.8g} < {TRACE_FLOOR}")
    return max(0.0, 0.5 * (trace - 1.0))


def m_bar(rs: RateSet, eps: float, omega: float) -> float:
    """Exact period average of the excitation number (oscillating terms drop)."""
    _require_cooling(rs)
    at_m, at_p = rs.A_minus_tilde_0, rs.A_plus_tilde_0
    base = (at_p + at_m) / (at_m - at_p)
    if eps != 0.0:
        d_a = at_p - at_m
        s_a = at_p + at_m
        diff_eps = rs.A_plus_eps - rs.A_minus_eps
        base += (eps / omega) * diff_eps * (d_a * s_a / (d_a**2 + omega**2) - s_a / d_a)
    return mean_m(base)


def m_bar_quadrature(rs: RateSet, eps: float, omega: float, samples: int = 512) -> float:
    """Cross-check of ``m_bar`` by uniform quadrature over one period."""
    ts = np.arange(samples) * (np.pi / omega) / samples
    traces = np.array([trace_analytic(rs, eps, omega, t) for t in ts])
    return mean_m(float(traces.mean()))


def m_bar_approx(rs: RateSet, eps: float, omega: float, gamma: float, n_m: float) -> float:
    """Slow-modulation approximation of the period-averaged excitation number.

    m_nm0 = A0_+/(G + gamma/2)
            + eps w (A0_- + A0_+ + gamma/2)(Ae_+ - Ae_-) / (2 (G + gamma/2)^3)
    m     = m_nm0 + gamma n_m/(G + gamma/2)
            + eps w gamma n_m (Ae_+ - Ae_-) / (2 (G + gamma/2)^3)

    with G = A0_- - A0_+.  Requires omega^2 << G^2; a warning is issued for
    omega > 0.3 G.
    """
    g_cool = rs.Gamma_cool
    if omega > 0.3 * g_cool:
        warnings.warn(
            f"omega = {omega:.3g} > 0.3 Gamma_cool = {0.3 * g_cool:.3g}: "
            "slow-modulation approximation degrades",
            AdiabaticWarning,
            stacklevel=2,
        )
    denom = g_cool + 0.5 * gamma
    diff_eps = rs.A_plus_eps - rs.A_minus_eps
    m_nm0 = rs.A_plus_0 / denom + eps * omega * (
        rs.A_minus_0 + rs.A_plus_0 + 0.5 * gamma
    ) * diff_eps / (2.0 * denom**3)
    return m_nm0 + gamma * n_m / denom + eps * omega * gamma * n_m * diff_eps / (
        2.0 * denom**3
    )


def m_bar_weak(cfg: CavityConfig, drive: MechanicalDrive, coupling: EffectiveCoupling) -> float:
    """Weak-damping two-term estimate of the period-averaged excitation number.

    m = -((nu0+delta)^2 + kappa^2/4)/(4 delta nu0)
        + eps w [ (nu0^2 - delta^2 + kappa^2/4)(nu0^2 + delta^2 + kappa^2/4)
                  ((nu0+delta)^2 + kappa^2/4)((nu0-delta)^2 + kappa^2/4) ]
              / (32 delta^3 kappa^2 nu0^3 g_eff^2)

    The correction changes sign at delta^2 = nu0^2 + kappa^2/4, where driven
    and undriven averages coincide.
    """
    nu0, delta, kappa = drive.nu0, cfg.delta, cfg.kappa
    q = kappa**2 / 4.0
    first = -((nu0 + delta) ** 2 + q) / (4.0 * delta * nu0)
    product = (
        (nu0**2 - delta**2 + q)
        * (nu0**2 + delta**2 + q)
        * ((nu0 + delta) ** 2 + q)
        * ((nu0 - delta) ** 2 + q)
    )
    second = (
        drive.eps
        * drive.omega
        * product
        / (32.0 * delta**3 * kappa**2 * nu0**3 * coupling.g_eff**2)
    )
    return first + second


def crossing_detuning(nu0: float, kappa: float) -> float:
    """Detuning where driven and undriven averages coincide exactly."""
    return -float(np.sqrt(nu0**2 + kappa**2 / 4.0))
