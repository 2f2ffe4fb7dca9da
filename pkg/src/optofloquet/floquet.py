"""Classical time-dependent harmonic oscillator with a modulated frequency.

The mechanical frequency is nu(t) = nu0 + eps' cos(2 omega t) with the
integer lock nu0 = n * omega.  To first order in eps = 2 eps' nu0 / omega**2
the stable solution of  f'' + nu(t)^2 f = 0  is

    f(t) = (e^{i n w t} + eps e^{i(n+2)w t}/(8(n+1))
                        - eps e^{i(n-2)w t}/(8(n-1))) / sqrt(n w),

and g(t) = e^{-i n w t} f(t), h(t) = e^{-i n w t} f'(t) are its
phase-stripped coefficient functions.  A brute-force adaptive integration of
the same equation serves as the oracle for all of this.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    DegenerateOrder,
    DriveTooStrong,
    DriveWarning,
    NonIntegerRatio,
    StepFailure,
)

EPS_HARD_LIMIT = 0.2
EPS_WARN_LIMIT = 0.1
RATIO_RTOL = 1e-9


@dataclass(frozen=True)
class MechanicalDrive:
    """Modulation and damping parameters of the mechanical oscillator.

    Attributes
    ----------
    nu0 : mean mechanical angular frequency (> 0)
    omega : modulation half-frequency, nu(t) oscillates at 2*omega (> 0)
    n : positive integer with nu0 = n * omega
    eps : dimensionless first-order drive strength, eps = 2 eps' nu0 / omega^2
    eps_prime : raw modulation amplitude eps' (same units as nu0)
    gamma : mechanical energy decay rate (>= 0)
    n_m : effective thermal-bath occupation (>= 0)
    """

    nu0: float
    omega: float
    n: int
    eps: float
    eps_prime: float
    gamma: float = 0.0
    n_m: float = 0.0

    @property
    def period(self) -> float:
        """Period of the modulation, pi/omega."""
        return np.pi / self.omega

    def with_eps(self, eps: float) -> "MechanicalDrive":
        """Same oscillator and bath, different drive strength."""
        return drive_from_floquet(self.nu0, eps, self.omega, self.gamma, self.n_m)


def _integer_order(nu0: float, omega: float) -> int:
    n = int(round(nu0 / omega))
    if n < 1 or abs(nu0 - n * omega) > RATIO_RTOL * nu0:
        raise NonIntegerRatio(
            f"nu0^2/omega^2 = {(nu0 / omega) ** 2:.12g} is not an integer square"
        )
    return n


def _check_eps(eps: float) -> None:
    if abs(eps) > EPS_HARD_LIMIT:
        raise DriveTooStrong(f"|eps| = {abs(eps):.3g} exceeds {EPS_HARD_LIMIT}")
    if abs(eps) > EPS_WARN_LIMIT:
        warnings.warn(
            f"|eps| = {abs(eps):.3g} > {EPS_WARN_LIMIT}: first-order results degrade",
            DriveWarning,
            stacklevel=3,
        )


def drive_from_physical(
    nu0: float,
    eps_prime: float,
    omega: float,
    gamma: float = 0.0,
    n_m: float = 0.0,
) -> MechanicalDrive:
    """Build a drive from the raw modulation amplitude eps'."""
    if nu0 <= 0 or omega <= 0:
        raise ValueError("nu0 and omega must be positive")
    if gamma < 0 or n_m < 0:
        raise ValueError("gamma and n_m must be >= 0")
    n = _integer_order(nu0, omega)
    eps = 2.0 * eps_prime * nu0 / omega**2
    _check_eps(eps)
    return MechanicalDrive(nu0, omega, n, eps, eps_prime, gamma, n_m)


def drive_from_floquet(
    nu0: float,
    eps: float,
    omega: float,
    gamma: float = 0.0,
    n_m: float = 0.0,
) -> MechanicalDrive:
    """Build a drive from the dimensionless strength eps instead of eps'."""
    eps_prime = eps * omega**2 / (2.0 * nu0)
    return drive_from_physical(nu0, eps_prime, omega, gamma, n_m)


@dataclass(frozen=True)
class FloquetFunctions:
    """Value of the classical solution and its coefficient functions at one time."""

    f: complex
    fdot: complex
    g: complex
    h: complex
    W: float


def gh(drive: MechanicalDrive, t):
    """Coefficient functions g(t), h(t) of the phase-stripped ladder operator.

    g(t) = (1 + eps e^{2iwt}/(8(n+1)) - eps e^{-2iwt}/(8(n-1))) / sqrt(n w)
    h(t) = (i n w + eps i w (n+2) e^{2iwt}/(8(n+1))
                  - eps i w (n-2) e^{-2iwt}/(8(n-1))) / sqrt(n w)
    """
    n, w, eps = drive.n, drive.omega, drive.eps
    if n == 1 and eps != 0.0:
        raise DegenerateOrder("n = 1 with eps != 0: parametric resonance, 1/(n-1) diverges")
    t = np.asarray(t, dtype=float)
    plus = np.exp(2j * w * t)
    minus = np.exp(-2j * w * t)
    if eps == 0.0:
        cp = cm = 0.0
    else:
        cp = eps / (8.0 * (n + 1))
        cm = eps / (8.0 * (n - 1))
    root = np.sqrt(n * w)
    g = (1.0 + cp * plus - cm * minus) / root
    h = (1j * n * w + cp * 1j * w * (n + 2) * plus - cm * 1j * w * (n - 2) * minus) / root
    if t.ndim == 0:
        return complex(g), complex(h)
    return g, h


def wronskian(f, fdot) -> float:
    """W = Im(conj(f) * fdot); positive and equal to nu0 |f|^2 at eps = 0."""
    w = np.imag(np.conj(f) * fdot)
    return float(w) if np.ndim(w) == 0 else w


def analytic_f(drive: MechanicalDrive, t) -> FloquetFunctions:
    """First-order solution f(t), its derivative, and the derived g, h, W."""
    g, h = gh(drive, t)
    phase = np.exp(1j * drive.n * drive.omega * np.asarray(t, dtype=float))
    f = phase * g
    fdot = phase * h
    if np.ndim(t) == 0:
        return FloquetFunctions(complex(f), complex(fdot), complex(g), complex(h), wronskian(f, fdot))
    return FloquetFunctions(f, fdot, g, h, wronskian(f, fdot))


@dataclass(frozen=True)
class FloquetTrajectory:
    """Numerically integrated classical solution sampled on a time grid."""

    times: np.ndarray
    f: np.ndarray
    fdot: np.ndarray

    def wronskian(self) -> np.ndarray:
        return np.imag(np.conj(self.f) * self.fdot)


def numeric_f(
    drive: MechanicalDrive,
    t_grid,
    exact_frequency: bool = False,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> FloquetTrajectory:
    """Integrate the classical oscillator as an oracle for ``analytic_f``.

    By default the linearized frequency nu0^2 + 2 eps' nu0 cos(2wt) is used,
    which is the equation the first-order solution actually solves;
    ``exact_frequency=True`` switches to the full (nu0 + eps' cos 2wt)^2.
    The initial condition is taken from ``analytic_f`` at t = 0.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 2:
        raise ValueError("t_grid must contain at least two times")
    if t_grid[0] != 0.0:
        raise ValueError("t_grid must start at 0")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")

    nu0, ep, w = drive.nu0, drive.eps_prime, drive.omega

    if exact_frequency:
        def nu_sq(t):
            return (nu0 + ep * np.cos(2.0 * w * t)) ** 2
    else:
        def nu_sq(t):
            return nu0**2 + 2.0 * ep * nu0 * np.cos(2.0 * w * t)

    def rhs(t, y):
        return np.array([y[1], -nu_sq(t) * y[0]])

    start = analytic_f(drive, 0.0)
    y0 = np.array([start.f, start.fdot], dtype=complex)
    sol = solve_ivp(
        rhs, (0.0, t_grid[-1]), y0, t_eval=t_grid, method="DOP853", rtol=rtol, atol=atol
    )
    if not sol.success:
        raise StepFailure(f"oscillator integration failed: {sol.message}")
    return FloquetTrajectory(t_grid, sol.y[0], sol.y[1])
