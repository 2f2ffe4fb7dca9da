"""Driven optomechanical model on the truncated cavity x mechanics space.

Builds the time-periodic ladder operator Gamma(t) of the modulated
oscillator, the displaced-frame Hamiltonian, and the full Lindblad
generator.  The displaced cavity amplitude is the stationary weak-coupling
solution alpha0 = Omega/(2 delta + i kappa) with beta0 = 0, so no
time-derivative commutator terms appear in the generator.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .floquet import MechanicalDrive, gh
from .operators import (
    DenseOperator,
    DensityMatrix,
    annihilation,
    dissipator,
    identity,
    number,
    quadratures,
    tensor,
    thermal_state,
)


@dataclass(frozen=True)
class CavityConfig:
    """Cavity detuning, linewidth, bath occupancy and pump parameters.

    delta = omega_laser - omega_cavity; cooling runs need delta < 0.
    """

    delta: float
    kappa: float
    n_p: float = 0.0
    Omega: float = 0.0
    chi0: float = 0.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if self.n_p < 0:
            raise ValueError("n_p must be >= 0")


def alpha0(cfg: CavityConfig) -> complex:
    """Stationary displaced cavity amplitude Omega/(2 delta + i kappa)."""
    if cfg.kappa == 0 and cfg.delta == 0:
        raise ValueError("alpha0 undefined for kappa = delta = 0")
    return cfg.Omega / (2.0 * cfg.delta + 1j * cfg.kappa)


@dataclass(frozen=True)
class EffectiveCoupling:
    """Displaced amplitude and single-photon coupling of the linearized model.

    Only chi0 * alpha0 enters the Hamiltonian; g_eff = chi0 |alpha0| is the
    scalar strength used in all analytic rate formulas.
    """

    alpha0: complex
    chi0: float

    @property
    def g_eff(self) -> float:
        return self.chi0 * abs(self.alpha0)

    @classmethod
    def from_config(cls, cfg: CavityConfig) -> "EffectiveCoupling":
        return cls(alpha0(cfg), cfg.chi0)

    @classmethod
    def from_g_eff(cls, g_eff: float, cfg: CavityConfig) -> "EffectiveCoupling":
        """Unit-modulus alpha0 carrying the phase of Omega/(2 delta + i kappa)."""
        phase = cmath.phase(1.0 / (2.0 * cfg.delta + 1j * cfg.kappa))
        return cls(cmath.exp(1j * phase), g_eff)


def gamma_xp_coefficients(g: complex, h: complex, normalize: bool = True):
    """Coefficients (c_x, c_p) of Gamma = c_x x + c_p p for given g(t), h(t).

    Gamma = (1/2i) [x sqrt(2) h - p sqrt(2) g] in hbar = M = 1 units.  With
    ``normalize`` the pair is divided by sqrt(Im(g* h)), which removes the
    O(eps^2) wobble of the first-order solution and makes [Gamma, Gamma^+] = 1
    hold to machine precision.
    """
    c_x = -1j * h / np.sqrt(2.0)
    c_p = 1j * g / np.sqrt(2.0)
    if normalize:
        w = np.imag(np.conj(g) * h)
        if w <= 0:
            raise ValueError(f"non-positive Wronskian {w:.3g}; invalid (g, h) pair")
        root = np.sqrt(w)
        c_x = c_x / root
        c_p = c_p / root
    return c_x, c_p


def gamma_op(
    drive: MechanicalDrive, t: float, mech_dim: int, normalize: bool = True
) -> DenseOperator:
    """Phase-stripped Floquet annihilation operator Gamma(t) on mech_dim levels.

    Reduces to the bare annihilation operator at eps = 0.
    """
    if mech_dim < 4:
        raise DimensionMismatch("mech_dim must be >= 4")
    g, h = gh(drive, t)
    c_x, c_p = gamma_xp_coefficients(g, h, normalize=normalize)
    x, p = quadratures(mech_dim, drive.nu0)
    return DenseOperator(c_x * x.data + c_p * p.data, (mech_dim,))


def drive_phase_factor(drive: MechanicalDrive, t: float) -> complex:
    """Scalar u(t) multiplying Gamma in the interaction Hamiltonian.

    u(t) = 1 + eps (e^{-2iwt}/(8(n+1)) - e^{2iwt}/(8(n-1))); the coefficient
    of Gamma^+ is its conjugate.  Equals sqrt(n w) g*(t).
    """
    n, w, eps = drive.n, drive.omega, drive.eps
    if eps == 0.0:
        return 1.0 + 0j
    return 1.0 + eps * (
        np.exp(-2j * w * t) / (8.0 * (n + 1)) - np.exp(2j * w * t) / (8.0 * (n - 1))
    )


def hamiltonian(
    drive: MechanicalDrive,
    cfg: CavityConfig,
    coupling: EffectiveCoupling,
    t: float,
    dims: tuple[int, int],
) -> DenseOperator:
    """Displaced-frame Hamiltonian at time t on the cavity (x) mechanics space.

    H = -delta a^+a + nu0 Gamma^+Gamma - H_int with
    H_int = chi0 (alpha0* a + alpha0 a^+)(u(t) Gamma + u*(t) Gamma^+).
    """
    cav_dim, mech_dim = dims
    if cav_dim < 4 or mech_dim < 4:
        raise DimensionMismatch("dims must be at least (4, 4)")
    gam = gamma_op(drive, t, mech_dim)
    a = annihilation(cav_dim)
    h_cav = -cfg.delta * tensor(number(cav_dim), identity(mech_dim))
    h_mec = drive.nu0 * tensor(identity(cav_dim), gam.dag() @ gam)
    u = drive_phase_factor(drive, t)
    mech_factor = DenseOperator(u * gam.data + np.conj(u) * gam.data.conj().T, (mech_dim,))
    f_a = coupling.chi0 * (np.conj(coupling.alpha0) * a + coupling.alpha0 * a.dag())
    h_int = tensor(f_a, mech_factor)
    return h_cav + h_mec - h_int


def liouvillian_apply(
    rho: DensityMatrix,
    t: float,
    drive: MechanicalDrive,
    cfg: CavityConfig,
    coupling: EffectiveCoupling,
    dims: tuple[int, int],
) -> DenseOperator:
    """Right-hand side of the master equation at time t, applied to rho.

    drho/dt = -i[H(t), rho] + (kappa/2)(n_p+1) D[a] + (kappa/2) n_p D[a^+]
              + (gamma/2)(n_m+1) D[Gamma(t)] + (gamma/2) n_m D[Gamma(t)^+]
    """
    cav_dim, mech_dim = dims
    if rho.op.dims != (cav_dim, mech_dim):
        raise DimensionMismatch(f"state dims {rho.op.dims} vs model dims {dims}")
    h = hamiltonian(drive, cfg, coupling, t, dims)
    out = -1j * (h.data @ rho.op.data - rho.op.data @ h.data)
    a_full = tensor(annihilation(cav_dim), identity(mech_dim))
    out = out + 0.5 * cfg.kappa * (cfg.n_p + 1.0) * dissipator(a_full, rho.op).data
    if cfg.n_p > 0:
        out = out + 0.5 * cfg.kappa * cfg.n_p * dissipator(a_full.dag(), rho.op).data
    if drive.gamma > 0:
        gam_full = tensor(identity(cav_dim), gamma_op(drive, t, mech_dim))
        out = out + 0.5 * drive.gamma * (drive.n_m + 1.0) * dissipator(gam_full, rho.op).data
        if drive.n_m > 0:
            out = out + 0.5 * drive.gamma * drive.n_m * dissipator(gam_full.dag(), rho.op).data
    return DenseOperator(out, rho.op.dims)


@dataclass(frozen=True)
class DrivenCavityModel:
    """Parameter bundle for one driven-cavity simulation."""

    drive: MechanicalDrive
    cavity: CavityConfig
    coupling: EffectiveCoupling
    dims: tuple[int, int]

    def hamiltonian(self, t: float) -> DenseOperator:
        return hamiltonian(self.drive, self.cavity, self.coupling, t, self.dims)

    def liouvillian_apply(self, rho: DensityMatrix, t: float) -> DenseOperator:
        return liouvillian_apply(rho, t, self.drive, self.cavity, self.coupling, self.dims)

    def gamma_full(self, t: float) -> DenseOperator:
        return tensor(identity(self.dims[0]), gamma_op(self.drive, t, self.dims[1]))

    def initial_state(self) -> DensityMatrix:
        """Vacuum cavity times thermal mechanics at the drive's n_m."""
        cav_dim, mech_dim = self.dims
        rho = tensor(thermal_state(cav_dim, 0.0), thermal_state(mech_dim, self.drive.n_m))
        return DensityMatrix(rho, 0.0)
