"""Brute-force integration of the driven master equation.

This is the numerical oracle for everything in :mod:`optofloquet.cooling`.
The density matrix is vectorized and stepped with an explicit adaptive
Runge-Kutta scheme (DOP853, embedded error control).

Every operator in the generator is a Kronecker product of small per-mode
ladder matrices with scalar coefficients, so the right-hand side is
evaluated through reshaped BLAS products on the small factors instead of
full tensor-product matrices.  Three structural facts keep this fast:

- density matrices stay hermitian along the flow, so the drift can be
  assembled as G rho + (rho G^+) from a single non-hermitian G (the
  Runge-Kutta stages only take real linear combinations, for which the
  conjugations involved are safe);
- the state is propagated in the interaction picture of the static part
  H0 = -delta a^+a + nu0 b^+b, which removes the fast free rotations that
  would otherwise limit the explicit stepper's stable step size.  Since
  conjugation by exp(i H0 t) maps ladder factors to phase-rotated ladder
  factors, the rotating frame only changes the scalar coefficients;
- samples are taken from the stepper's dense output and rotated back to
  the lab frame before observables are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import DOP853

from .errors import DimensionMismatch, InsufficientSpan, PositivityLoss, StepFailure
from .floquet import MechanicalDrive, gh
from .model import DrivenCavityModel, drive_phase_factor, gamma_op, gamma_xp_coefficients
from .operators import DenseOperator, DensityMatrix, annihilation, identity, tensor

TRACE_DRIFT_LIMIT = 1e-7
POSITIVITY_ABORT = -1e-4


@dataclass
class Trajectory:
    """Sampled observables (and optionally states) of one evolution."""

    times: np.ndarray
    observables: dict[str, np.ndarray]
    states: list[DensityMatrix] = field(default_factory=list)
    model: DrivenCavityModel | None = None

    def observable(self, name: str) -> np.ndarray:
        if name not in self.observables:
            raise KeyError(f"unknown observable '{name}'")
        return self.observables[name]


class _Kernel:
    """Kron-structured evaluator of the Liouvillian for hermitian states.

    In the lab frame the drift acting from the left is

        G = [i delta n_c - (kappa/2)((n_p+1) n_c + n_p a a^+)] (x) 1
          + 1 (x) [-i nu0 Q(t) - (gamma/2)((n_m+1) Q(t) + n_m Q'(t))]
          + i f_c (x) (w_x(t) x + w_p(t) p)

    with Q = Gamma^+Gamma, Q' = Gamma Gamma^+, and the jump terms are
    kappa(n_p+1) a rho a^+ + kappa n_p a^+ rho a
    + gamma(n_m+1) Gamma rho Gamma^+ + gamma n_m Gamma^+ rho Gamma.
    The generator applied to a hermitian rho is G rho + rho G^+ + jumps.

    With ``rotating=True`` the state is exp(i H0 t) rho exp(-i H0 t) for
    H0 = -delta n_c + nu0 n_m; the free rotations leave the diagonal, the
    ladder factors pick up phases (a -> e^{i delta t} a, b -> e^{-i nu0 t} b)
    and the jump sandwiches a rho a^+ are unchanged.
    """

    def __init__(self, model: DrivenCavityModel, rotating: bool = True):
        self.model = model
        self.rotating = rotating
        self.dc, self.dm = model.dims
        self.dim = self.dc * self.dm
        cav, drive, coup = model.cavity, model.drive, model.coupling

        a = annihilation(self.dc).data
        self.a_c = np.ascontiguousarray(a)
        self.ad_c = np.ascontiguousarray(a.conj().T)
        self.ad_c_T = self.ad_c.T  # for the batched right-multiplication
        self.a_c_T = self.a_c.T
        n_diag = np.arange(self.dc, dtype=float)
        aad_diag = np.concatenate([np.arange(1.0, self.dc), [0.0]])
        decay_cav = -0.5 * cav.kappa * ((cav.n_p + 1.0) * n_diag + cav.n_p * aad_diag)
        free_cav = 1j * cav.delta * n_diag
        self.energies = np.repeat(-cav.delta * n_diag, self.dm) + np.tile(
            drive.nu0 * np.arange(self.dm, dtype=float), self.dc
        )
        g_cav_diag = decay_cav if rotating else decay_cav + free_cav
        full = np.repeat(g_cav_diag, self.dm)
        # hermitian-pair diagonal: G_diag rho + rho G_diag^+ in one pass
        self.g_diag_pair = full[:, None] + np.conj(full)[None, :]
        self.n_cav_diag_full = np.repeat(n_diag, self.dm)

        b = annihilation(self.dm).data
        self.b_m = np.ascontiguousarray(b)
        self.bd_m = np.ascontiguousarray(b.conj().T)
        self.n_m_small = np.diag(np.arange(self.dm, dtype=float)).astype(complex)
        self.f_minus = coup.chi0 * np.conj(coup.alpha0) * self.a_c
        self.f_plus = coup.chi0 * coup.alpha0 * self.ad_c

        self.k_down = cav.kappa * (cav.n_p + 1.0)
        self.k_up = cav.kappa * cav.n_p
        self.g_down = drive.gamma * (drive.n_m + 1.0)
        self.g_up = drive.gamma * drive.n_m

        # persistent work buffers: one apply() costs a dozen dim x dim
        # temporaries, and allocator churn at desk scale dominates the BLAS
        # time.  Outputs rotate through a small pool, so a returned array is
        # valid until four further apply() calls (the stepper copies sooner).
        dim = self.dim
        self._work1 = np.empty((dim, dim), dtype=complex)
        self._work2 = np.empty((dim, dim), dtype=complex)
        self._out_pool = [np.empty((dim, dim), dtype=complex) for _ in range(4)]
        self._pool_idx = 0

    # -- small-factor applications (rho is (dim, dim) row-major) --

    def _cav_left(self, mat, rho, out):
        np.matmul(mat, rho.reshape(self.dc, -1), out=out.reshape(self.dc, -1))
        return out

    def _cav_right(self, mat_t, rho, out):
        # rho (C (x) 1) via batched C^T @ slices; mat_t is C already transposed
        np.matmul(
            mat_t,
            rho.reshape(self.dim, self.dc, self.dm),
            out=out.reshape(self.dim, self.dc, self.dm),
        )
        return out

    def _mech_left(self, mat, rho, out):
        np.matmul(
            mat,
            rho.reshape(self.dc, self.dm, self.dim),
            out=out.reshape(self.dc, self.dm, self.dim),
        )
        return out

    def _mech_right(self, mat, rho, out):
        np.matmul(rho.reshape(-1, self.dm), mat, out=out.reshape(-1, self.dm))
        return out

    def _ladder_coefficients(self, t: float):
        """Small-matrix coefficients of Gamma(t) and the drive factors.

        Returns (beta_minus, beta_plus, vm, vp) with Gamma = beta_minus b +
        beta_plus b^+ and the interaction mech factor w_x x + w_p p =
        vm b + vp b^+, all in the active frame.
        """
        drive = self.model.drive
        g, h = gh(drive, t)
        c_x, c_p = gamma_xp_coefficients(g, h, normalize=True)
        u = drive_phase_factor(drive, t)
        root = np.sqrt(2.0 * drive.nu0)
        beta_minus = c_x / root - 1j * c_p * drive.nu0 / root
        beta_plus = c_x / root + 1j * c_p * drive.nu0 / root
        w_x = 2.0 * np.real(u * c_x)
        w_p = 2.0 * np.real(u * c_p)
        vm = w_x / root - 1j * w_p * drive.nu0 / root
        vp = w_x / root + 1j * w_p * drive.nu0 / root
        if self.rotating:
            phase = np.exp(-1j * drive.nu0 * t)
            beta_minus *= phase
            beta_plus *= np.conj(phase)
            vm *= phase
            vp *= np.conj(phase)
        return beta_minus, beta_plus, vm, vp

    def _interaction_cav(self, t: float):
        if not self.rotating:
            return self.f_minus + self.f_plus
        phase = np.exp(1j * self.model.cavity.delta * t)
        return phase * self.f_minus + np.conj(phase) * self.f_plus

    def apply(self, t: float, rho: np.ndarray) -> np.ndarray:
        """Generator applied to a hermitian (dim, dim) matrix (active frame)."""
        drive = self.model.drive
        beta_minus, beta_plus, vm, vp = self._ladder_coefficients(t)
        gam = beta_minus * self.b_m + beta_plus * self.bd_m
        gam_dag = np.ascontiguousarray(gam.conj().T)
        q_down = gam_dag @ gam
        free = self.n_m_small if self.rotating else 0.0
        g_mech = -1j * drive.nu0 * (q_down - free) - 0.5 * self.g_down * q_down
        if self.g_up:
            g_mech = g_mech - 0.5 * self.g_up * (gam @ gam_dag)
        v_mech = 1j * (vm * self.b_m + vp * self.bd_m)
        f_cav = self._interaction_cav(t)

        w1, w2 = self._work1, self._work2
        out = self._out_pool[self._pool_idx]
        self._pool_idx = (self._pool_idx + 1) % len(self._out_pool)

        np.multiply(self.g_diag_pair, rho, out=out)
        out += self._mech_left(g_mech, rho, w1)
        out += self._mech_right(np.ascontiguousarray(g_mech.conj().T), rho, w1)
        out += self._cav_left(f_cav, self._mech_left(v_mech, rho, w1), w2)
        out += self._mech_right(
            np.ascontiguousarray(v_mech.conj().T), self._cav_right(f_cav.T, rho, w1), w2
        )
        jump = self._cav_right(self.ad_c_T, self._cav_left(self.a_c, rho, w1), w2)
        jump *= self.k_down
        out += jump
        if self.k_up:
            jump = self._cav_right(self.a_c_T, self._cav_left(self.ad_c, rho, w1), w2)
            jump *= self.k_up
            out += jump
        if self.g_down:
            jump = self._mech_right(gam_dag, self._mech_left(gam, rho, w1), w2)
            jump *= self.g_down
            out += jump
            if self.g_up:
                jump = self._mech_right(gam, self._mech_left(gam_dag, rho, w1), w2)
                jump *= self.g_up
                out += jump
        return out

    def to_lab(self, t: float, rho: np.ndarray) -> np.ndarray:
        """Undo the interaction-picture phases at a sample time."""
        if not self.rotating:
            return rho
        phases = np.exp(-1j * self.energies * t)
        return (phases[:, None] * rho) * np.conj(phases)[None, :]

    def mech_number(self, t: float, rho_lab: np.ndarray) -> float:
        """Re Tr[Gamma^+(t) Gamma(t) rho] from the mechanical reduced state."""
        drive = self.model.drive
        g, h = gh(drive, t)
        c_x, c_p = gamma_xp_coefficients(g, h, normalize=True)
        root = np.sqrt(2.0 * drive.nu0)
        beta_minus = c_x / root - 1j * c_p * drive.nu0 / root
        beta_plus = c_x / root + 1j * c_p * drive.nu0 / root
        gam = beta_minus * self.b_m + beta_plus * self.bd_m
        gdg = gam.conj().T @ gam
        r4 = rho_lab.reshape(self.dc, self.dm, self.dc, self.dm)
        rho_m = np.einsum("abad->bd", r4)
        return float(np.real(np.sum(gdg * rho_m.T)))

    def cav_number(self, rho_lab: np.ndarray) -> float:
        return float(np.real(np.sum(self.n_cav_diag_full * np.diagonal(rho_lab))))


def evolve(
    rho0: DensityMatrix,
    model: DrivenCavityModel,
    t_end: float,
    sample_dt: float,
    rtol: float = 1e-8,
    atol: float = 1e-12,
    keep_states: bool = False,
    positivity_checks: int = 25,
    rotating_frame: bool = True,
) -> Trajectory:
    """Integrate the master equation from rho0 to t_end, sampling every sample_dt.

    Observables recorded per sample: ``m_mech`` (Floquet excitation number),
    ``n_cav`` (cavity photons), ``trace_err`` (|Tr rho - 1|).  Raises
    ``PositivityLoss`` when the smallest eigenvalue of a sampled state drops
    below -1e-4, which signals a too-small Fock truncation, and
    ``StepFailure`` when the step controller cannot meet the tolerance.
    ``rotating_frame=False`` integrates in the lab frame (slower, identical
    trajectories; kept as a cross-check).
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if sample_dt <= 0:
        raise ValueError("sample_dt must be positive")
    rho0.validate()
    if rho0.op.dims != model.dims:
        raise DimensionMismatch(f"state dims {rho0.op.dims} vs model dims {model.dims}")

    kernel = _Kernel(model, rotating=rotating_frame)
    dim = kernel.dim

    def rhs(t, y):
        return kernel.apply(t, y.reshape(dim, dim)).reshape(-1)

    sample_times = np.arange(0.0, t_end + 0.5 * sample_dt, sample_dt)
    m_mech = np.empty(sample_times.size)
    n_cav = np.empty(sample_times.size)
    trace_err = np.empty(sample_times.size)
    states: list[DensityMatrix] = []
    eig_check_stride = max(1, sample_times.size // max(positivity_checks, 1))

    def record(idx, t, rho_frame):
        rho = kernel.to_lab(t, rho_frame)
        m_mech[idx] = kernel.mech_number(t, rho)
        n_cav[idx] = kernel.cav_number(rho)
        trace_err[idx] = abs(np.trace(rho).real - 1.0)
        if idx % eig_check_stride == 0 or idx == sample_times.size - 1:
            lam_min = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
            if lam_min < POSITIVITY_ABORT:
                raise PositivityLoss(
                    f"min eigenvalue {lam_min:.3e} at t = {t:.4g}; increase Fock cutoffs"
                )
        if keep_states:
            states.append(DensityMatrix(DenseOperator(rho.copy(), model.dims), t))

    record(0, 0.0, rho0.op.data.astype(complex))

    solver = DOP853(rhs, 0.0, rho0.op.data.reshape(-1).astype(complex), t_end, rtol=rtol, atol=atol)
    next_idx = 1
    while next_idx < sample_times.size:
        if solver.status == "finished":
            break
        msg = solver.step()
        if solver.status == "failed":
            raise StepFailure(f"master-equation step failed: {msg}")
        interp = None
        while next_idx < sample_times.size and sample_times[next_idx] <= solver.t + 1e-12:
            if interp is None:
                interp = solver.dense_output()
            y_s = interp(min(sample_times[next_idx], solver.t))
            record(next_idx, sample_times[next_idx], y_s.reshape(dim, dim))
            next_idx += 1

    return Trajectory(
        times=sample_times,
        observables={"m_mech": m_mech, "n_cav": n_cav, "trace_err": trace_err},
        states=states,
        model=model,
    )


def mech_excitations(state: DensityMatrix, drive: MechanicalDrive, t: float) -> float:
    """Re Tr[(1 x Gamma^+(t)Gamma(t)) rho]; the imaginary part must be tiny.

    Dense route, independent of the cached kernel used inside ``evolve``.
    """
    dims = state.op.dims
    if len(dims) != 2:
        raise DimensionMismatch("state must live on a cavity x mechanics space")
    gam = gamma_op(drive, t, dims[1])
    op = tensor(identity(dims[0]), gam.dag() @ gam)
    val = np.trace(op.data @ state.op.data)
    if abs(val.imag) > 1e-10:
        raise DimensionMismatch(f"non-real excitation number, imag = {val.imag:.3e}")
    return float(val.real)


def period_average(traj: Trajectory, name: str, period: float) -> float:
    """Trapezoidal average of an observable over the final full period."""
    values = traj.observable(name)
    times = traj.times
    t_hi = times[-1]
    t_lo = t_hi - period
    if t_lo < times[0] - 1e-12:
        raise InsufficientSpan(
            f"trajectory spans {times[-1] - times[0]:.4g}, need >= one period {period:.4g}"
        )
    mask = (times >= t_lo - 1e-12) & (times <= t_hi + 1e-12)
    ts = times[mask]
    vs = values[mask]
    if ts.size < 2:
        raise InsufficientSpan("fewer than two samples in the averaging window")
    if ts[0] > t_lo + 1e-12:
        v_lo = np.interp(t_lo, times, values)
        ts = np.concatenate(([t_lo], ts))
        vs = np.concatenate(([v_lo], vs))
    return float(np.trapezoid(vs, ts) / (ts[-1] - ts[0]))


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """CSV export with columns time, m_mech, n_cav, trace_err."""
    with open(path, "w", newline="\n") as fh:
        fh.write("time,m_mech,n_cav,trace_err\n")
        for i, t in enumerate(traj.times):
            fh.write(
                f"{t:.12g},{traj.observables['m_mech'][i]:.12g},"
                f"{traj.observables['n_cav'][i]:.12g},{traj.observables['trace_err'][i]:.12g}\n"
            )
