"""Truncated Fock-space operator algebra on dense complex matrices.

Everything in this module is plain dense linear algebra.  Operators carry a
``dims`` tuple with the dimensions of the tensor factors they act on, so
product-space bookkeeping is checked instead of assumed.  Units are
hbar = M = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, StateValidationError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
POSITIVITY_TOL = 1e-8


@dataclass(frozen=True)
class DenseOperator:
    """Complex square matrix plus the dimensions of its tensor factors."""

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DimensionMismatch(f"operator matrix must be square, got {data.shape}")
        dims = tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != data.shape[0]:
            raise DimensionMismatch(
                f"prod(dims)={int(np.prod(dims))} does not match matrix size {data.shape[0]}"
            )
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def dag(self) -> "DenseOperator":
        return DenseOperator(self.data.conj().T, self.dims)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def _check_dims(self, other: "DenseOperator"):
        if self.dims != other.dims:
            raise DimensionMismatch(f"dims {self.dims} vs {other.dims}")

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_dims(other)
        return DenseOperator(self.data @ other.data, self.dims)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_dims(other)
        return DenseOperator(self.data + other.data, self.dims)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_dims(other)
        return DenseOperator(self.data - other.data, self.dims)

    def __mul__(self, scalar) -> "DenseOperator":
        return DenseOperator(self.data * complex(scalar), self.dims)

    __rmul__ = __mul__

    def __neg__(self) -> "DenseOperator":
        return DenseOperator(-self.data, self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """A density operator with the time it refers to."""

    op: DenseOperator
    time: float = 0.0

    def validate(
        self,
        hermiticity_tol: float = HERMITICITY_TOL,
        trace_tol: float = TRACE_TOL,
        positivity_tol: float = POSITIVITY_TOL,
    ) -> None:
        """Raise ``StateValidationError`` unless hermitian, unit-trace, positive."""
        rho = self.op.data
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > hermiticity_tol:
            raise StateValidationError(f"not hermitian: max |rho - rho^+| = {herm:.3e}")
        tr = abs(np.trace(rho) - 1.0)
        if tr > trace_tol:
            raise StateValidationError(f"trace deviates from 1 by {tr:.3e}")
        lam_min = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
        if lam_min < -positivity_tol:
            raise StateValidationError(f"negative eigenvalue {lam_min:.3e}")


def identity(dim: int) -> DenseOperator:
    return DenseOperator(np.eye(dim, dtype=complex), (dim,))


def annihilation(dim: int) -> DenseOperator:
    """Fock-basis annihilation operator: entries sqrt(k) at (k-1, k)."""
    if dim < 2:
        raise DimensionMismatch("annihilation needs dim >= 2")
    a = np.zeros((dim, dim), dtype=complex)
    ks = np.arange(1, dim)
    a[ks - 1, ks] = np.sqrt(ks)
    return DenseOperator(a, (dim,))


def number(dim: int) -> DenseOperator:
    return DenseOperator(np.diag(np.arange(dim)).astype(complex), (dim,))


def quadratures(dim: int, nu: float) -> tuple[DenseOperator, DenseOperator]:
    """Position and momentum of an oscillator with frequency nu (hbar = M = 1).

    x = (b + b^+)/sqrt(2 nu),  p = i sqrt(nu/2) (b^+ - b), so [x, p] = i on the
    non-truncated block.
    """
    if nu <= 0:
        raise ValueError("nu must be positive")
    b = annihilation(dim).data
    bd = b.conj().T
    x = (b + bd) / np.sqrt(2.0 * nu)
    p = 1j * np.sqrt(nu / 2.0) * (bd - b)
    return DenseOperator(x, (dim,)), DenseOperator(p, (dim,))


def tensor(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    return DenseOperator(np.kron(a.data, b.data), a.dims + b.dims)


def commutator(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    if a.dims != b.dims:
        raise DimensionMismatch(f"dims {a.dims} vs {b.dims}")
    return DenseOperator(a.data @ b.data - b.data @ a.data, a.dims)


def dissipator(lindblad_op: DenseOperator, rho: DenseOperator) -> DenseOperator:
    """Lindblad dissipator D[L] rho = 2 L rho L^+ - L^+L rho - rho L^+L."""
    if lindblad_op.dims != rho.dims:
        raise DimensionMismatch(f"dims {lindblad_op.dims} vs {rho.dims}")
    ell = lindblad_op.data
    ell_dag = ell.conj().T
    ldl = ell_dag @ ell
    out = 2.0 * (ell @ rho.data @ ell_dag) - ldl @ rho.data - rho.data @ ldl
    return DenseOperator(out, rho.dims)


def expectation(a: DenseOperator, rho: DenseOperator) -> complex:
    if a.dims != rho.dims:
        raise DimensionMismatch(f"dims {a.dims} vs {rho.dims}")
    return complex(np.trace(a.data @ rho.data))


def fock_projector(dim: int, k: int) -> DenseOperator:
    if not 0 <= k < dim:
        raise DimensionMismatch(f"Fock index {k} outside dim {dim}")
    mat = np.zeros((dim, dim), dtype=complex)
    mat[k, k] = 1.0
    return DenseOperator(mat, (dim,))


def thermal_state(dim: int, nbar: float) -> DenseOperator:
    """Thermal state diag((nbar/(nbar+1))^k)/Z, renormalized on the truncation.

    Keep nbar <~ dim/10 so the truncated tail is negligible.
    """
    if nbar < 0:
        raise ValueError("nbar must be >= 0")
    if nbar == 0:
        return fock_projector(dim, 0)
    weights = (nbar / (nbar + 1.0)) ** np.arange(dim)
    weights /= weights.sum()
    return DenseOperator(np.diag(weights).astype(complex), (dim,))
