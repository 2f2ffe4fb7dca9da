"""Damping basis of the leaky-cavity Liouvillian on a truncated Fock space.

Left and right eigenoperators of

    L(rho) = -i w_c [a^+a, rho] + (kappa/2)(n_p+1) D[a] + (kappa/2) n_p D[a^+]

with eigenvalues  lambda_n^j = i j w_c - kappa (n + |j|/2).  The winding
index is oriented so that the eigenvalue relation holds under the forward
generator: positive j states carry a^{j} (they connect |m> to |m+j>), and
their duals carry a^{+j}.  Normal-ordered functions of a^+a are evaluated
through the exact Fock matrix elements

    <m| :(a^+a)^i exp(-a^+a/c): |m> = m!/(m-i)! (1 - 1/c)^(m-i),

and at n_p = 0 the closed binomial forms are used directly.  All states are
validated against the brute-force superoperator matrix built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .errors import IndexOutOfTruncation
from .operators import DenseOperator, annihilation

__all__ = [
    "DampingEigenstate",
    "eigenvalue",
    "right_state",
    "left_state",
    "damping_eigenstate",
    "mechanical_eigenstates",
    "cavity_liouvillian_matrix",
    "right_residual",
    "left_residual",
    "pairing",
]


@dataclass(frozen=True)
class DampingEigenstate:
    """One left/right eigenpair of a damped-oscillator Liouvillian."""

    n: int
    j: int
    right: DenseOperator
    left: DenseOperator
    eigenvalue: complex


def eigenvalue(n: int, j: int, omega_c: float, kappa: float) -> complex:
    """lambda_n^j = i j omega_c - kappa (n + |j|/2)."""
    if n < 0:
        raise IndexOutOfTruncation("radial index n must be >= 0")
    return 1j * j * omega_c - kappa * (n + abs(j) / 2.0)


def _falling(m: int, i: int) -> int:
    out = 1
    for k in range(i):
        out *= m - k
    return out


def _check_indices(n: int, j: int, dim: int) -> int:
    if n < 0:
        raise IndexOutOfTruncation("radial index n must be >= 0")
    if n + abs(j) >= dim:
        raise IndexOutOfTruncation(f"state (n={n}, j={j}) does not fit in dim={dim}")
    return abs(j)


def _right_diag(n: int, ell: int, n_p: float, dim: int) -> np.ndarray:
    if n_p == 0:
        # <m| (-1)^(a^+a + n) binom(n+l, a^+a+l) |m>: compact support m <= n
        diag = np.zeros(dim)
        for m in range(min(n, dim - 1) + 1):
            diag[m] = (-1) ** (m + n) * comb(n + ell, m + ell)
        return diag
    c = n_p + 1.0
    s = n_p / c
    diag = np.zeros(dim)
    for m in range(dim):
        acc = 0.0
        for i in range(min(n, m) + 1):
            acc += (
                (-1) ** i
                * comb(n + ell, n - i)
                * _falling(m, i)
                * s ** (m - i)
                / (factorial(i) * c**i)
            )
        diag[m] = acc
    return diag


def _left_diag(n: int, ell: int, n_p: float, dim: int) -> np.ndarray:
    if n_p == 0:
        return np.array([comb(m, n) for m in range(dim)], dtype=float)
    diag = np.zeros(dim)
    for m in range(dim):
        acc = 0.0
        for i in range(min(n, m) + 1):
            acc += (
                (-1) ** i
                * comb(n + ell, n - i)
                * _falling(m, i)
                / (factorial(i) * n_p**i)
            )
        diag[m] = acc
    return diag


def right_state(n: int, j: int, n_p: float, dim: int) -> DenseOperator:
    """Right eigenoperator rho-hat_n^j of the damped cavity.

    (n=0, j=0) is the thermal stationary state; at n_p = 0 it is |0><0|.
    """
    ell = _check_indices(n, j, dim)
    diag = np.diag(_right_diag(n, ell, n_p, dim)).astype(complex)
    pref = 1.0 if n_p == 0 else (-1.0) ** n / (n_p + 1.0) ** (ell + 1)
    if j == 0:
        mat = diag
    else:
        shift = np.linalg.matrix_power(annihilation(dim).data, ell)
        mat = diag @ shift if j > 0 else shift.conj().T @ diag
    return DenseOperator(pref * mat, (dim,))


def left_state(n: int, j: int, n_p: float, dim: int) -> DenseOperator:
    """Left eigenoperator rho-check_n^j, dual to ``right_state``.

    (n=0, j=0) is the identity (the trace functional) for any n_p.
    """
    ell = _check_indices(n, j, dim)
    diag = np.diag(_left_diag(n, ell, n_p, dim)).astype(complex)
    pref = factorial(n) / factorial(n + ell)
    if n_p > 0:
        pref *= (-n_p / (n_p + 1.0)) ** n
    if j == 0:
        mat = diag
    else:
        shift = np.linalg.matrix_power(annihilation(dim).data, ell)
        mat = shift.conj().T @ diag if j > 0 else diag @ shift
    return DenseOperator(pref * mat, (dim,))


def damping_eigenstate(
    n: int, j: int, omega_c: float, kappa: float, n_p: float, dim: int
) -> DampingEigenstate:
    return DampingEigenstate(
        n=n,
        j=j,
        right=right_state(n, j, n_p, dim),
        left=left_state(n, j, n_p, dim),
        eigenvalue=eigenvalue(n, j, omega_c, kappa),
    )


def mechanical_eigenstates(n: int, l: int, dim: int, nu0: float = 1.0) -> DampingEigenstate:
    """Zero-damping mechanical eigenpair: lambda = i l nu0.

    For l >= 0 the right state is |n><n+l| (and the left its adjoint), the
    winding orientation under which (1/i)[nu0 b^+b, rho] = i l nu0 rho holds
    numerically.
    """
    if n < 0 or n + abs(l) >= dim or n >= dim:
        raise IndexOutOfTruncation(f"state (n={n}, l={l}) does not fit in dim={dim}")
    ket, bra = (n, n + l) if l >= 0 else (n + abs(l), n)
    mat = np.zeros((dim, dim), dtype=complex)
    mat[ket, bra] = 1.0
    right = DenseOperator(mat, (dim,))
    return DampingEigenstate(n=n, j=l, right=right, left=right.dag(), eigenvalue=1j * l * nu0)


def cavity_liouvillian_matrix(omega_c: float, kappa: float, n_p: float, dim: int) -> np.ndarray:
    """Brute-force superoperator matrix of the damped cavity (row-major vec)."""
    a = annihilation(dim).data
    ad = a.conj().T
    n_op = ad @ a
    aad = a @ ad
    eye = np.eye(dim)

    def sandwich(left, right):
        # vec(L rho R) = (L kron R^T) vec(rho) for row-major flattening
        return np.kron(left, right.T)

    out = -1j * omega_c * (sandwich(n_op, eye) - sandwich(eye, n_op))
    out += 0.5 * kappa * (n_p + 1.0) * (
        2.0 * sandwich(a, ad) - sandwich(n_op, eye) - sandwich(eye, n_op)
    )
    if n_p > 0:
        out += 0.5 * kappa * n_p * (
            2.0 * sandwich(ad, a) - sandwich(aad, eye) - sandwich(eye, aad)
        )
    return out


def right_residual(liouvillian: np.ndarray, state: DenseOperator, lam: complex) -> float:
    """max |L rho - lambda rho| for a right-eigenstate candidate."""
    vec = state.data.reshape(-1)
    return float(np.max(np.abs(liouvillian @ vec - lam * vec)))


def left_residual(liouvillian: np.ndarray, state: DenseOperator, lam: complex) -> float:
    """max |rho L - lambda rho|, i.e. the transposed-generator relation."""
    vec = state.data.T.reshape(-1)
    return float(np.max(np.abs(liouvillian.T @ vec - lam * vec)))


def pairing(a: DenseOperator, b: DenseOperator) -> complex:
    """Hilbert-Schmidt pairing Tr[a b] used for biorthonormality."""
    return complex(np.sum(a.data * b.data.T))
