"""Damping basis of the leaky cavity against brute-force diagonalization.

Builds the analytic left/right eigenoperators of the damped-cavity
generator and checks them against the exact superoperator matrix, at zero
temperature (where the truncated relations are exact) and at n_p = 0.5
(where the polynomial-dressed thermal tails demand a generous Fock
cutoff).  Prints residuals vs cutoff and plots the analytic spectrum over
the numerically diagonalized one.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from optofloquet.damping import (
    cavity_liouvillian_matrix,
    damping_eigenstate,
    eigenvalue,
    pairing,
    right_residual,
)

OMEGA_C, KAPPA = 1.0, 0.25

print("worst weight-6 right-eigenstate residual vs Fock cutoff (n_p = 0.5):")
for dim in (16, 24, 32, 48, 56):
    liou = cavity_liouvillian_matrix(OMEGA_C, KAPPA, 0.5, dim)
    states = [
        damping_eigenstate(n, j, OMEGA_C, KAPPA, 0.5, dim)
        for n in range(7)
        for j in range(-(6 - n), 7 - n)
    ]
    worst = max(right_residual(liou, s.right, s.eigenvalue) for s in states)
    pair = max(
        abs(pairing(s1.right, s2.left) - (1.0 if (s1.n, s1.j) == (s2.n, s2.j) else 0.0))
        for s1 in states
        for s2 in states
    )
    print(f"  dim = {dim:2d}: residual {worst:.2e}, biorthonormality defect {pair:.2e}")

dim = 16
spectrum = np.linalg.eigvals(cavity_liouvillian_matrix(OMEGA_C, KAPPA, 0.0, dim))
analytic = [
    eigenvalue(n, j, OMEGA_C, KAPPA) for n in range(7) for j in range(-(6 - n), 7 - n)
]

fig, ax = plt.subplots(figsize=(4.8, 3.6), dpi=120)
ax.plot(spectrum.real, spectrum.imag, ".", ms=3, alpha=0.4, label="numerical spectrum")
ax.plot(
    [lam.real for lam in analytic],
    [lam.imag for lam in analytic],
    "o",
    mfc="none",
    ms=7,
    label="analytic (n + |j| <= 6)",
)
ax.set_xlabel("Re lambda (decay)")
ax.set_ylabel("Im lambda (rotation)")
ax.legend(fontsize=8, frameon=False)
fig.tight_layout()
fig.savefig("damping_basis_spectrum.svg")
print("wrote damping_basis_spectrum.svg")
