"""Sideband cooling of a parametrically driven optomechanical cavity.

Library layout:

- :mod:`optofloquet.floquet`   classical modulated oscillator (analytic + oracle)
- :mod:`optofloquet.operators` truncated Fock-space operator algebra
- :mod:`optofloquet.model`     Floquet ladder operators, Hamiltonian, Liouvillian
- :mod:`optofloquet.evolve`    brute-force master-equation integrator
- :mod:`optofloquet.damping`   damping basis of the leaky cavity
- :mod:`optofloquet.cooling`   rates, covariance dynamics, phonon-number formulas
- :mod:`optofloquet.scenario`  batch scenarios, CSV/SVG output
- :mod:`optofloquet.cli`       command-line frontend (run / verify / figure)
"""

from . import errors
from .cooling import (
    CovarianceState,
    RateSet,
    covariance_evolve,
    crossing_detuning,
    m_bar,
    m_bar_approx,
    m_bar_quadrature,
    m_bar_weak,
    mean_m,
    rate_at_time,
    rates,
    settling_time,
    trace_analytic,
    vacuum_covariance,
)
from .damping import (
    DampingEigenstate,
    cavity_liouvillian_matrix,
    damping_eigenstate,
    eigenvalue,
    left_state,
    mechanical_eigenstates,
    right_state,
)
from .evolve import (
    Trajectory,
    evolve,
    mech_excitations,
    period_average,
    write_trajectory_csv,
)
from .floquet import (
    FloquetFunctions,
    FloquetTrajectory,
    MechanicalDrive,
    analytic_f,
    drive_from_floquet,
    drive_from_physical,
    gh,
    numeric_f,
    wronskian,
)
from .model import (
    CavityConfig,
    DrivenCavityModel,
    EffectiveCoupling,
    alpha0,
    gamma_op,
    hamiltonian,
    liouvillian_apply,
)
from .operators import (
    DenseOperator,
    DensityMatrix,
    annihilation,
    commutator,
    dissipator,
    expectation,
    fock_projector,
    identity,
    number,
    quadratures,
    tensor,
    thermal_state,
)

__version__ = "0.1.0"
