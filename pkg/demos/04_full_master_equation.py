"""Full master equation as the arbiter of the drive effect.

Evolves the complete cavity x mechanics model at weak coupling for the
drive on (both signs) and off, then compares the settled period-averaged
excitation number against the two reduced descriptions.  The full model
reproduces the integrated covariance equation: the period average is
insensitive to the drive sign (effect at second order in eps), while the
closed-form trace predicts a first-order, sign-dependent shift that the
microscopic dynamics do not show.

The absolute level also sits ~8 (g_eff/kappa)^2 above the projected
analytics: the full state carries cavity-mechanics correlations whose
occupation the reduced description excludes.

Runtime: a couple of minutes (three evolutions to the settled regime).
"""

import numpy as np

from optofloquet import (
    CavityConfig,
    EffectiveCoupling,
    drive_from_floquet,
    evolve,
    m_bar,
    period_average,
    rates,
    settling_time,
)
from optofloquet.model import DrivenCavityModel

NU0, KAPPA, OMEGA = 1.0, 0.25, 0.5
DELTA, G_EFF = -0.9469, 0.1
DIMS = (8, 8)
period = np.pi / OMEGA

results = {}
for eps in (0.0, 1.0 / 18.0, -1.0 / 18.0):
    cfg = CavityConfig(delta=DELTA, kappa=KAPPA)
    drive = drive_from_floquet(NU0, eps, OMEGA)
    coup = EffectiveCoupling.from_g_eff(G_EFF, cfg)
    rs = rates(drive, cfg, coup)
    t_settle = np.ceil(settling_time(rs) / period) * period
    model = DrivenCavityModel(drive, cfg, coup, DIMS)
    traj = evolve(model.initial_state(), model, t_settle + 2 * period, period / 128)
    results[eps] = period_average(traj, "m_mech", period)
    closed = m_bar(rs, eps, OMEGA)
    print(
        f"eps = {eps:+.4f}: full model {results[eps]:.5e}, closed form {closed:.5e}, "
        f"projected undriven {rs.A_plus_0 / rs.Gamma_cool:.5e}"
    )

print()
print(f"full-model drive effect, eps > 0: {results[1/18.] / results[0.0] - 1:+.3%}")
print(f"full-model drive effect, eps < 0: {results[-1/18.] / results[0.0] - 1:+.3%}")
print("(the closed form predicts -/+ 4.8% here; the integrated covariance")
print(" equation predicts the sign-independent per-mille effect seen above)")
