"""Acceptance suite: one test per headline criterion, printed pass/fail lines.

Each criterion is implemented exactly at its stated tolerance.  Four of them
encode targets that the verified dynamics cannot meet; they are kept as
stated (not loosened) and fail with measured diagnostics:

- criterion 3: finite-temperature damping-basis relations at Fock cutoff 16
  are truncation-limited (the polynomial-dressed thermal tails need cutoff
  ~56 to reach 1e-8; see tests/test_damping.py where that passes);
- criterion 4: the five-term closed-form covariance trace differs from the
  integrated covariance equation at first order in the drive strength (the
  closed form's source derivation propagates a time-shifted kernel), so the
  max(eps^2, 1e-4) band only holds on the undriven grid column;
- criterion 6: the full model carries a cavity-correlation occupation of
  about 8 (g/kappa)^2 (~+30% at g_eff = 0.05) that the projected rate
  analytics exclude, overshooting the 15% band; the scaling is pinned in
  tests/test_evolve.py;
- criterion 7c: with the stated parameters the closed-form ratio deviates
  from 1 by up to 0.43 at the window edges, outside [0.03, 0.15]; the
  deviation evaluated at the driven optimum (~0.10) does lie in the band.
"""

import time

import numpy as np
import pytest

import optofloquet as of
from optofloquet.damping import (
    cavity_liouvillian_matrix,
    damping_eigenstate,
    left_residual,
    pairing,
    right_residual,
)
from optofloquet.figures import fig1_scenario, fig2_scenario
from optofloquet.model import DrivenCavityModel
from optofloquet.scenario import run_scenario

NU0 = 1.0
N_ORDER = 2
OMEGA = NU0 / N_ORDER
EPS = 1.0 / 18.0
KAPPA = 0.25
PERIOD = np.pi / OMEGA
FIG_G2 = 0.25  # chi0^2 |alpha0|^2 at the reference figures
ORACLE_DELTA = -0.9469
ORACLE_G = 0.05


def report(num, passed, detail):
    print(f"criterion {num}: {'PASS' if passed else 'FAIL'} - {detail}")


def rates_for(delta, eps=EPS, g_eff=np.sqrt(FIG_G2)):
    drive = of.drive_from_floquet(NU0, eps, OMEGA)
    cfg = of.CavityConfig(delta=delta, kappa=KAPPA)
    coup = of.EffectiveCoupling.from_g_eff(g_eff, cfg)
    return of.rates(drive, cfg, coup), drive


def test_criterion_1_mathieu_oracle():
    """Analytic vs numeric classical solution within 5 eps^2 in under 1 s."""
    start = time.perf_counter()
    drive = of.drive_from_floquet(NU0, EPS, OMEGA)
    grid = np.linspace(0.0, drive.period, 257)
    traj = of.numeric_f(drive, grid)
    ana = of.analytic_f(drive, grid)
    dev = float(np.max(np.abs(traj.f - ana.f)) / np.max(np.abs(ana.f)))
    elapsed = time.perf_counter() - start
    bound = 5.0 * EPS**2
    ok = dev <= bound and elapsed < 1.0
    report(1, ok, f"relative deviation {dev:.3e} <= {bound:.3e}, {elapsed:.2f}s")
    assert dev <= bound
    assert elapsed < 1.0


def test_criterion_2_floquet_commutator():
    """[Gamma, Gamma^+] = 1 to 1e-10 on the lowest 10 of 16 levels."""
    start = time.perf_counter()
    drive = of.drive_from_floquet(NU0, EPS, OMEGA)
    rng = np.random.default_rng(2024)
    worst = 0.0
    for t in rng.uniform(0.0, drive.period, size=20):
        gam = of.gamma_op(drive, float(t), 16)
        comm = (gam @ gam.dag() - gam.dag() @ gam).data
        worst = max(worst, float(np.max(np.abs(comm[:10, :10] - np.eye(10)))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 1.0
    report(2, ok, f"max commutator deviation {worst:.3e} <= 1e-10, {elapsed:.2f}s")
    assert worst <= 1e-10
    assert elapsed < 1.0


def test_criterion_3_damping_basis():
    """Eigen-residuals and biorthonormality <= 1e-8, n+|j| <= 6, dim 16,
    n_p in {0, 0.5}, against the brute-force superoperator."""
    start = time.perf_counter()
    dim, omega_c = 16, NU0
    worst = {}
    for n_p in (0.0, 0.5):
        liou = cavity_liouvillian_matrix(omega_c, KAPPA, n_p, dim)
        states = [
            damping_eigenstate(n, j, omega_c, KAPPA, n_p, dim)
            for n in range(7)
            for j in range(-(6 - n), 7 - n)
        ]
        res = max(
            max(right_residual(liou, s.right, s.eigenvalue) for s in states),
            max(left_residual(liou, s.left, s.eigenvalue) for s in states),
        )
        pair = max(
            abs(pairing(s1.right, s2.left) - (1.0 if (s1.n, s1.j) == (s2.n, s2.j) else 0.0))
            for s1 in states
            for s2 in states
        )
        worst[n_p] = (res, pair)
    elapsed = time.perf_counter() - start
    ok = elapsed < 30.0 and all(r <= 1e-8 and p <= 1e-8 for r, p in worst.values())
    report(
        3,
        ok,
        f"n_p=0: residual {worst[0.0][0]:.1e}, biorth {worst[0.0][1]:.1e}; "
        f"n_p=0.5: residual {worst[0.5][0]:.1e}, biorth {worst[0.5][1]:.1e} "
        f"(target 1e-8 each; finite-T tails are truncation-limited at dim 16, "
        f"dim 56 reaches 1e-8), {elapsed:.1f}s",
    )
    assert elapsed < 30.0
    for n_p, (res, pair) in worst.items():
        assert res <= 1e-8, (
            f"n_p={n_p}: eigen-residual {res:.3e} > 1e-8 at dim=16; the "
            "polynomial-dressed thermal tails of the printed states decay as "
            "(n_p/(n_p+1))^m m^n and need cutoff ~56 (verified in "
            "tests/test_damping.py) for this tolerance"
        )
        assert pair <= 1e-8, f"n_p={n_p}: biorthonormality defect {pair:.3e} > 1e-8 at dim=16"


def test_criterion_4_covariance_closed_form():
    """Closed-form trace vs integrated covariance within max(eps^2, 1e-4)
    over the 5x5 (delta, eps) grid."""
    start = time.perf_counter()
    worst_ratio, worst_case = 0.0, None
    failures = []
    for delta in np.linspace(-1.2, -0.8, 5):
        for eps in (0.0, EPS, -EPS, 1.0 / 36.0, -1.0 / 36.0):
            rs, drive = rates_for(float(delta), eps=eps)
            t_end = 1.3 * of.settling_time(rs)
            states = of.covariance_evolve(
                rs, drive, of.vacuum_covariance(), t_end, t_end / 400
            )
            closed = of.trace_analytic(rs, eps, OMEGA, states[-1].time)
            rel = abs(closed - states[-1].trace) / states[-1].trace
            tol = max(eps**2, 1e-4)
            if rel > tol:
                failures.append((float(delta), eps, rel, tol))
            if rel / tol > worst_ratio:
                worst_ratio, worst_case = rel / tol, (float(delta), eps, rel, tol)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10.0
    report(
        4,
        ok,
        f"{len(failures)}/25 grid points out of band; worst {worst_case[2]:.3e} vs "
        f"tol {worst_case[3]:.1e} at delta={worst_case[0]:.2f}, eps={worst_case[1]:+.4f}; "
        f"{elapsed:.1f}s (undriven column passes; driven columns differ at O(eps))",
    )
    assert elapsed < 10.0
    assert not failures, (
        f"closed form vs covariance equation out of tolerance at {len(failures)} "
        f"driven grid points (worst {worst_case}); the closed form's drive terms "
        "do not solve the stated rate equation at first order in eps — its "
        "source derivation integrates a time-shifted kernel (see notes/ledger); "
        "the integrated equation is confirmed against an independent "
        "first-order periodic solution in tests/test_cooling.py"
    )


def test_criterion_5_undriven_sideband_limit():
    """mean_m identity with ((delta+nu0)^2 + kappa^2/4)/(-4 delta nu0)."""
    worst = 0.0
    for delta in (-1.2, -1.0, ORACLE_DELTA, -0.8):
        rs, _ = rates_for(delta, eps=0.0)
        value = of.mean_m(of.trace_analytic(rs, 0.0, OMEGA, 0.0))
        closed = ((delta + NU0) ** 2 + KAPPA**2 / 4.0) / (-4.0 * delta * NU0)
        worst = max(worst, abs(value - closed) / closed)
    rs, _ = rates_for(-1.0, eps=0.0)
    resonant = of.mean_m(of.trace_analytic(rs, 0.0, OMEGA, 0.0))
    exact = abs(resonant - 3.90625e-3) / 3.90625e-3
    ok = worst <= 1e-12 and exact <= 1e-12
    report(5, ok, f"identity error {worst:.2e} <= 1e-12; value at delta=-nu0 "
                  f"= {resonant:.6e} (3.90625e-3)")
    assert worst <= 1e-12
    assert exact <= 1e-12


def _full_model_run(dims):
    drive = of.drive_from_floquet(NU0, EPS, OMEGA)
    cfg = of.CavityConfig(delta=ORACLE_DELTA, kappa=KAPPA)
    coup = of.EffectiveCoupling.from_g_eff(ORACLE_G, cfg)
    rs = of.rates(drive, cfg, coup)
    t_settle = float(np.ceil(of.settling_time(rs) / PERIOD) * PERIOD)
    t_end = t_settle + 2.0 * PERIOD
    model = DrivenCavityModel(drive, cfg, coup, dims)
    start = time.perf_counter()
    traj = of.evolve(model.initial_state(), model, t_end, PERIOD / 128)
    elapsed = time.perf_counter() - start
    mbar_sim = of.period_average(traj, "m_mech", PERIOD)
    window = traj.times >= t_settle - 1e-9
    samples = traj.observables["m_mech"][window][:-1]
    return {
        "mbar_sim": mbar_sim,
        "mbar_closed": of.m_bar(rs, EPS, OMEGA),
        "window_samples": samples,
        "elapsed": elapsed,
    }


@pytest.fixture(scope="module")
def oracle_run():
    return _full_model_run((12, 12))


@pytest.fixture(scope="module")
def doubled_run():
    return _full_model_run((24, 24))


def test_criterion_6_full_model_oracle(oracle_run):
    """Period-averaged excitations from the full model vs the closed form
    within 15%, with the dominant oscillation at 2 omega."""
    sim = oracle_run["mbar_sim"]
    closed = oracle_run["mbar_closed"]
    rel = abs(sim - closed) / closed
    spectrum = np.abs(np.fft.rfft(oracle_run["window_samples"]
                                  - oracle_run["window_samples"].mean()))
    # window spans two periods, so 2*omega sits in bin 2
    dominant = int(np.argmax(spectrum[1:]) + 1)
    ok = rel <= 0.15 and dominant == 2
    report(
        6,
        ok,
        f"sim {sim:.4e} vs closed form {closed:.4e} (rel {rel:.1%}, band 15%); "
        f"dominant Fourier bin {dominant} (2 omega = bin 2); "
        f"{oracle_run['elapsed']:.0f}s at dims (12, 12)",
    )
    assert dominant == 2
    assert rel <= 0.15, (
        f"full-model average {sim:.4e} vs closed form {closed:.4e}: {rel:.1%} > 15%; "
        "the full model includes the cavity-correlation occupation "
        "~8 (g_eff/kappa)^2 (+32% here) that the projected analytics exclude "
        "(scaling verified in tests/test_evolve.py; at g_eff = 0.02 the gap "
        "drops to ~5%)"
    )


def test_criterion_7_qualitative_claims():
    """(a) exact driven/undriven crossing, (b) sign structure,
    (c) extremal ratio deviation inside [0.03, 0.15]."""
    cross = of.crossing_detuning(NU0, KAPPA)
    rs, _ = rates_for(cross)
    cross_dev = abs(of.m_bar(rs, EPS, OMEGA) / of.m_bar(rs, 0.0, OMEGA) - 1.0)
    ok_a = cross_dev <= 1e-12 and abs(cross - (-1.00778)) < 1e-5

    sign_ok = True
    deltas = np.linspace(-1.2, -0.8, 81)
    ratios = {}
    for eps in (EPS, -EPS):
        vals = []
        for delta in deltas:
            rs, _ = rates_for(float(delta), eps=eps)
            vals.append(of.m_bar(rs, eps, OMEGA) / of.m_bar(rs, 0.0, OMEGA))
        ratios[eps] = np.array(vals)
    sign_ok = bool(
        np.all((ratios[EPS] < 1.0) == (deltas > cross))
        and np.all((ratios[-EPS] > 1.0) == (deltas > cross))
    )

    extremal = max(float(np.max(np.abs(r - 1.0))) for r in ratios.values())
    ok_c = 0.03 <= extremal <= 0.15

    # context: deviation at the driven optimum, the figure of merit the band
    # is consistent with
    best = []
    for eps in (EPS, -EPS):
        m_driven = np.array(
            [of.m_bar(rates_for(float(d), eps=eps)[0], eps, OMEGA) for d in deltas]
        )
        idx = int(np.argmin(m_driven))
        best.append(abs(ratios[eps][idx] - 1.0))
    report(
        7,
        ok_a and sign_ok and ok_c,
        f"(a) crossing at {cross:.5f}, deviation {cross_dev:.1e}; (b) sign "
        f"structure {'ok' if sign_ok else 'violated'}; (c) extremal |ratio-1| "
        f"= {extremal:.3f} vs band [0.03, 0.15] (at the driven optimum: "
        f"{best[0]:.3f}/{best[1]:.3f})",
    )
    assert ok_a, f"crossing not exact: deviation {cross_dev:.3e}"
    assert sign_ok
    assert 0.03 <= extremal <= 0.15, (
        f"extremal closed-form ratio deviation {extremal:.3f} falls outside "
        "[0.03, 0.15]: at the stated drive and coupling the closed form "
        "deviates by up to ~0.43 at the window edges; only the deviation at "
        f"the driven optimum ({best[0]:.3f}) lies inside the band"
    )


def test_criterion_8_slow_modulation_reduction():
    """Closed form at omega -> 0 reduces to the undriven value to 1e-6."""
    rs, _ = rates_for(ORACLE_DELTA)
    tiny = 1e-6 * rs.Gamma_cool
    rel = abs(
        of.trace_analytic(rs, EPS, tiny, 0.0) / of.trace_analytic(rs, 0.0, tiny, 0.0) - 1.0
    )
    ok = rel <= 1e-6
    report(8, ok, f"relative deviation {rel:.3e} <= 1e-6 at omega = 1e-6 Gamma_cool")
    assert rel <= 1e-6


def test_criterion_9_determinism_and_convergence(oracle_run, doubled_run, tmp_path):
    """Byte-identical CSVs on rerun; doubling Fock cutoffs moves the
    criterion-6 average by < 1%."""
    sc_series = fig1_scenario(plot=False)
    sc_sweep = fig2_scenario(plot=False)
    digests = []
    for label, out in (("a", tmp_path / "a"), ("b", tmp_path / "b")):
        paths = run_scenario(sc_series, out) + run_scenario(sc_sweep, out)
        digests.append(tuple(p.read_bytes() for p in sorted(paths)))
    identical = digests[0] == digests[1]

    base, doubled = oracle_run["mbar_sim"], doubled_run["mbar_sim"]
    shift = abs(doubled - base) / base
    ok = identical and shift < 0.01
    report(
        9,
        ok,
        f"CSV reruns byte-identical: {identical}; doubling (12,12)->(24,24) "
        f"moved the average by {shift:.3%} (< 1%); doubled run took "
        f"{doubled_run['elapsed']:.0f}s",
    )
    assert identical
    assert shift < 0.01
