"""Tests for the classical modulated-oscillator solutions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optofloquet import analytic_f, drive_from_floquet, drive_from_physical, gh, numeric_f, wronskian
from optofloquet.errors import DegenerateOrder, DriveTooStrong, DriveWarning, NonIntegerRatio


class TestDriveConstruction:
    def test_reference_drive(self):
        """nu0=2, eps'=1/72, omega=1 gives n=2 and eps=1/18."""
        d = drive_from_physical(2.0, 1.0 / 72.0, 1.0)
        assert d.n == 2
        np.testing.assert_allclose(d.eps, 1.0 / 18.0, rtol=1e-15)

    def test_undriven_limit(self):
        d = drive_from_physical(1.0, 0.0, 1.0)
        assert d.n == 1
        assert d.eps == 0.0

    def test_non_integer_ratio_rejected(self):
        with pytest.raises(NonIntegerRatio):
            drive_from_physical(1.5, 0.0, 1.0)

    def test_too_strong_rejected(self):
        with pytest.raises(DriveTooStrong):
            drive_from_floquet(1.0, 0.25, 0.5)

    def test_strong_drive_warns(self):
        with pytest.warns(DriveWarning):
            drive_from_floquet(1.0, 0.15, 0.5)

    def test_eps_eps_prime_consistency(self):
        d = drive_from_floquet(1.0, 1.0 / 18.0, 0.5)
        np.testing.assert_allclose(
            d.eps, 2.0 * d.eps_prime * d.nu0 / d.omega**2, rtol=1e-15
        )

    @given(
        n=st.integers(min_value=1, max_value=6),
        omega=st.floats(min_value=0.1, max_value=5.0),
        eps=st.floats(min_value=-0.09, max_value=0.09),
    )
    @settings(max_examples=40, deadline=None)
    def test_roundtrip(self, n, omega, eps):
        """Physical and dimensionless constructors agree for any valid drive."""
        d = drive_from_floquet(n * omega, eps, omega)
        d2 = drive_from_physical(d.nu0, d.eps_prime, d.omega)
        assert d2.n == n
        np.testing.assert_allclose(d2.eps, eps, atol=1e-14)


REF = drive_from_floquet(2.0, 1.0 / 18.0, 1.0)  # n=2, omega=1 reference


class TestAnalyticSolution:
    def test_frozen_value_at_zero(self):
        """f(0) = (1 - 1/216)/sqrt(2) for the n=2, omega=1, eps=1/18 drive."""
        ff = analytic_f(REF, 0.0)
        np.testing.assert_allclose(ff.f, (1.0 - 1.0 / 216.0) / np.sqrt(2.0), rtol=1e-14)
        np.testing.assert_allclose(ff.g, ff.f, rtol=1e-14)  # phase is 1 at t=0

    def test_undriven_unit_phase(self):
        d = drive_from_physical(1.0, 0.0, 1.0)
        ts = np.linspace(0.0, 10.0, 50)
        ff = analytic_f(d, ts)
        np.testing.assert_allclose(ff.f, np.exp(1j * ts), rtol=1e-14)

    def test_undriven_modulus(self):
        for n, omega in ((1, 0.7), (3, 1.3)):
            d = drive_from_physical(n * omega, 0.0, omega)
            ff = analytic_f(d, np.linspace(0, 5, 17))
            np.testing.assert_allclose(np.abs(ff.f), 1.0 / np.sqrt(n * omega), rtol=1e-14)

    def test_degenerate_order(self):
        d = drive_from_floquet(1.0, 0.05, 1.0)
        with pytest.raises(DegenerateOrder):
            analytic_f(d, 0.0)
        with pytest.raises(DegenerateOrder):
            gh(d, 0.0)

    def test_stripped_phase_periodicity(self):
        """exp(-i n w t) f(t) has period pi/omega."""
        g0, h0 = gh(REF, 0.0)
        g1, h1 = gh(REF, REF.period)
        np.testing.assert_allclose([g0, h0], [g1, h1], rtol=1e-12)

    def test_gh_reproduces_phase_stripped_solution(self):
        ts = np.linspace(0.0, 2 * REF.period, 41)
        ff = analytic_f(REF, ts)
        phase = np.exp(-1j * REF.n * REF.omega * ts)
        np.testing.assert_allclose(ff.g, phase * ff.f, rtol=0, atol=1e-12)
        np.testing.assert_allclose(ff.h, phase * ff.fdot, rtol=0, atol=1e-12)

    def test_h_is_derivative_of_g_plus_rotation(self):
        """h = i n w g + dg/dt, checked with central differences."""
        t, dt = 0.831, 1e-6
        g_m, _ = gh(REF, t - dt)
        g_p, _ = gh(REF, t + dt)
        g, h = gh(REF, t)
        dg = (g_p - g_m) / (2 * dt)
        np.testing.assert_allclose(h, 1j * REF.n * REF.omega * g + dg, rtol=1e-8)


class TestNumericOracle:
    def test_constant_frequency(self):
        """Undriven: f(t) = e^{it} within 1e-8 over ten periods."""
        d = drive_from_physical(1.0, 0.0, 1.0)
        ts = np.linspace(0.0, 20 * np.pi, 801)
        traj = numeric_f(d, ts)
        np.testing.assert_allclose(traj.f, np.exp(1j * ts), rtol=0, atol=1e-8)

    def test_first_order_accuracy(self):
        """Analytic solution deviates from the oracle by O(eps^2) only."""
        d = drive_from_floquet(1.0, 1.0 / 18.0, 0.5)
        ts = np.linspace(0.0, d.period, 257)
        traj = numeric_f(d, ts)
        ana = analytic_f(d, ts)
        bound = 5.0 * d.eps**2 * np.max(np.abs(ana.f))
        assert np.max(np.abs(traj.f - ana.f)) <= bound

    def test_exact_frequency_option(self):
        """Exact nu(t)^2 differs from the linearized one at O(eps'^2)."""
        d = drive_from_floquet(1.0, 1.0 / 18.0, 0.5)
        ts = np.linspace(0.0, d.period, 65)
        lin = numeric_f(d, ts)
        exact = numeric_f(d, ts, exact_frequency=True)
        diff = np.max(np.abs(lin.f - exact.f))
        assert 0 < diff < 5.0 * d.eps_prime**2

    def test_wronskian_constant(self):
        d = drive_from_floquet(1.0, 1.0 / 18.0, 0.5)
        ts = np.linspace(0.0, 2 * d.period, 129)
        wr = numeric_f(d, ts).wronskian()
        assert np.max(np.abs(wr - wr[0])) / wr[0] <= 1e-8

    def test_grid_validation(self):
        d = drive_from_physical(1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            numeric_f(d, [1.0, 2.0])
        with pytest.raises(ValueError):
            numeric_f(d, [0.0])


class TestWronskian:
    def test_undriven_value(self):
        ff = analytic_f(drive_from_physical(1.0, 0.0, 1.0), 0.3)
        np.testing.assert_allclose(wronskian(ff.f, ff.fdot), 1.0, rtol=1e-14)
        np.testing.assert_allclose(wronskian(ff.f, ff.fdot) / abs(ff.f) ** 2, 1.0, rtol=1e-14)

    def test_frequency_ratio_bound(self):
        """W/|f|^2 stays within nu0 (eps^2 + eps/n^2) of nu0."""
        ts = np.linspace(0.0, REF.period, 97)
        ff = analytic_f(REF, ts)
        ratio = ff.W / np.abs(ff.f) ** 2
        bound = REF.nu0 * (REF.eps**2 + REF.eps / REF.n**2)
        assert np.max(np.abs(ratio - REF.nu0)) <= bound

    def test_period_endpoints_identical(self):
        f0 = analytic_f(REF, 0.0)
        f1 = analytic_f(REF, REF.period)
        np.testing.assert_allclose(f0.W, f1.W, rtol=1e-10)

    @given(
        n=st.integers(min_value=2, max_value=5),
        omega=st.floats(min_value=0.2, max_value=3.0),
        eps=st.floats(min_value=-0.09, max_value=0.09),
        frac=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_near_unit_wronskian(self, n, omega, eps, frac):
        """W = 1 + O(eps^2) for any valid drive and time."""
        d = drive_from_floquet(n * omega, eps, omega)
        ff = analytic_f(d, frac * d.period)
        assert abs(ff.W - 1.0) <= max(eps**2, 1e-12)
