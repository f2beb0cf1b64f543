import logging
import math

import numpy as np
import pytest

from harmospec import radial_toeplitz as rt
from harmospec.checks import TailNotCertifiedError
from harmospec.symbols import Power, Sampled, Step, Sum, constant


class TestEigenvalues:
    @pytest.mark.parametrize("k", [(0), (1), (7)])
    def test_step_quadrature_matches_closed_form(self, step_symbol: Step, k: int):
        assert rt.mu_k(step_symbol, 2, k) == pytest.approx(
            rt.mu_k_step(1.0, 0.5, 2, k), rel=1e-12
        )
        assert rt.mu_k_step(1.0, 0.5, 2, k) == pytest.approx(0.25 ** (k + 1))

    @pytest.mark.parametrize("d,k", [(2, 0), (2, 5), (3, 4)])
    def test_power_closed_form(self, power_symbol: Power, d: int, k: int):
        # a (1 - r) gives mu_k = 1 / (2k + d + 1)
        expected = 1.0 / (2 * k + d + 1)
        assert rt.mu_k_power(1.0, 1.0, d, k) == pytest.approx(expected, rel=1e-12)
        assert rt.mu_k(power_symbol, d, k) == pytest.approx(expected, rel=1e-12)

    def test_constant_profile(self):
        np.testing.assert_allclose(
            rt.radial_eigenvalues(constant(1.0), 3, np.arange(10)), 1.0
        )

    def test_sampled_matches_quadrature(self, bump_symbol: Sampled):
        ks = np.arange(6)
        exact = rt.radial_eigenvalues(bump_symbol, 2, ks)
        quadrature = [rt.mu_k(bump_symbol, 2, int(k)) for k in ks]
        np.testing.assert_allclose(exact, quadrature, rtol=1e-10, atol=1e-15)

    def test_sum_adds(self, step_symbol: Step, power_symbol: Power):
        ks = np.arange(5)
        total = rt.radial_eigenvalues(Sum((step_symbol, power_symbol)), 2, ks)
        np.testing.assert_allclose(
            total,
            rt.radial_eigenvalues(step_symbol, 2, ks)
            + rt.radial_eigenvalues(power_symbol, 2, ks),
        )

    def test_log_domain_below_underflow(self, step_symbol: Step):
        # mu_1000 = 4^-1001 underflows, its logarithm does not
        log_mu = rt.log_abs_eigenvalues(step_symbol, 2, 1000)
        assert log_mu == pytest.approx(-1001 * math.log(4.0))


class TestTail:
    def test_certified_degree(self, step_symbol: Step):
        # mu_2 = 1 / 64 > 1e-2 >= mu_3 = 1 / 256
        assert rt.certified_degree(step_symbol, 2, math.log(1e-2)) == 3

    def test_power_not_certified(self, power_symbol: Power):
        with pytest.raises(TailNotCertifiedError):
            rt.certified_degree(power_symbol, 2, math.log(1e-16), max_degree=1000)

    def test_tail_bound_nonincreasing(self, bump_symbol: Sampled):
        bounds = [rt.log_tail_bound(bump_symbol, 2, k) for k in range(0, 50, 5)]
        assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))


class TestCounting:
    def test_step_example(self, step_symbol: Step):
        # Degrees 0, 1, 2 lie above 1e-2 with multiplicities 1 + 2 + 2
        assert rt.counting(step_symbol, 2, 1e-2) == 5
        assert rt.nu_count(step_symbol, 2, 1e-2) == 3

    def test_strict_inequality(self, step_symbol: Step):
        assert rt.counting(step_symbol, 2, 0.25) == 0
        assert rt.counting(step_symbol, 2, 0.0625) == 1

    def test_opposite_sign(self, step_symbol: Step):
        assert rt.counting(step_symbol, 2, 1e-2, sign=-1) == 0

    def test_deep_threshold(self, step_symbol: Step):
        # (k + 1) ln 4 < 200 for k <= 143
        assert rt.log_nu_count(step_symbol, 2, -200.0) == 144
        assert rt.log_counting(step_symbol, 2, -200.0) == 287

    def test_invalid_threshold(self, step_symbol: Step):
        with pytest.raises(ValueError, match=".*positive threshold.*"):
            rt.counting(step_symbol, 2, 0.0)

    @pytest.mark.parametrize("sign", [(1), (-1)])
    def test_curve_matches_pointwise(self, bump_symbol: Sampled, sign: int):
        grid = np.linspace(-30.0, -2.0, 15)
        curve = rt.counting_curve(bump_symbol, 2, grid, sign)
        pointwise = [rt.log_counting(bump_symbol, 2, x, sign) for x in grid]
        assert curve == pointwise

    def test_curve_nonincreasing(self, power_symbol: Power):
        counts = rt.counting_curve(power_symbol, 3, np.linspace(-12.0, -2.0, 20))
        assert all(c2 <= c1 for c1, c2 in zip(counts, counts[1:]))
        assert all(isinstance(c, int) for c in counts)


class TestConstants:
    def test_step_constant(self):
        assert rt.step_constant(2, 0.5) == pytest.approx(1.0 / math.log(2.0))

    @pytest.mark.parametrize(
        "d,gamma,a,expected", [(2, 1.0, 1.0, 1.0), (3, 2.0, 1.0, 0.5)]
    )
    def test_power_constant(self, d: int, gamma: float, a: float, expected: float):
        assert rt.power_constant(d, gamma, a) == pytest.approx(expected)

    @pytest.mark.parametrize("d,gamma,a", [(2, 1.0, 1.0), (2, 0.5, 3.0), (3, 2.0, 2.0)])
    def test_boundary_form_agrees(self, d: int, gamma: float, a: float):
        assert rt.boundary_trace_constant(d, gamma, a) == pytest.approx(
            rt.power_constant(d, gamma, a), rel=1e-12
        )


class TestAsymptoticFit:
    def test_power(self, power_symbol: Power):
        fit = rt.asymptotic_fit(power_symbol, 2, np.linspace(-12.0, -4.0, 50))
        assert fit.gamma == 1.0
        assert fit.coefficient == pytest.approx(1.0, rel=1e-2)

    def test_power_small_exponent(self):
        # lambda in [1e-8, 1e-2] keeps the degree count near lambda^-2 <= 1e16
        grid = np.linspace(-8.0 * math.log(10.0), -2.0 * math.log(10.0), 30)
        fit = rt.asymptotic_fit(Power(1.0, 0.5), 2, grid)
        assert fit.gamma == 0.5
        expected = rt.power_constant(2, 0.5, 1.0)
        assert fit.coefficient == pytest.approx(expected, rel=1e-2)

    def test_flat_counts(self):
        with pytest.raises(ValueError, match=".*positive growth exponent.*"):
            rt.fit_counts(2, np.linspace(-12.0, -4.0, 10), [7] * 10, "power")

    def test_log_power(self, step_symbol: Step):
        fit = rt.asymptotic_fit(
            step_symbol, 2, np.linspace(-200.0, -20.0, 30), model="log-power"
        )
        assert fit.coefficient == pytest.approx(rt.step_constant(2, 0.5), rel=1e-2)
        assert fit.exponent == pytest.approx(1.0, abs=0.1)

    def test_precomputed_counts(self, power_symbol: Power):
        grid = np.linspace(-4.0, -12.0, 20)
        counts = rt.counting_curve(power_symbol, 2, grid)
        fit = rt.asymptotic_fit(power_symbol, 2, grid, counts=counts)
        assert fit == rt.asymptotic_fit(power_symbol, 2, grid)

    def test_short_grid_warns(self, power_symbol: Power, caplog):
        with caplog.at_level(logging.WARNING):
            rt.asymptotic_fit(power_symbol, 2, np.linspace(-6.0, -4.0, 5))
        assert "decades" in caplog.text

    def test_too_few_points(self, power_symbol: Power):
        with pytest.raises(ValueError, match=".*at least 4 grid points.*"):
            rt.asymptotic_fit(power_symbol, 2, [-5.0, -4.0])

    def test_zero_counts(self, step_symbol: Step):
        with pytest.raises(ValueError, match=".*positive counts.*"):
            rt.asymptotic_fit(step_symbol, 2, np.linspace(-20.0, -0.5, 10), "log-power")


class TestNorms:
    def test_radial_spectrum(self, step_symbol: Step):
        spectrum = rt.radial_spectrum(step_symbol, 3, 4)
        assert spectrum.provenance == "exact-radial"
        assert spectrum.total == 25

    def test_trace(self, step_symbol: Step):
        # 1/4 + 2 sum_{k >= 1} 4^-(k + 1) = 5 / 12
        assert rt.schatten_radial(step_symbol, 2, 1.0) == pytest.approx(5.0 / 12.0)

    def test_power_needs_cut(self, power_symbol: Power):
        with pytest.raises(TailNotCertifiedError):
            rt.schatten_radial(power_symbol, 2, 2.0, max_degree=1000)
        assert rt.schatten_radial(power_symbol, 2, 2.0, k_stop=10) > 0

    def test_superpolynomial_decay(self, step_symbol: Step):
        check = rt.superpolynomial_decay_check(step_symbol, 2, alpha=2.0, j_max=1000)
        assert np.isfinite(check.maximum)
        assert check.log_at_j_max < -100.0


class TestSupport:
    def test_radius(self, step_symbol: Step):
        assert rt.support_radius(step_symbol) == 0.5
        assert rt.support_radius(Sampled((0.0, 0.3, 0.6), (1.0, 1.0, 0.0))) == 0.6

    def test_not_compact(self, power_symbol: Power):
        with pytest.raises(ValueError, match=".*compactly supported.*"):
            rt.support_radius(power_symbol)

    def test_bracket(self):
        bracket = rt.support_bracket(Sampled((0.0, 0.3, 0.6), (1.0, 1.0, 0.0)), 2, 0.3)
        assert bracket.lower == pytest.approx(rt.step_constant(2, 0.3))
        assert bracket.upper == pytest.approx(rt.step_constant(2, 0.6))
        assert bracket.lower < bracket.upper
