import logging

import numpy as np
import pytest

from harmospec import krein_counting as kc
from harmospec.radial_toeplitz import boundary_trace_constant

J_11_SQUARED = 3.831705970207512**2
J_21_SQUARED = 5.135622301840683**2


@pytest.fixture
def sandwich() -> kc.SandwichInput:
    return kc.SandwichInput(
        lam=10.0, eps=0.5, n_plus=lambda s: int(100 / s), remainder=lambda eps: 3
    )


class TestSandwich:
    def test_minus(self, sandwich: kc.SandwichInput):
        bounds = kc.sandwich_minus(sandwich)
        assert (bounds.lower, bounds.upper) == (10, 23)
        assert 15 in bounds

    def test_plus(self, sandwich: kc.SandwichInput):
        bounds = kc.sandwich_plus(sandwich)
        assert (bounds.lower, bounds.upper) == (3, 10)

    def test_plus_clamped(self):
        inp = kc.SandwichInput(
            lam=1.0, eps=0.5, n_plus=lambda s: 1, remainder=lambda eps: 5, offset=2
        )
        bounds = kc.sandwich_plus(inp)
        assert (bounds.lower, bounds.upper) == (0, 0)

    def test_collapses_without_remainder(self):
        inp = kc.SandwichInput(lam=2.0, eps=0.1, n_plus=lambda s: 7)
        bounds = kc.sandwich_minus(inp)
        assert bounds.lower == bounds.upper == 7

    @pytest.mark.parametrize("lam,eps", [(0.0, 0.5), (1.0, 0.0), (1.0, 1.0)])
    def test_invalid(self, lam: float, eps: float):
        with pytest.raises(ValueError, match="Expected.*"):
            kc.SandwichInput(lam=lam, eps=eps, n_plus=lambda s: 0)

    def test_negative_remainder(self):
        inp = kc.SandwichInput(
            lam=1.0, eps=0.5, n_plus=lambda s: 1, remainder=lambda eps: -1
        )
        with pytest.raises(ValueError, match=".*nonnegative remainder.*"):
            kc.sandwich_minus(inp)

    def test_interval_order(self):
        with pytest.raises(ValueError, match=".*lower <= upper.*"):
            kc.BoundInterval(lower=3, upper=2)


class TestEnvelope:
    @pytest.mark.parametrize(
        "d,kappa", [(2, 0.5), (3, 0.6), (4, 2.0 / 3.0), (5, 0.75)]
    )
    def test_kappa(self, d: int, kappa: float):
        assert kc.envelope_kappa(d) == pytest.approx(kappa)

    def test_main_term(self):
        envelope = kc.counting_envelope(2, 1.0, 1.0, 0.01)
        expected = 100.0 * boundary_trace_constant(2, 1.0, 1.0)
        assert envelope.main == pytest.approx(expected)
        assert envelope.upper_exponent == pytest.approx(0.5)
        assert envelope.lower_exponent == 0.0

    def test_optimal_eps(self):
        assert kc.optimal_eps_exponent(2, 1.0) == pytest.approx(0.5)


class TestBuckling:
    def test_first_values(self):
        first, second = kc.buckling_disk(2)
        assert first.value == pytest.approx(J_11_SQUARED)
        assert (first.multiplicity, first.k, first.m) == (1, 0, 1)
        assert second.value == pytest.approx(J_21_SQUARED)
        assert second.multiplicity == 2

    def test_ascending(self):
        values = [entry.value for entry in kc.buckling_disk(50)]
        assert values == sorted(values)

    def test_counts(self):
        assert kc.buckling_count(20.0) == 1
        assert kc.buckling_count(30.0) == 3
        assert kc.buckling_count(-1.0) == 0
        np.testing.assert_array_equal(kc.buckling_counts([10.0, 20.0, 30.0]), [0, 1, 3])

    def test_invalid(self):
        with pytest.raises(ValueError, match=".*n >= 1.*"):
            kc.buckling_disk(0)

    def test_weyl_law(self):
        fit = kc.weyl_L_check()
        # |D| / (4 pi) = 1 / 4
        assert fit.coefficient == pytest.approx(0.25, abs=0.02)
        assert fit.exponent == pytest.approx(1.0, abs=0.05)
        assert fit.boundary_term < 0


class TestRemainder:
    def test_buckling_count(self):
        assert kc.remainder_model(1.0, 1.0, J_11_SQUARED, 2) == 1

    def test_other_dimension(self, caplog):
        with caplog.at_level(logging.WARNING):
            assert kc.remainder_model(1.0, 3.0, 1.0, 3) == 8
        assert "No buckling spectrum" in caplog.text

    def test_invalid(self):
        with pytest.raises(ValueError, match=".*positive eps.*"):
            kc.remainder_model(0.0, 1.0, 1.0, 2)

    def test_exponent(self):
        check = kc.remainder_exponent_check(2, 1.0)
        assert check.expected == pytest.approx(-0.5)
        assert check.slope == pytest.approx(check.expected, abs=0.1)
        assert np.all(check.excess > 0)
