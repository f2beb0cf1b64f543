import math

import numpy as np
import pytest

from harmospec import kernel_berezin as kb
from harmospec.checks import DomainError
from harmospec.radial_toeplitz import radial_spectrum
from harmospec.symbols import GeneralSymbol, Step, constant


class TestGeometry:
    def test_boundary_distance(self):
        assert kb.boundary_distance([0.6, 0.0]) == pytest.approx(0.4)

    def test_separation(self):
        assert kb.separation([0.5, 0.0], [0.0, 0.5]) == pytest.approx(
            math.sqrt(0.5) + 1.0
        )

    def test_outside_ball(self):
        with pytest.raises(DomainError):
            kb.boundary_distance([0.0, 1.2])

    def test_suggest_truncation(self):
        assert kb.suggest_truncation(0.5) == 80


class TestKernel:
    def test_origin(self):
        assert kb.density_rho(np.zeros(2), 5) == pytest.approx(1.0 / math.pi)
        assert kb.reproducing_kernel([0.0, 0.0], [0.3, 0.1], 5) == pytest.approx(
            1.0 / math.pi
        )

    @pytest.mark.parametrize("d", [(2), (3)])
    def test_diagonal(self, d: int):
        x = np.full(d, 0.3)
        assert kb.reproducing_kernel(x, x, 8) == pytest.approx(kb.density_rho(x, 8))

    def test_symmetric(self):
        x, y = np.array([0.2, 0.5, 0.1]), np.array([-0.4, 0.1, 0.3])
        assert kb.reproducing_kernel(x, y, 6) == pytest.approx(
            kb.reproducing_kernel(y, x, 6)
        )

    def test_density_vectorized(self):
        points = np.array([[0.0, 0.0], [0.5, 0.0]])
        out = kb.density_rho(points, 4)
        assert out.shape == (2,)
        assert out[1] == pytest.approx(kb.density_rho(points[1], 4))

    def test_boundary_rate_bounded(self):
        rates = kb.boundary_rate(2, [0.5, 0.75, 0.9])
        assert np.all(rates > 0)
        assert rates.max() / rates.min() < 10.0


class TestRhoIntegral:
    def test_radial_trace(self, step_symbol: Step):
        assert kb.rho_integral(step_symbol, 2, 6) == pytest.approx(
            radial_spectrum(step_symbol, 2, 6).trace()
        )

    def test_constant_is_dimension(self):
        # int rho_K dx = M_K
        assert kb.rho_integral(constant(1.0), 3, 4) == pytest.approx(25.0)

    def test_general_matches_radial(self, step_symbol: Step):
        general = GeneralSymbol(func=step_symbol, d=2, breakpoints=(0.5,))
        assert kb.rho_integral(general, 2, 4) == pytest.approx(
            kb.rho_integral(step_symbol, 2, 4), rel=1e-10
        )


class TestBerezin:
    def test_constant(self):
        assert kb.berezin_transform(constant(2.0), [0.4, 0.3], 10) == pytest.approx(
            2.0
        )

    def test_general_matches_radial(self, step_symbol: Step):
        general = GeneralSymbol(func=step_symbol, d=2, breakpoints=(0.5,))
        x = np.array([0.3, 0.2])
        assert kb.berezin_transform(general, x, 6) == pytest.approx(
            kb.berezin_transform(step_symbol, x, 6), rel=1e-8
        )

    def test_between_bounds(self, step_symbol: Step):
        value = kb.berezin_transform(step_symbol, [0.7, 0.0], 20)
        assert 0.0 < value < 1.0

    def test_covariant_sandwich(self, affine_symbol: GeneralSymbol, small_spec):
        samples = np.array([[0.0, 0.0], [0.5, 0.0]])
        tilde, sup = kb.covariant_sandwich(affine_symbol, small_spec, samples)
        assert tilde <= sup
