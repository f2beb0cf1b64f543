import math

import numpy as np
import pytest

from harmospec.grid import BallQuadrature, TruncationSpec


class TestTruncationSpec:
    def test_default(self):
        spec = TruncationSpec.default(6)
        assert (spec.K, spec.n_r, spec.n_ang) == (6, 14, 18)

    def test_angular_order_too_small(self):
        with pytest.raises(ValueError, match=r".*n_ang >= 2K \+ 2.*"):
            TruncationSpec(K=4, n_r=12, n_ang=8)

    def test_radial_order_too_small(self):
        with pytest.raises(ValueError, match=r".*n_r >= K \+ 8.*"):
            TruncationSpec(K=4, n_r=10, n_ang=10)


class TestBallQuadrature:
    @pytest.mark.parametrize("d,volume", [(2, math.pi), (3, 4.0 * math.pi / 3.0)])
    def test_volume(self, d: int, volume: float, small_spec: TruncationSpec):
        quad = BallQuadrature(d, small_spec)
        assert quad.integrate(np.ones(len(quad))) == pytest.approx(volume)

    def test_breakpoints_exact(self, small_spec: TruncationSpec):
        quad = BallQuadrature(2, small_spec, breakpoints=(0.5,))
        inside = (quad.radii <= 0.5).astype(float)
        assert quad.integrate(inside) == pytest.approx(math.pi / 4.0, rel=1e-13)

    def test_density_is_kernel_diagonal(self, small_spec: TruncationSpec):
        quad = BallQuadrature(2, small_spec)
        # int rho_K dx = M_K
        assert quad.integrate(quad.density) == pytest.approx(9.0)

    def test_rejects_dimension(self, small_spec: TruncationSpec):
        with pytest.raises(ValueError, match=".*2 or 3.*"):
            BallQuadrature(4, small_spec)
