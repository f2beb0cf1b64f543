import math

import numpy as np
import pytest

from harmospec import harmonic_basis as hb
from harmospec.grid import BallQuadrature, TruncationSpec


class TestMultiplicity:
    @pytest.mark.parametrize(
        "d,k,expected", [(2, 0, 1), (2, 5, 2), (3, 4, 9), (4, 2, 9), (5, 1, 5)]
    )
    def test_multiplicity(self, d: int, k: int, expected: int):
        assert hb.multiplicity(d, k) == expected

    @pytest.mark.parametrize("d", [(2), (3), (4), (6)])
    def test_cumulative_closed_form(self, d: int):
        for k in range(12):
            assert hb.cumulative_multiplicity(d, k) == sum(
                hb.multiplicity(d, j) for j in range(k + 1)
            )

    def test_cumulative_empty(self):
        assert hb.cumulative_multiplicity(3, -1) == 0

    def test_multiplicities_large_d(self):
        # Python integers beyond int64
        out = hb.multiplicities(40, 60)
        assert out[-1] == hb.multiplicity(40, 60)
        assert out[-1] > np.iinfo(np.int64).max

    def test_asymptotic_check_bounded(self):
        assert hb.multiplicity_asymptotic_check(3, 200) < 5.0


class TestMeasures:
    def test_sphere_surface_area(self):
        assert hb.sphere_surface_area(2) == pytest.approx(2.0 * math.pi)
        assert hb.sphere_surface_area(3) == pytest.approx(4.0 * math.pi)

    def test_ball_volume(self):
        assert hb.ball_volume(1) == pytest.approx(2.0)
        assert hb.ball_volume(2) == pytest.approx(math.pi)


class TestBasis:
    def test_indices_degree_major(self):
        indices = hb.basis_indices(2, 2)
        assert indices[0] == hb.BasisIndex(0, 1)
        assert [idx.k for idx in indices] == [0, 1, 1, 2, 2]

    @pytest.mark.parametrize("d", [(2), (3)])
    def test_orthonormal(self, d: int):
        quad = BallQuadrature(d, TruncationSpec.default(4))
        gram = (quad.basis * quad.weights) @ quad.basis.T
        np.testing.assert_allclose(gram, np.eye(len(gram)), atol=1e-12)

    @pytest.mark.parametrize("d", [(2), (3)])
    def test_zonal_addition(self, d: int):
        rng = np.random.default_rng(1)
        xi, eta = rng.normal(size=(2, d))
        xi, eta = xi / np.linalg.norm(xi), eta / np.linalg.norm(eta)
        table = hb.harmonic_table(d, 3, np.stack([xi, eta]))
        degrees = hb.basis_degrees(d, 3)
        for k in range(4):
            rows = degrees == k
            direct = float(np.dot(table[rows, 0], table[rows, 1]))
            zonal = hb.zonal_sum(d, k, float(np.clip(np.dot(xi, eta), -1, 1)))
            assert direct == pytest.approx(zonal, abs=1e-12)

    def test_basis_value(self):
        # phi_{1, 1} = sqrt(4) r cos(theta) / sqrt(pi) in the plane
        value = hb.basis_value(2, hb.BasisIndex(1, 1), [0.5, 0.0])
        assert value == pytest.approx(2.0 * 0.5 / math.sqrt(math.pi))

    def test_spherical_harmonic_index(self):
        with pytest.raises(ValueError, match=".*1 <= ell <= m_k.*"):
            hb.spherical_harmonic(2, hb.BasisIndex(1, 3), [1.0, 0.0])
