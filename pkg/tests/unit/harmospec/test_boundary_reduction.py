import numpy as np
import pytest

from harmospec import boundary_reduction as br
from harmospec import galerkin_toeplitz as gt
from harmospec.grid import TruncationSpec
from harmospec.harmonic_basis import basis_degrees, cumulative_multiplicity
from harmospec.radial_toeplitz import radial_eigenvalues
from harmospec.symbols import GeneralSymbol, Step


class TestExtension:
    def test_coefficient(self):
        profile = br.harmonic_extension_coeff(2, 3)
        np.testing.assert_allclose(profile([0.5, 1.0]), [0.125, 1.0])

    def test_extension_on_sphere(self):
        # G psi restricted to the sphere is psi
        direction = np.array([[0.0, 1.0]])
        value = br.harmonic_extension(2, 1, 2, direction)
        assert value[0] == pytest.approx(1.0 / np.sqrt(np.pi))

    @pytest.mark.parametrize("d,k", [(2, 0), (3, 4)])
    def test_eigenvalues(self, d: int, k: int):
        assert br.j_eigenvalue(d, k) == pytest.approx(1.0 / (2 * k + d))
        assert br.dtn_eigenvalue(d, k) == k


class TestBoundaryOperator:
    def test_exactly_one_form(self):
        with pytest.raises(ValueError, match=".*exactly one.*"):
            br.BoundaryOperator(2, 1)

    def test_size_checked(self):
        with pytest.raises(ValueError, match=".*M_K = 3.*"):
            br.BoundaryOperator(2, 1, matrix=np.eye(2))

    def test_diagonal_blocks(self):
        op = br.BoundaryOperator(2, 2, degree_values=np.array([1.0, 2.0, 3.0]))
        assert op.is_diagonal
        np.testing.assert_array_equal(op.block(1), 2.0 * np.eye(2))
        np.testing.assert_array_equal(op.block(1, 2), np.zeros((2, 2)))

    def test_scaled(self):
        op = br.BoundaryOperator(2, 1, matrix=np.ones((3, 3)))
        scaled = op.scaled(np.array([1.0, 2.0])).to_dense()
        np.testing.assert_array_equal(scaled[0], [1.0, 2.0, 2.0])
        np.testing.assert_array_equal(scaled[1], [2.0, 4.0, 4.0])


class TestReduction:
    def test_radial_diagonal(self, step_symbol: Step, small_spec: TruncationSpec):
        jv = br.assemble_JV(step_symbol, 2, small_spec)
        degrees = np.arange(small_spec.K + 1)
        mu = radial_eigenvalues(step_symbol, 2, degrees)
        np.testing.assert_allclose(jv.degree_values, mu / (2 * degrees + 2))

    def test_radial_unitary_equivalence(
        self, step_symbol: Step, small_spec: TruncationSpec
    ):
        reduced = br.reduced_operator(step_symbol, 2, small_spec).to_dense()
        section = gt.assemble(step_symbol, 2, small_spec)
        np.testing.assert_allclose(reduced, section, atol=1e-13)

    @pytest.mark.parametrize("d", [(2), (3)])
    def test_general_unitary_equivalence(self, small_spec: TruncationSpec, d: int):
        symbol = GeneralSymbol(func=lambda x: 1.0 + x[:, 0] * x[:, 1], d=d)
        reduced = br.reduced_operator(symbol, d, small_spec)
        assert not reduced.is_diagonal
        np.testing.assert_allclose(
            reduced.to_dense(), gt.assemble(symbol, d, small_spec), atol=1e-12
        )
        assert reduced.to_dense().shape == (cumulative_multiplicity(d, 4),) * 2

    def test_rejects_dimension(self, step_symbol: Step, small_spec: TruncationSpec):
        with pytest.raises(ValueError, match=".*2 or 3.*"):
            br.assemble_JV(step_symbol, 4, small_spec)


class TestProjection:
    def test_reproduces_harmonic(self, small_spec: TruncationSpec):
        # x_1^2 - x_2^2 is harmonic of degree 2
        def harmonic(x: np.ndarray) -> np.ndarray:
            return x[:, 0] ** 2 - x[:, 1] ** 2

        points = np.array([[0.3, 0.1], [-0.5, 0.4]])
        np.testing.assert_allclose(
            br.projection(harmonic, 2, small_spec, points),
            harmonic(points),
            atol=1e-12,
        )

    def test_removes_nonharmonic(self, small_spec: TruncationSpec):
        # |x|^2 projects onto the constant 1 / 2 in the disk
        def radius_squared(x: np.ndarray) -> np.ndarray:
            return np.sum(x**2, axis=1)

        values = br.projection(radius_squared, 2, small_spec, np.array([[0.2, 0.3]]))
        assert values[0] == pytest.approx(0.5)


class TestChecks:
    def test_symbol_order(self):
        check = br.symbol_order_check(1.0, 1.0, 2, 10_000)
        assert check.expected == pytest.approx(0.5)
        assert check.error < 1e-8

    def test_symbol_order_small_degree(self):
        with pytest.raises(ValueError, match=".*k_max >= 8.*"):
            br.symbol_order_check(1.0, 1.0, 2, 4)

    def test_counting(self):
        check = br.hormander_counting_check(1.0, 1.0, 2, np.geomspace(1e2, 1e4, 12))
        assert check.expected == pytest.approx(1.0)
        assert check.relative_error < 0.02


def test_basis_degree_layout():
    np.testing.assert_array_equal(basis_degrees(2, 2), [0, 1, 1, 2, 2])
