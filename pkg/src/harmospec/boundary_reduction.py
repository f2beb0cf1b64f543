"""Reduction of Toeplitz operators to the boundary sphere.

On the ball the harmonic extension G acts degree by degree: the boundary
harmonic psi_{k, l} extends to |x|^k psi_{k, l}(x / |x|). Hence J = G*G is
diagonal with eigenvalue 1 / (2k + d), the Dirichlet-to-Neumann map has
eigenvalue k, and J^(-1/2) J_V J^(-1/2) with J_V = G*VG is the section of T_V
written in boundary coordinates.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from harmospec.checks import (
    check_degree,
    check_dimension,
    check_explicit_dimension,
)
from harmospec.grid import BallQuadrature, TruncationSpec
from harmospec.harmonic_basis import (
    basis_degrees,
    basis_table,
    cumulative_multiplicity,
    harmonic_table,
    multiplicities,
)
from harmospec.numerics import log_gamma
from harmospec.radial_toeplitz import (
    AsymptoticFit,
    asymptotic_fit,
    boundary_trace_constant,
    log_abs_eigenvalues,
    radial_eigenvalues,
)
from harmospec.symbols import Power, RadialSymbol, Symbol
from harmospec.typing import ArrayLike, Field


def harmonic_extension_coeff(d: int, k: int) -> Callable[[ArrayLike], np.ndarray]:
    """Radial factor r -> r^k of the harmonic extension of a degree-k harmonic."""
    check_dimension(d)
    check_degree(k)

    def profile(r: ArrayLike) -> np.ndarray:
        return np.asarray(r, dtype=float) ** k

    return profile


def harmonic_extension(d: int, k: int, ell: int, points: np.ndarray) -> np.ndarray:
    """Values of G psi_{k, ell} = |x|^k psi_{k, ell}(x / |x|) at points."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    radius = np.linalg.norm(points, axis=1)
    directions = points / np.where(radius > 0, radius, 1.0)[:, None]
    directions[radius == 0] = np.eye(d)[0]
    row = cumulative_multiplicity(d, k - 1) + ell - 1
    harmonics = harmonic_table(d, k, directions)[row]
    return harmonic_extension_coeff(d, k)(radius) * harmonics


def j_eigenvalue(d: int, k: int) -> float:
    """Eigenvalue 1 / (2k + d) of J = G*G on degree-k boundary harmonics."""
    check_dimension(d)
    check_degree(k)
    return 1.0 / (2 * k + d)


def dtn_eigenvalue(d: int, k: int) -> float:
    """Eigenvalue k of the Dirichlet-to-Neumann map on degree-k harmonics."""
    check_dimension(d)
    check_degree(k)
    return float(k)


@dataclass(frozen=True)
class BoundaryOperator:
    """Operator on boundary harmonics of degree <= K.

    Either a dense matrix in the degree-major harmonic basis, or (for radial
    symbols) one scalar per degree with all couplings exactly zero.
    """

    d: int
    K: int
    matrix: np.ndarray | None = None
    degree_values: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.matrix is None) == (self.degree_values is None):
            raise ValueError("Expected exactly one of matrix or degree_values")
        size = cumulative_multiplicity(self.d, self.K)
        if self.matrix is not None and self.matrix.shape != (size, size):
            raise ValueError(
                f"Expected matrix of size M_K = {size}; got {self.matrix.shape}"
            )
        if self.degree_values is not None and len(self.degree_values) != self.K + 1:
            raise ValueError(
                f"Expected {self.K + 1} degree values; got {len(self.degree_values)}"
            )

    @property
    def is_diagonal(self) -> bool:
        """True when the operator acts by one scalar per degree."""
        return self.degree_values is not None

    def to_dense(self) -> np.ndarray:
        """Matrix in the orthonormal harmonic basis."""
        if self.matrix is not None:
            return self.matrix
        counts = multiplicities(self.d, self.K).astype(int)
        return np.diag(np.repeat(self.degree_values, counts))

    def block(self, k: int, k2: int | None = None) -> np.ndarray:
        """Coupling block between degrees k and k2 (default k2 = k)."""
        k2 = k if k2 is None else k2
        return self.to_dense()[self._span(k), self._span(k2)]

    def _span(self, k: int) -> slice:
        return slice(
            cumulative_multiplicity(self.d, k - 1), cumulative_multiplicity(self.d, k)
        )

    def scaled(self, factors: np.ndarray) -> "BoundaryOperator":
        """D A D with D = diag of per-degree factors."""
        if self.degree_values is not None:
            return BoundaryOperator(
                self.d, self.K, degree_values=self.degree_values * factors**2
            )
        per_row = factors[basis_degrees(self.d, self.K)]
        return BoundaryOperator(
            self.d, self.K, matrix=per_row[:, None] * self.matrix * per_row[None, :]
        )


def _extension_table(quad: BallQuadrature) -> np.ndarray:
    """G psi_{k, l} at the nodes, from the orthonormal ball basis."""
    degrees = basis_degrees(quad.d, quad.spec.K)
    return quad.basis / np.sqrt(2 * degrees + quad.d)[:, None]


def assemble_JV(V: Symbol, d: int, spec: TruncationSpec) -> BoundaryOperator:
    """J_V = G*VG on boundary harmonics of degree <= K.

    Radial symbols give the diagonal form mu_k / (2k + d).
    """
    check_explicit_dimension(d)
    if isinstance(V, RadialSymbol):
        degrees = np.arange(spec.K + 1)
        values = radial_eigenvalues(V, d, degrees) / (2 * degrees + d)
        return BoundaryOperator(d, spec.K, degree_values=values)
    if V.d != d:
        raise ValueError(f"Expected symbol of dimension {d}; got {V.d}")

    quad = BallQuadrature(d, spec, V.breakpoints)
    extension = _extension_table(quad)
    values = quad.weights * V(quad.points)
    matrix = (extension * values) @ extension.T
    return BoundaryOperator(d, spec.K, matrix=0.5 * (matrix + matrix.T))


def reduced_operator(V: Symbol, d: int, spec: TruncationSpec) -> BoundaryOperator:
    """J^(-1/2) J_V J^(-1/2), unitarily equivalent to the finite section."""
    j_values = 1.0 / (2 * np.arange(spec.K + 1) + d)
    return assemble_JV(V, d, spec).scaled(1.0 / np.sqrt(j_values))


def projection(
    f: Field, d: int, spec: TruncationSpec, points: np.ndarray | None = None
) -> np.ndarray:
    """G J^-1 G* f: projection of f onto harmonic polynomials of degree <= K.

    Returns values at `points` (default the quadrature nodes).
    """
    check_explicit_dimension(d)
    quad = BallQuadrature(d, spec)
    extension = _extension_table(quad)
    moments = extension @ (quad.weights * f(quad.points))
    coefficients = moments * (2 * basis_degrees(d, spec.K) + d)
    if points is None:
        return coefficients @ extension
    points = np.atleast_2d(np.asarray(points, dtype=float))
    degrees = basis_degrees(d, spec.K)
    at_points = basis_table(d, spec.K, points) / np.sqrt(2 * degrees + d)[:, None]
    return coefficients @ at_points


class SymbolOrderCheck(NamedTuple):
    """Extrapolated limit of k^gamma mu_k against its closed form."""

    estimate: float
    expected: float
    error: float


def symbol_order_check(
    gamma: float, a: float, d: int, k_max: int
) -> SymbolOrderCheck:
    """Extrapolated limit of k^gamma mu_k for the profile a (1 - r)^gamma.

    k^gamma mu_k = L + A / k + B / k^2 + ... is sampled at k_max / 2,
    3 k_max / 4 and k_max and extrapolated to 1 / k = 0. The limit is the
    principal symbol 2^-gamma Gamma(gamma + 1) a at frequency k.
    """
    check_dimension(d)
    if k_max < 8:
        raise ValueError(f"Expected k_max >= 8; got {k_max}")
    v = Power(a, gamma)
    ks = np.array([k_max // 2, (3 * k_max) // 4, k_max], dtype=float)
    scaled = np.exp(gamma * np.log(ks) + log_abs_eigenvalues(v, d, ks))
    vandermonde = np.vander(1.0 / ks, 3, increasing=True)
    estimate = float(np.linalg.solve(vandermonde, scaled)[0])
    expected = math.exp(log_gamma(gamma + 1.0) - gamma * math.log(2.0)) * a
    return SymbolOrderCheck(
        estimate=estimate, expected=expected, error=abs(estimate - expected)
    )


class CountingCheck(NamedTuple):
    """Fitted counting coefficient against the boundary-integral constant."""

    fit: AsymptoticFit
    expected: float
    relative_error: float


def hormander_counting_check(
    gamma: float, a: float, d: int, e_grid: ArrayLike
) -> CountingCheck:
    """Fit #{mu_k^(-1/gamma) < E} ~ C E^(d - 1) for a (1 - r)^gamma.

    The counted operator is diagonal with entries mu_k^(-1/gamma), so the count
    equals n_+(E^-gamma; T_V); C is compared with the boundary-integral constant.
    """
    e_grid = np.asarray(e_grid, dtype=float)
    if np.any(e_grid <= 0):
        raise ValueError("Expected positive energies")
    fit = asymptotic_fit(
        Power(a, gamma), d, -gamma * np.log(e_grid), model="power", gamma=gamma
    )
    expected = boundary_trace_constant(d, gamma, a)
    return CountingCheck(
        fit=fit,
        expected=expected,
        relative_error=abs(fit.coefficient - expected) / expected,
    )
