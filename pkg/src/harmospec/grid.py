"""Truncation parameters and tensor quadrature on the unit ball."""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from harmospec.checks import check_degree, check_explicit_dimension
from harmospec.harmonic_basis import basis_table
from harmospec.numerics import composite_gauss_legendre, gauss_legendre

# Polynomial symbol degree integrated exactly by the default angular order
SYMBOL_DEGREE = 4


@dataclass(frozen=True)
class TruncationSpec:
    """Maximal harmonic degree and quadrature orders of a finite section.

    Attributes:
        K: maximal spherical-harmonic degree
        n_r: radial Gauss-Legendre order (per piece of the radial interval)
        n_ang: angular order; the equispaced grid size for d = 2 and the polar
            Gauss-Legendre order for d = 3 (with 2 * n_ang azimuthal points)
    """

    K: int
    n_r: int
    n_ang: int

    def __post_init__(self) -> None:
        check_degree(self.K)
        if self.n_ang < 2 * self.K + 2:
            raise ValueError(
                f"Expected n_ang >= 2K + 2 = {2 * self.K + 2}; got {self.n_ang}"
            )
        if self.n_r < self.K + 8:
            raise ValueError(f"Expected n_r >= K + 8 = {self.K + 8}; got {self.n_r}")

    @classmethod
    def default(
        cls, K: int, n_r: int | None = None, n_ang: int | None = None
    ) -> "TruncationSpec":
        """Default orders for degree K unless given explicitly.

        The angular order 2K + 2 + SYMBOL_DEGREE integrates products of two
        degree-<= K harmonics with a polynomial symbol of degree <= 4 exactly.
        """
        return cls(
            K=K,
            n_r=n_r if n_r is not None else K + 8,
            n_ang=n_ang if n_ang is not None else 2 * K + 2 + SYMBOL_DEGREE,
        )


def _sphere_grid(d: int, n_ang: int) -> tuple[np.ndarray, np.ndarray]:
    """Unit directions and weights integrating trigonometric degree < n_ang."""
    if d == 2:
        theta = 2.0 * math.pi * np.arange(n_ang) / n_ang
        directions = np.column_stack([np.cos(theta), np.sin(theta)])
        return directions, np.full(n_ang, 2.0 * math.pi / n_ang)

    polar = gauss_legendre(n_ang)
    n_phi = 2 * n_ang
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    cos_theta, azimuth = np.meshgrid(polar.nodes, phi, indexing="ij")
    sin_theta = np.sqrt(1.0 - cos_theta**2)
    directions = np.column_stack(
        [
            (sin_theta * np.cos(azimuth)).ravel(),
            (sin_theta * np.sin(azimuth)).ravel(),
            cos_theta.ravel(),
        ]
    )
    weights = np.outer(polar.weights, np.full(n_phi, 2.0 * math.pi / n_phi))
    return directions, weights.ravel()


class BallQuadrature:
    """Tensor radial x angular quadrature on the unit ball of R^d (d = 2, 3).

    The radial rule is split at `breakpoints`, so integrands that are polynomial
    in r on every piece (step and piecewise-linear profiles times harmonic
    products) are integrated exactly.
    """

    def __init__(
        self, d: int, spec: TruncationSpec, breakpoints: Sequence[float] = ()
    ) -> None:
        check_explicit_dimension(d)
        self.d = d
        self.spec = spec
        self.radial = composite_gauss_legendre(spec.n_r, breakpoints, 0.0, 1.0)
        directions, angular_weights = _sphere_grid(d, spec.n_ang)

        radii = self.radial.nodes
        self.radii = np.repeat(radii, len(angular_weights))
        self.directions = np.tile(directions, (len(radii), 1))
        self.points = self.radii[:, None] * self.directions
        self.weights = np.outer(
            self.radial.weights * radii ** (d - 1), angular_weights
        ).ravel()

    def __len__(self) -> int:
        return len(self.weights)

    @cached_property
    def basis(self) -> np.ndarray:
        """Orthonormal basis of degree <= K at the nodes, shape (M_K, n)."""
        return basis_table(self.d, self.spec.K, self.points)

    @cached_property
    def density(self) -> np.ndarray:
        """Truncated kernel diagonal rho_K at the nodes."""
        return np.sum(self.basis**2, axis=0)

    def integrate(self, values: np.ndarray) -> float:
        """Integrate samples taken at `points` over the ball."""
        return float(np.dot(self.weights, values))
