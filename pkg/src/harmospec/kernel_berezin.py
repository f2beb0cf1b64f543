"""Truncated reproducing kernel of harmonic functions and the Berezin transform.

All quantities use the kernel of the projection onto harmonic polynomials of
degree at most K:

    R_K(x, y) = sum_{k <= K} (2k + d) |x|^k |y|^k Z_k(x / |x| . y / |y|)

where Z_k is the zonal harmonic of degree k.
"""

import logging
import math
from dataclasses import replace

import numpy as np
from numpy.polynomial import polynomial

from harmospec.checks import (
    QuadratureDivergenceError,
    check_degree,
    check_dimension,
    check_in_ball,
)
from harmospec.grid import BallQuadrature, TruncationSpec
from harmospec.harmonic_basis import (
    basis_table,
    multiplicities,
    sphere_surface_area,
    zonal_sum,
)
from harmospec.radial_toeplitz import radial_eigenvalues
from harmospec.symbols import GeneralSymbol, RadialSymbol, Symbol
from harmospec.typing import ArrayLike


def boundary_distance(x: ArrayLike) -> np.ndarray | float:
    """Distance r(x) = 1 - |x| to the unit sphere."""
    x = check_in_ball(x)
    out = 1.0 - np.linalg.norm(x, axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def separation(x: ArrayLike, y: ArrayLike) -> float:
    """Distance delta(x, y) = |x - y| + r(x) + r(y)."""
    x, y = check_in_ball(x), check_in_ball(y)
    return float(
        np.linalg.norm(x - y) + boundary_distance(x) + boundary_distance(y)
    )


def suggest_truncation(max_radius: float) -> int:
    """Degree K = ceil(40 / (1 - max_radius)) resolving kernels up to max_radius."""
    if not 0.0 <= max_radius < 1.0:
        raise ValueError(f"Expected radius in [0, 1); got {max_radius}")
    return math.ceil(40.0 / (1.0 - max_radius))


def _radial_weights(d: int, K: int) -> np.ndarray:
    """Coefficients (2k + d) m_k / |S^{d-1}| of rho_K as a series in |x|^2."""
    return (2 * np.arange(K + 1) + d) * multiplicities(d, K).astype(float) / (
        sphere_surface_area(d)
    )


def reproducing_kernel(x: ArrayLike, y: ArrayLike, K: int) -> float:
    """Truncated reproducing kernel R_K(x, y) for points of the open unit ball."""
    check_degree(K)
    x, y = check_in_ball(x), check_in_ball(y)
    d = x.shape[-1]
    check_dimension(d)
    rx, ry = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if rx == 0.0 or ry == 0.0:
        return d / sphere_surface_area(d)
    t = float(np.clip(np.dot(x, y) / (rx * ry), -1.0, 1.0))
    return math.fsum(
        (2 * k + d) * (rx * ry) ** k * zonal_sum(d, k, t) for k in range(K + 1)
    )


def density_rho(x: ArrayLike, K: int) -> np.ndarray | float:
    """Kernel diagonal rho_K(x) = R_K(x, x) at one point or an (n, d) array."""
    check_degree(K)
    x = check_in_ball(x)
    d = x.shape[-1]
    check_dimension(d)
    s = np.sum(x**2, axis=-1)
    out = polynomial.polyval(s, _radial_weights(d, K))
    return float(out) if np.ndim(out) == 0 else out


def _rho_quadrature(f: GeneralSymbol, d: int, spec: TruncationSpec) -> float:
    quad = BallQuadrature(d, spec, f.breakpoints)
    return quad.integrate(f(quad.points) * quad.density)


def rho_integral(
    f: Symbol,
    d: int,
    K: int,
    spec: TruncationSpec | None = None,
    rtol: float = 1e-6,
) -> float:
    """Integral of f against d rho_K = rho_K(x) dx over the unit ball.

    Radial f reduce to sum_k m_k mu_k(f); other symbols use tensor quadrature
    and are checked against a refined grid.

    Raises:
        QuadratureDivergenceError: if the refined quadrature differs by more
            than `rtol` relative
    """
    check_degree(K)
    if isinstance(f, RadialSymbol):
        check_dimension(d)
        mu = radial_eigenvalues(f, d, np.arange(K + 1))
        return float(np.sum(multiplicities(d, K).astype(float) * mu))

    spec = spec or TruncationSpec.default(K)
    if spec.K != K:
        raise ValueError(f"Expected truncation degree {K}; got {spec.K}")
    value = _rho_quadrature(f, d, spec)
    refined = replace(spec, n_r=2 * spec.n_r, n_ang=2 * spec.n_ang)
    check = _rho_quadrature(f, d, refined)
    if abs(check - value) > rtol * max(abs(check), 1e-300):
        raise QuadratureDivergenceError(
            f"Expected refinements to agree within {rtol}; got {value} and {check}"
        )
    return value


def berezin_transform(
    V: Symbol, x: ArrayLike, K: int, spec: TruncationSpec | None = None
) -> float:
    """Berezin transform rho_K(x)^-1 int R_K(x, y)^2 V(y) dy.

    Radial symbols use the closed series sum_k c_k mu_k / sum_k c_k with
    c_k = (2k + d) m_k |x|^(2k), obtained by integrating over angles.
    """
    check_degree(K)
    x = check_in_ball(x)
    d = x.shape[-1]
    if isinstance(V, RadialSymbol):
        check_dimension(d)
        weights = _radial_weights(d, K) * float(np.dot(x, x)) ** np.arange(K + 1)
        mu = radial_eigenvalues(V, d, np.arange(K + 1))
        return float(np.dot(weights, mu) / np.sum(weights))

    if V.d != d:
        raise ValueError(f"Expected point of dimension {V.d}; got {d}")
    spec = spec or TruncationSpec.default(K)
    quad = BallQuadrature(d, spec, V.breakpoints)
    at_x = basis_table(d, spec.K, x.reshape(1, d))[:, 0]
    kernel = at_x @ quad.basis
    value = quad.integrate(kernel**2 * V(quad.points)) / float(np.sum(at_x**2))
    logging.debug(
        "Berezin transform of %s at |x| = %g: %g", V.name, np.linalg.norm(x), value
    )
    return value


def covariant_sandwich(
    V: GeneralSymbol, spec: TruncationSpec, samples: np.ndarray
) -> tuple[float, float]:
    """Largest Berezin value over samples and the supremum of V on the grid."""
    tilde = max(berezin_transform(V, x, spec.K, spec) for x in samples)
    quad = BallQuadrature(V.d, spec, V.breakpoints)
    return tilde, float(np.max(V(quad.points)))


def boundary_rate(d: int, radii: ArrayLike) -> np.ndarray:
    """Scaled rho_K(r e_1) (1 - r)^d with K = suggest_truncation(r) at each radius."""
    radii = np.asarray(radii, dtype=float)
    out = []
    for r in radii:
        point = np.zeros(d)
        point[0] = r
        out.append(density_rho(point, suggest_truncation(r)) * (1.0 - r) ** d)
    return np.asarray(out)
