"""Spherical harmonics and the orthonormal harmonic basis of the unit ball.

Basis elements are enumerated degree-major with the in-degree index ascending.
Within a degree k >= 1 the real harmonics are ordered as

* d = 2: ell = 1 -> cos(k theta), ell = 2 -> sin(k theta);
* d = 3: ell = 1 -> order 0, ell = 2j -> cos(j phi) of order j,
  ell = 2j + 1 -> sin(j phi) of order j.

Galerkin matrices use this layout.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy import special

from harmospec.checks import (
    check_cosine,
    check_degree,
    check_dimension,
    check_explicit_dimension,
    check_in_ball,
    check_unit,
)
from harmospec.numerics import gegenbauer, log_gamma
from harmospec.typing import ArrayLike


class BasisIndex(NamedTuple):
    """Degree k and index ell of a basis function within its degree."""

    k: int
    ell: int


def _binom(m: int, n: int) -> int:
    """Binomial coefficient with binom(m, n) = 0 whenever m < n."""
    if n < 0 or m < n:
        return 0
    return math.comb(m, n)


def multiplicity(d: int, k: int) -> int:
    """Dimension m_k of the degree-k spherical harmonics on S^{d-1}."""
    check_dimension(d)
    check_degree(k)
    return _binom(d + k - 1, d - 1) - _binom(d + k - 3, d - 1)


def cumulative_multiplicity(d: int, k: int) -> int:
    """M_k = m_0 + ... + m_k by its closed binomial form; M_{-1} = 0."""
    check_dimension(d)
    if k < -1:
        raise ValueError(f"Expected degree >= -1; got {k}")
    return _binom(d + k - 1, d - 1) + _binom(d + k - 2, d - 1)


def multiplicities(d: int, K: int) -> np.ndarray:
    """Array of m_0, ..., m_K.

    Integer dtype for d <= 4 (closed polynomial forms); Python integers beyond,
    where the values outgrow int64.
    """
    check_dimension(d)
    k = np.arange(K + 1, dtype=np.int64)
    match d:
        case 2:
            out = np.where(k == 0, 1, 2)
        case 3:
            out = 2 * k + 1
        case 4:
            out = (k + 1) ** 2
        case _:
            out = np.array([multiplicity(d, int(j)) for j in k], dtype=object)
    return out


def multiplicity_asymptotic_check(d: int, k_max: int) -> float:
    """Largest k * |M_k (d-1)! / (2 k^{d-1}) - 1| over k in [k_max / 2, k_max].

    Stays bounded in k_max exactly when M_k = 2 k^{d-1} / (d-1)! (1 + O(1/k)).
    """
    check_dimension(d)
    if k_max < 10:
        raise ValueError(f"Expected k_max >= 10; got {k_max}")
    factorial = math.factorial(d - 1)
    deviation = 0.0
    for k in range(max(k_max // 2, 1), k_max + 1):
        ratio = cumulative_multiplicity(d, k) * factorial / (2 * k ** (d - 1))
        deviation = max(deviation, abs(ratio - 1.0) * k)
    return deviation


def sphere_surface_area(d: int) -> float:
    """Surface measure |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)."""
    check_dimension(d)
    return 2.0 * math.exp(0.5 * d * math.log(math.pi) - log_gamma(0.5 * d))


def ball_volume(n: int) -> float:
    """Volume omega_n = pi^{n/2} / Gamma(1 + n/2) of the unit ball in R^n."""
    if n < 0:
        raise ValueError(f"Expected nonnegative dimension; got {n}")
    return math.exp(0.5 * n * math.log(math.pi) - log_gamma(1.0 + 0.5 * n))


def basis_indices(d: int, K: int) -> list[BasisIndex]:
    """All basis indices of degree at most K, degree-major."""
    return [
        BasisIndex(k, ell)
        for k in range(K + 1)
        for ell in range(1, multiplicity(d, k) + 1)
    ]


def basis_degrees(d: int, K: int) -> np.ndarray:
    """Degree of each basis element of degree at most K, in basis order."""
    return np.repeat(np.arange(K + 1), multiplicities(d, K).astype(int))


def _harmonics_2d(K: int, theta: np.ndarray) -> np.ndarray:
    rows = [np.full_like(theta, 1.0 / math.sqrt(2.0 * math.pi))]
    norm = 1.0 / math.sqrt(math.pi)
    for k in range(1, K + 1):
        rows.append(norm * np.cos(k * theta))
        rows.append(norm * np.sin(k * theta))
    return np.stack(rows)


def _harmonics_3d(K: int, cos_theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    rows = []
    for k in range(K + 1):
        for m in range(k + 1):
            log_ratio = log_gamma(k - m + 1) - log_gamma(k + m + 1)
            norm = math.sqrt((2 * k + 1) / (4.0 * math.pi) * math.exp(log_ratio))
            legendre = norm * special.lpmv(m, k, cos_theta)
            if m == 0:
                rows.append(legendre)
            else:
                rows.append(math.sqrt(2.0) * legendre * np.cos(m * phi))
                rows.append(math.sqrt(2.0) * legendre * np.sin(m * phi))
    return np.stack(rows)


def harmonic_table(d: int, K: int, directions: np.ndarray) -> np.ndarray:
    """Orthonormal real harmonics of degree <= K at unit vectors.

    Args:
        d: dimension, 2 or 3
        K: maximal degree
        directions: unit vectors, shape (n, d)

    Returns:
        harmonic values, shape (M_K, n), rows in basis order
    """
    check_explicit_dimension(d)
    check_degree(K)
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    azimuth = np.arctan2(directions[:, 1], directions[:, 0])
    if d == 2:
        return _harmonics_2d(K, azimuth)
    cos_theta = np.clip(directions[:, 2], -1.0, 1.0)
    return _harmonics_3d(K, cos_theta, azimuth)


def spherical_harmonic(d: int, idx: BasisIndex, point: ArrayLike) -> float:
    """Value of the real orthonormal harmonic psi_{k, ell} at a unit vector."""
    k, ell = idx
    check_degree(k)
    if not 1 <= ell <= multiplicity(d, k):
        raise ValueError(f"Expected 1 <= ell <= m_k; got {idx}")
    point = check_unit(point)
    table = harmonic_table(d, k, point.reshape(1, d))
    return float(table[cumulative_multiplicity(d, k - 1) + ell - 1, 0])


def zonal_sum(d: int, k: int, t: ArrayLike) -> np.ndarray | float:
    """Sum over ell of psi_{k, ell}(xi) psi_{k, ell}(eta) as a function of xi . eta."""
    check_dimension(d)
    check_degree(k)
    t = check_cosine(t)
    if d == 2:
        if k == 0:
            out = np.full_like(t, 1.0 / (2.0 * math.pi))
        else:
            out = np.cos(k * np.arccos(t)) / math.pi
    else:
        alpha = 0.5 * d - 1.0
        scale = multiplicity(d, k) / sphere_surface_area(d)
        out = scale * gegenbauer(k, alpha, t) / gegenbauer(k, alpha, 1.0)
    return float(out) if np.ndim(out) == 0 else out


def basis_table(d: int, K: int, points: np.ndarray) -> np.ndarray:
    """Orthonormal basis phi_{k, ell} of degree <= K at points of the ball.

    Returns:
        basis values, shape (M_K, n), rows in basis order
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    radius = np.linalg.norm(points, axis=1)
    # The direction at the origin is irrelevant: r^k = 0 for k >= 1
    safe = np.where(radius > 0, radius, 1.0)
    directions = np.where(radius[:, None] > 0, points / safe[:, None], 0.0)
    directions[radius == 0, 0] = 1.0
    degrees = basis_degrees(d, K)
    radial = np.sqrt(2 * degrees + d)[:, None] * radius[None, :] ** degrees[:, None]
    return radial * harmonic_table(d, K, directions)


def basis_value(d: int, idx: BasisIndex, x: ArrayLike) -> float:
    """Value of phi_{k, ell}(x) = sqrt(2k + d) |x|^k psi_{k, ell}(x / |x|)."""
    k, ell = idx
    check_degree(k)
    if not 1 <= ell <= multiplicity(d, k):
        raise ValueError(f"Expected 1 <= ell <= m_k; got {idx}")
    x = check_in_ball(x)
    table = basis_table(d, k, x.reshape(1, d))
    return float(table[cumulative_multiplicity(d, k - 1) + ell - 1, 0])
