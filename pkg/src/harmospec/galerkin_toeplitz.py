"""Finite sections of Toeplitz operators on harmonic polynomials of degree <= K.

The section of T_V is the matrix of <V phi_i, phi_j> in the orthonormal basis
of degree-<= K harmonics (d = 2, 3), assembled by tensor quadrature. For V >= 0
its eigenvalues are nondecreasing in K, so counts from a section are lower
bounds for the counting function of T_V.
"""

import logging
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from harmospec.checks import check_sign
from harmospec.grid import BallQuadrature, TruncationSpec
from harmospec.numerics import symmetric_eigen
from harmospec.spectrum import Spectrum
from harmospec.symbols import GeneralSymbol, Symbol

# Relative asymmetry tolerated before symmetrization
ASYMMETRY_WARNING = 1e-8


def _check_symbol_dimension(V: Symbol, d: int) -> None:
    if isinstance(V, GeneralSymbol) and V.d != d:
        raise ValueError(f"Expected symbol of dimension {d}; got {V.d}")


def compress(values: np.ndarray, quad: BallQuadrature) -> np.ndarray:
    """Symmetric matrix of the multiplier with samples `values` at the nodes."""
    basis = quad.basis
    matrix = (basis * (quad.weights * values)) @ basis.T
    scale = max(float(np.max(np.abs(matrix))), 1e-300)
    asymmetry = float(np.max(np.abs(matrix - matrix.T))) / scale
    if asymmetry > ASYMMETRY_WARNING:
        logging.warning("Quadrature asymmetry %.3g before symmetrization", asymmetry)
    return 0.5 * (matrix + matrix.T)


def assemble(V: Symbol, d: int, spec: TruncationSpec) -> np.ndarray:
    """Finite section of T_V on harmonics of degree <= spec.K, size M_K."""
    _check_symbol_dimension(V, d)
    quad = BallQuadrature(d, spec, V.breakpoints)
    return compress(V(quad.points), quad)


def spectrum(V: Symbol, d: int, spec: TruncationSpec) -> Spectrum:
    """Eigenvalues of the finite section, decreasing in absolute value."""
    eigenvalues = symmetric_eigen(assemble(V, d, spec))
    return Spectrum.from_eigenvalues(eigenvalues, K=spec.K, d=d)


def counting_galerkin(section: Spectrum, lam: float, sign: int = 1) -> int:
    """Number of section eigenvalues e with sign * e > lam."""
    check_sign(sign)
    count = section.count(lam, sign)
    logging.info(
        "Section count at degree %d is a lower bound for nonnegative symbols: %d",
        section.K,
        count,
    )
    return count


def schatten_galerkin(section: Spectrum, p: float, weak: bool = False) -> float:
    """Schatten (p >= 1) or weak Schatten (p > 1) norm of a section."""
    return section.weak_schatten(p) if weak else section.schatten(p)


def weak_lp_norm(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    """Weak Lebesgue quasinorm sup_t t mass(|f| > t)^(1/p) of a discrete function.

    Args:
        values: function values at the nodes
        weights: positive node masses
        p: exponent, p > 1
    """
    if p <= 1:
        raise ValueError(f"Expected p > 1 for weak norm; got {p}")
    levels = np.abs(np.asarray(values, dtype=float))
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0):
        raise ValueError("Expected nonnegative weights")
    order = np.argsort(-levels, kind="stable")
    levels, mass = levels[order], np.cumsum(weights[order])
    # As t increases to a level, mass(|f| > t) tends to the mass of |f| >= level
    last_of_level = np.r_[levels[1:] != levels[:-1], True]
    return float(
        np.max(levels[last_of_level] * mass[last_of_level] ** (1.0 / p), initial=0.0)
    )


class BoundCheck(NamedTuple):
    """Section norm (lhs) against the weighted symbol norm (rhs)."""

    lhs: float
    rhs: float
    passed: bool


def schatten_bound_check(
    V: Symbol, d: int, spec: TruncationSpec, p: float, weak: bool = False
) -> BoundCheck:
    """Compare the section norm of T_V with the norm of V in L^p(d rho_K).

    Strong norms (p >= 1) are compared with (int V^p d rho_K)^(1/p); weak norms
    (p > 1) with the weak Lebesgue quasinorm of V under rho_K dx.

    Raises:
        ValueError: if V takes negative values on the grid
    """
    _check_symbol_dimension(V, d)
    quad = BallQuadrature(d, spec, V.breakpoints)
    values = V(quad.points)
    if np.any(values < 0):
        raise ValueError("Expected nonnegative symbol for the Schatten bounds")
    section = Spectrum.from_eigenvalues(
        symmetric_eigen(compress(values, quad)), K=spec.K, d=d
    )
    mass = quad.weights * quad.density
    if weak:
        lhs, rhs = section.weak_schatten(p), weak_lp_norm(values, mass, p)
    else:
        if p < 1:
            raise ValueError(f"Expected p >= 1; got {p}")
        lhs = section.schatten(p)
        rhs = float(np.dot(mass, values**p)) ** (1.0 / p)
    return BoundCheck(lhs=lhs, rhs=rhs, passed=lhs <= rhs * (1.0 + 1e-6))


def _count_above(eigenvalues: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Counts n_+(s) for each threshold in s, from ascending eigenvalues."""
    return len(eigenvalues) - np.searchsorted(eigenvalues, s, side="right")


class WeylReport(NamedTuple):
    """Number of Weyl comparisons made and how many failed."""

    checked: int
    violations: int

    @property
    def passed(self) -> bool:
        """No comparison failed."""
        return self.violations == 0


def weyl_check(
    a: np.ndarray,
    b: np.ndarray,
    s_values: Sequence[float] | None = None,
    n_s: int = 10,
) -> WeylReport:
    """Check n(s1 + s2; A + B) <= n(s1; A) + n(s2; B) for both signs.

    Thresholds default to `n_s` points spread over (0, max |eigenvalue|].
    """
    if a.shape != b.shape:
        raise ValueError(
            f"Expected matrices of equal shape; got {a.shape}, {b.shape}"
        )
    eig_a, eig_b = symmetric_eigen(a), symmetric_eigen(b)
    eig_sum = symmetric_eigen(a + b)
    if s_values is None:
        top = max(np.max(np.abs(eig_a)), np.max(np.abs(eig_b)), 1e-12)
        s_values = np.linspace(top / n_s, top, n_s)
    s = np.asarray(s_values, dtype=float)
    s1, s2 = (grid.ravel() for grid in np.meshgrid(s, s, indexing="ij"))

    violations = 0
    for sign in (1, -1):
        ea, eb, es = (np.sort(sign * e) for e in (eig_a, eig_b, eig_sum))
        lhs = _count_above(es, s1 + s2)
        rhs = _count_above(ea, s1) + _count_above(eb, s2)
        violations += int(np.sum(lhs > rhs))
    return WeylReport(checked=2 * len(s1), violations=violations)


def weyl_suite(
    pairs: int = 100, size: int = 30, n_s: int = 10, seed: int = 0
) -> WeylReport:
    """Weyl inequalities on random symmetric pairs (eigensolver sanity suite)."""
    rng = np.random.default_rng(seed)
    checked = violations = 0
    for _ in range(pairs):
        x, y = rng.normal(size=(2, size, size))
        report = weyl_check(0.5 * (x + x.T), 0.5 * (y + y.T), n_s=n_s)
        checked += report.checked
        violations += report.violations
    return WeylReport(checked=checked, violations=violations)


def block_model_spectrum(
    section_eigenvalues: np.ndarray,
    l_values: np.ndarray,
    window: tuple[float, float],
) -> np.ndarray:
    """Ascending eigenvalues of the block operator T_V + L inside a window.

    The block model places the section of T_V on harmonic functions and the
    (positive, discrete) spectrum of L on their complement.
    """
    lo, hi = window
    merged = np.sort(np.concatenate([section_eigenvalues, l_values]))
    return merged[(merged >= lo) & (merged <= hi)]


def nearest_gaps(eigenvalues: np.ndarray, targets: Sequence[float]) -> np.ndarray:
    """Distance from each target to the closest eigenvalue."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    return np.array([float(np.min(np.abs(eigenvalues - t))) for t in targets])
