"""Assertion of arguments and the library error hierarchy."""

import numpy as np

from harmospec.typing import ArrayLike


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class CertificationError(RuntimeError):
    """A numerical result could not be certified."""


class TailNotCertifiedError(CertificationError):
    """Eigenvalues beyond the truncation degree cannot be bounded below a level."""


class QuadratureDivergenceError(CertificationError):
    """Consecutive quadrature refinements disagree."""


def check_dimension(d: int) -> None:
    """Check that the ambient dimension is at least 2."""
    if d < 2:
        raise ValueError(f"Expected dimension d >= 2; got {d}")


def check_explicit_dimension(d: int) -> None:
    """Check that pointwise harmonics are available in dimension `d`."""
    if d not in {2, 3}:
        raise ValueError(f"Expected dimension 2 or 3; got {d}")


def check_degree(k: int) -> None:
    """Check that a spherical-harmonic degree is nonnegative."""
    if k < 0:
        raise ValueError(f"Expected nonnegative degree; got {k}")


def check_in_ball(x: ArrayLike) -> np.ndarray:
    """Check that point(s) lie in the open unit ball; returns them as an array."""
    x = np.asarray(x, dtype=float)
    radius = np.linalg.norm(x, axis=-1)
    if np.any(radius >= 1.0):
        raise DomainError(f"Expected points in the open unit ball; got |x| = {radius}")
    return x


def check_unit(x: ArrayLike, tol: float = 1e-12) -> np.ndarray:
    """Check that point(s) lie on the unit sphere; returns them as an array."""
    x = np.asarray(x, dtype=float)
    radius = np.linalg.norm(x, axis=-1)
    if np.any(np.abs(radius - 1.0) > tol):
        raise DomainError(f"Expected unit vectors; got |x| = {radius}")
    return x


def check_cosine(t: ArrayLike) -> np.ndarray:
    """Check that value(s) lie in [-1, 1]."""
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0):
        raise DomainError(f"Expected values in [-1, 1]; got {t}")
    return t


def check_symmetric(a: np.ndarray, rtol: float = 1e-10) -> None:
    """Check that a matrix is square and symmetric to a relative tolerance."""
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"Expected nonempty square matrix; got shape {a.shape}")
    scale = max(float(np.max(np.abs(a))), 1.0)
    if np.max(np.abs(a - a.T)) > rtol * scale:
        raise ValueError("Expected symmetric matrix")


def check_sign(sign: int) -> None:
    """Check that a counting sign is +1 or -1."""
    if sign not in {1, -1}:
        raise ValueError(f"Expected sign +1 or -1; got {sign}")
