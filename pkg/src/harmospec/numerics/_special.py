import numpy as np
from scipy import special

from harmospec.checks import DomainError, check_cosine, check_degree
from harmospec.typing import ArrayLike


def log_gamma(x: ArrayLike) -> np.ndarray | float:
    """Natural logarithm of the gamma function for positive arguments."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError(f"Expected positive argument; got {x}")
    out = special.gammaln(x)
    return float(out) if out.ndim == 0 else out


def log_beta(p: ArrayLike, q: ArrayLike) -> np.ndarray | float:
    """Natural logarithm of the Euler beta function.

    Arguments are ordered before evaluation, so the result is exactly symmetric.
    Uses an asymptotic form for large arguments, so ratios such as
    Gamma(n + 1) / Gamma(n + 1 + gamma) stay accurate for n up to 1e9.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(p <= 0) or np.any(q <= 0):
        raise DomainError(f"Expected positive arguments; got ({p}, {q})")
    out = special.betaln(np.minimum(p, q), np.maximum(p, q))
    return float(out) if out.ndim == 0 else out


def beta(p: ArrayLike, q: ArrayLike) -> np.ndarray | float:
    """Euler beta function, evaluated as the exponential of `log_beta`."""
    return np.exp(log_beta(p, q))


def gegenbauer(k: int, alpha: float, t: ArrayLike) -> np.ndarray | float:
    """Gegenbauer polynomial C_k^(alpha)(t) on [-1, 1]."""
    check_degree(k)
    if alpha <= 0:
        raise ValueError(f"Expected positive Gegenbauer index; got {alpha}")
    t = check_cosine(t)
    out = special.eval_gegenbauer(k, alpha, t)
    return float(out) if np.ndim(out) == 0 else out


def bessel_j_zeros(k: int, count: int) -> np.ndarray:
    """The first `count` positive zeros of the Bessel function J_k, ascending."""
    check_degree(k)
    if count < 1:
        raise ValueError(f"Expected zero count >= 1; got {count}")
    return special.jn_zeros(k, count)


def bessel_j_zero(k: int, m: int) -> float:
    """The m-th positive zero j_{k,m} of the Bessel function J_k."""
    return float(bessel_j_zeros(k, m)[m - 1])
