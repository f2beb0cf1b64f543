from collections.abc import Sequence
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.polynomial import legendre
from scipy import special


class QuadratureRule(NamedTuple):
    """Nodes and weights of a one-dimensional rule."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, values: np.ndarray) -> float:
        """Apply the rule to integrand values sampled at the nodes."""
        return float(np.dot(self.weights, values))


@lru_cache(maxsize=64)
def _legendre_reference(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _check_interval(order: int, a: float, b: float) -> None:
    if order < 1:
        raise ValueError(f"Expected quadrature order >= 1; got {order}")
    if not a < b:
        raise ValueError(f"Expected interval with a < b; got ({a}, {b})")


def gauss_legendre(order: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre rule with `order` nodes on (a, b).

    Exact for polynomials of degree up to 2 * order - 1.
    """
    _check_interval(order, a, b)
    nodes, weights = _legendre_reference(order)
    half = 0.5 * (b - a)
    return QuadratureRule(
        nodes=half * nodes + 0.5 * (a + b), weights=half * weights, order=order
    )


def gauss_jacobi(
    order: int, alpha: float, beta: float = 0.0, a: float = 0.0, b: float = 1.0
) -> QuadratureRule:
    """Gauss-Jacobi rule on (a, b) for the weight (b - x)^alpha (x - a)^beta.

    The weight is absorbed in `weights`, so integrands with a power singularity at
    an endpoint are integrated by sampling only their smooth factor.
    """
    _check_interval(order, a, b)
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError(f"Expected exponents > -1; got ({alpha}, {beta})")
    nodes, weights = special.roots_jacobi(order, alpha, beta)
    half = 0.5 * (b - a)
    scale = half ** (1.0 + alpha + beta)
    return QuadratureRule(
        nodes=half * nodes + 0.5 * (a + b), weights=scale * weights, order=order
    )


def composite_gauss_legendre(
    order: int, breakpoints: Sequence[float] = (), a: float = 0.0, b: float = 1.0
) -> QuadratureRule:
    """Gauss-Legendre rule of `order` nodes on each piece of (a, b) cut at breakpoints.

    Integrands that are polynomial on every piece are integrated exactly.
    """
    _check_interval(order, a, b)
    cuts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    rules = [gauss_legendre(order, lo, hi) for lo, hi in zip(cuts[:-1], cuts[1:])]
    return QuadratureRule(
        nodes=np.concatenate([rule.nodes for rule in rules]),
        weights=np.concatenate([rule.weights for rule in rules]),
        order=order,
    )
