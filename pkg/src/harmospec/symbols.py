"""Radial and general symbols V on the unit ball."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.interpolate import NearestNDInterpolator

from harmospec.checks import check_explicit_dimension
from harmospec.typing import ArrayLike, Field


def _radius(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.atleast_2d(points), axis=-1)


class RadialSymbol:
    """Base class of radial symbols V(x) = v(|x|)."""

    def profile(self, r: ArrayLike) -> np.ndarray:
        """Radial profile v evaluated at radii in [0, 1)."""
        raise NotImplementedError

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.profile(_radius(points))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Radii where the profile is not smooth."""
        return ()

    @property
    def sup_abs(self) -> float:
        """Upper bound for |v| on [0, 1)."""
        raise NotImplementedError

    def tail_sup(self, r0: float) -> float:
        """Upper bound for |v| on [r0, 1)."""
        return self.sup_abs


@dataclass(frozen=True)
class Step(RadialSymbol):
    """Indicator profile v(r) = b 1_[0, c](r)."""

    b: float
    c: float

    def __post_init__(self) -> None:
        if not 0.0 < self.c < 1.0:
            raise ValueError(f"Expected step radius c in (0, 1); got {self.c}")

    def profile(self, r: ArrayLike) -> np.ndarray:
        """Value b inside the closed ball of radius c, 0 outside."""
        return np.where(np.asarray(r, dtype=float) <= self.c, self.b, 0.0)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """The jump at c."""
        return (self.c,)

    @property
    def sup_abs(self) -> float:
        """|b|."""
        return abs(self.b)

    def tail_sup(self, r0: float) -> float:
        """|b| while r0 is inside the step, 0 beyond it."""
        return abs(self.b) if r0 <= self.c else 0.0


@dataclass(frozen=True)
class Power(RadialSymbol):
    """Boundary-vanishing profile v(r) = a (1 - r)^gamma."""

    a: float
    gamma: float

    def __post_init__(self) -> None:
        if self.a <= 0:
            raise ValueError(f"Expected positive amplitude a; got {self.a}")
        if self.gamma <= 0:
            raise ValueError(f"Expected positive exponent gamma; got {self.gamma}")

    def profile(self, r: ArrayLike) -> np.ndarray:
        """Profile a (1 - r)^gamma, clamped to 0 for r >= 1."""
        r = np.asarray(r, dtype=float)
        return self.a * np.clip(1.0 - r, 0.0, None) ** self.gamma

    @property
    def sup_abs(self) -> float:
        """Attained at the origin."""
        return self.a

    def tail_sup(self, r0: float) -> float:
        """Attained at r0 since the profile decreases."""
        return self.a * max(1.0 - r0, 0.0) ** self.gamma


@dataclass(frozen=True)
class Sampled(RadialSymbol):
    """Piecewise-linear profile through (r, v) samples, constant beyond the ends."""

    radii: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        radii = np.asarray(self.radii, dtype=float)
        if radii.ndim != 1 or len(radii) < 2 or len(radii) != len(self.values):
            raise ValueError(
                "Expected at least two (r, v) samples of equal length; "
                f"got {len(self.radii)} radii and {len(self.values)} values"
            )
        if radii[0] < 0.0 or radii[-1] >= 1.0 or np.any(np.diff(radii) <= 0):
            raise ValueError("Expected strictly increasing radii in [0, 1)")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("Expected finite profile values")
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_arrays(cls, radii: ArrayLike, values: ArrayLike) -> "Sampled":
        """Build from flat arrays of radii and values."""
        return cls(tuple(np.ravel(radii)), tuple(np.ravel(values)))

    def profile(self, r: ArrayLike) -> np.ndarray:
        """Linear interpolation of the samples."""
        return np.interp(np.asarray(r, dtype=float), self.radii, self.values)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Every sample radius."""
        return self.radii

    @property
    def sup_abs(self) -> float:
        """Largest |v| over the samples."""
        return float(np.max(np.abs(self.values)))

    def tail_sup(self, r0: float) -> float:
        """Largest |v| on [r0, 1), exact for the interpolant."""
        radii = np.asarray(self.radii)
        values = np.abs(np.asarray(self.values))
        # Maximum of a piecewise-linear function on [r0, 1) sits at a node or r0
        inside = values[radii >= r0]
        at_r0 = abs(float(np.interp(r0, radii, self.values)))
        return max(float(inside.max()) if inside.size else at_r0, at_r0)

    @property
    def boundary_value(self) -> float:
        """Limit v(1-) of the clamped profile."""
        return self.values[-1]


@dataclass(frozen=True)
class Sum(RadialSymbol):
    """Sum of radial symbols; eigenvalues add degree by degree."""

    terms: tuple[RadialSymbol, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("Expected at least one term in a sum symbol")
        object.__setattr__(self, "terms", tuple(self.terms))

    def profile(self, r: ArrayLike) -> np.ndarray:
        """Sum of the term profiles."""
        return reduce(np.add, (term.profile(r) for term in self.terms))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Union of the term breakpoints."""
        return tuple(sorted({p for term in self.terms for p in term.breakpoints}))

    @property
    def sup_abs(self) -> float:
        """Triangle-inequality bound from the terms."""
        return sum(term.sup_abs for term in self.terms)

    def tail_sup(self, r0: float) -> float:
        """Triangle-inequality bound from the terms."""
        return sum(term.tail_sup(r0) for term in self.terms)


def constant(value: float) -> Sampled:
    """The constant profile v = value as a sampled symbol."""
    return Sampled((0.0, 0.5), (value, value))


@dataclass(frozen=True)
class BoundaryMeta:
    """Declared structure V(x) ~ (1 - |x|)^gamma a0(x / |x|) near the sphere."""

    gamma: float
    a0: float | Callable[[np.ndarray], np.ndarray]

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError(f"Expected positive exponent gamma; got {self.gamma}")

    def trace(self, directions: np.ndarray) -> np.ndarray:
        """Boundary coefficient a0 at unit directions."""
        directions = np.atleast_2d(directions)
        if callable(self.a0):
            return np.asarray(self.a0(directions), dtype=float)
        return np.full(len(directions), float(self.a0))


@dataclass(frozen=True)
class GeneralSymbol:
    """A real symbol on the ball of R^d, d = 2 or 3, evaluated pointwise.

    Attributes:
        func: maps an (n, d) array of points to n values
        d: dimension
        meta: optional boundary structure
        name: label used in logs and outputs
        breakpoints: radii where the symbol is not smooth (refines quadrature)
    """

    func: Field
    d: int
    meta: BoundaryMeta | None = None
    name: str = "general"
    breakpoints: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        check_explicit_dimension(self.d)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return np.asarray(self.func(points), dtype=float).reshape(len(points))

    @classmethod
    def from_samples(
        cls,
        points: ArrayLike,
        values: ArrayLike,
        meta: BoundaryMeta | None = None,
        name: str = "samples",
    ) -> "GeneralSymbol":
        """Symbol from samples; exact at the sample points, nearest-node elsewhere."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.asarray(values, dtype=float)
        if len(points) != len(values):
            raise ValueError(
                f"Expected one value per point; got {len(points)} points "
                f"and {len(values)} values"
            )
        interpolator = NearestNDInterpolator(points, values)
        return cls(
            func=interpolator,
            d=points.shape[1],
            meta=meta,
            name=name,
        )


Symbol = RadialSymbol | GeneralSymbol


def check_boundary_meta(
    symbol: GeneralSymbol,
    radius: float = 0.999,
    n_directions: int = 32,
    rtol: float = 0.05,
) -> float:
    """Spot-check the declared boundary structure of a symbol.

    Compares V(x) (1 - |x|)^(-gamma) with a0(x / |x|) at `radius`.

    Returns:
        the largest deviation relative to max |a0|

    Raises:
        ValueError: if the symbol has no metadata or the deviation exceeds rtol
    """
    if symbol.meta is None:
        raise ValueError(f"Expected boundary metadata on symbol '{symbol.name}'")
    if symbol.d == 2:
        theta = 2.0 * math.pi * np.arange(n_directions) / n_directions
        directions = np.column_stack([np.cos(theta), np.sin(theta)])
    else:
        rng = np.random.default_rng(0)
        directions = rng.normal(size=(n_directions, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)

    scaled = symbol(radius * directions) * (1.0 - radius) ** (-symbol.meta.gamma)
    trace = symbol.meta.trace(directions)
    scale = max(float(np.max(np.abs(trace))), 1e-300)
    deviation = float(np.max(np.abs(scaled - trace))) / scale
    logging.debug("Boundary metadata deviation at |x| = %g: %.3g", radius, deviation)
    if deviation > rtol:
        raise ValueError(
            f"Expected V (1 - |x|)^-gamma -> a0 within {rtol}; got deviation "
            f"{deviation:.3g} at |x| = {radius}"
        )
    return deviation

