"""Counting arithmetic for small perturbations of the Krein Laplacian.

The discrete spectrum of K +- V accumulating at 0 is governed by T_V: its
counting functions are sandwiched between counts of T_V at shifted thresholds
and a remainder controlled by the spectrum of L, the restriction of K to the
orthogonal complement of the harmonic functions. On the unit disk L is
realized by the clamped buckling problem with eigenvalues j_{k+1, m}^2.
"""

import functools
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial

from harmospec.checks import check_dimension
from harmospec.numerics import bessel_j_zeros
from harmospec.radial_toeplitz import boundary_trace_constant, counting
from harmospec.symbols import Power
from harmospec.typing import ArrayLike

CountingFunction = Callable[[float], int]


@dataclass(frozen=True)
class SandwichInput:
    """Threshold, splitting parameter and the counts entering a sandwich bound.

    Attributes:
        lam: threshold lambda > 0
        eps: splitting parameter in (0, 1)
        n_plus: counting function lambda -> n_+(lambda; T_V), nonincreasing
        remainder: eps -> bound on the counting function of the remainder term
        offset: nonnegative integer offset C of the lower sandwich
    """

    lam: float
    eps: float
    n_plus: CountingFunction
    remainder: CountingFunction = lambda eps: 0
    offset: int = 0

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ValueError(f"Expected positive threshold; got {self.lam}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"Expected eps in (0, 1); got {self.eps}")
        if self.offset < 0:
            raise ValueError(f"Expected nonnegative offset; got {self.offset}")


@dataclass(frozen=True)
class BoundInterval:
    """Closed integer interval [lower, upper] bracketing a count."""

    lower: int
    upper: int

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(
                f"Expected lower <= upper; got [{self.lower}, {self.upper}]"
            )

    def __contains__(self, count: int) -> bool:
        return self.lower <= count <= self.upper


def _remainder(inp: SandwichInput) -> int:
    value = int(inp.remainder(inp.eps))
    if value < 0:
        raise ValueError(f"Expected nonnegative remainder; got {value}")
    return value


def sandwich_minus(inp: SandwichInput) -> BoundInterval:
    """Bounds for the count of K - V below -lambda.

    [n_+(lambda), n_+((1 - eps) lambda) + remainder(eps)]
    """
    lower = inp.n_plus(inp.lam)
    upper = inp.n_plus((1.0 - inp.eps) * inp.lam) + _remainder(inp)
    return BoundInterval(lower=int(lower), upper=int(upper))


def sandwich_plus(inp: SandwichInput) -> BoundInterval:
    """Bounds for the count of K + V in (0, lambda), lambda below lambda_1.

    [n_+((1 + eps) lambda) - remainder(eps) - C, n_+(lambda) - C], clamped at 0.
    """
    lower = inp.n_plus((1.0 + inp.eps) * inp.lam) - _remainder(inp) - inp.offset
    upper = inp.n_plus(inp.lam) - inp.offset
    return BoundInterval(lower=max(int(lower), 0), upper=max(int(upper), 0))


class Envelope(NamedTuple):
    """Main term of the perturbed counting law and its error exponents.

    The count lies within main + O(lambda^-lower_exponent) from below and
    main + O(lambda^-upper_exponent) from above.
    """

    main: float
    lower_exponent: float
    upper_exponent: float
    kappa: float


def envelope_kappa(d: int) -> float:
    """Exponent kappa = d / (d + 2) for d <= 4 and (d - 2) / (d - 1) for d >= 4."""
    check_dimension(d)
    return d / (d + 2) if d <= 4 else (d - 2) / (d - 1)


def counting_envelope(d: int, gamma: float, a: float, lam: float) -> Envelope:
    """Envelope C lambda^(-(d - 1) / gamma) of the counts near the Krein kernel."""
    if lam <= 0:
        raise ValueError(f"Expected positive threshold; got {lam}")
    kappa = envelope_kappa(d)
    constant = boundary_trace_constant(d, gamma, a)
    log_main = math.log(constant) - (d - 1) / gamma * math.log(lam)
    return Envelope(
        main=math.exp(log_main),
        lower_exponent=(d - 2) / gamma,
        upper_exponent=(d - 1) * kappa / gamma,
        kappa=kappa,
    )


def optimal_eps_exponent(d: int, gamma: float) -> float:
    """Exponent theta = 2 (d - 1) / (gamma (d + 2)) balancing the sandwich errors."""
    check_dimension(d)
    return 2.0 * (d - 1) / (gamma * (d + 2))


class BucklingValue(NamedTuple):
    """Clamped buckling eigenvalue j_{k+1, m}^2 of the unit disk."""

    value: float
    multiplicity: int
    k: int
    m: int


@functools.lru_cache(maxsize=32)
def _bessel_zeros_below(order: int, bound: float) -> np.ndarray:
    count = 8
    while True:
        zeros = bessel_j_zeros(order, count)
        if zeros[-1] >= bound:
            return zeros[zeros < bound]
        count *= 2


@functools.lru_cache(maxsize=8)
def _buckling_table(energy: float) -> tuple[BucklingValue, ...]:
    """All buckling values below `energy`, ascending."""
    bound = math.sqrt(energy)
    table = []
    k = 0
    # j_{k+1, 1} > k + 1, so orders beyond sqrt(E) contribute nothing
    while k + 1 < bound:
        zeros = _bessel_zeros_below(k + 1, bound)
        if zeros.size == 0:
            break
        table.extend(
            BucklingValue(float(z) ** 2, 1 if k == 0 else 2, k, m)
            for m, z in enumerate(zeros, start=1)
        )
        k += 1
    return tuple(sorted(table))


def buckling_disk(n: int) -> list[BucklingValue]:
    """The n smallest buckling values of the unit disk with multiplicities.

    The values j_{k+1, m}^2 (k >= 0, m >= 1) are simple for k = 0 and double
    for k >= 1; each (k, m) pair is one entry.
    """
    if n < 1:
        raise ValueError(f"Expected n >= 1; got {n}")
    energy = 64.0
    while len(table := _buckling_table(energy)) < n:
        energy *= 4.0
    return list(table[:n])


def buckling_count(energy: float) -> int:
    """Tr 1_(-inf, E)(L) on the unit disk: buckling values below E with multiplicity."""
    if energy <= 0:
        return 0
    return sum(entry.multiplicity for entry in _buckling_table(float(energy)))


def buckling_counts(energies: ArrayLike) -> np.ndarray:
    """Buckling counts over a grid, sharing one table at the largest energy."""
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    table = _buckling_table(float(max(energies.max(), 1.0)))
    if not table:
        return np.zeros(len(energies), dtype=int)
    values = np.array([entry.value for entry in table])
    cumulative = np.cumsum([entry.multiplicity for entry in table])
    index = np.searchsorted(values, energies, side="left")
    return np.where(index > 0, cumulative[np.maximum(index - 1, 0)], 0)


class WeylFit(NamedTuple):
    """Fit of the buckling count N(E) against the Weyl law C E^(d / 2).

    Attributes:
        exponent: free log-log slope of N against E
        coefficient: C from N ~ C E + B E^(1/2)
        boundary_term: B, the perimeter correction
        counts: N at each energy
    """

    exponent: float
    coefficient: float
    boundary_term: float
    counts: np.ndarray


def weyl_L_check(e_grid: ArrayLike | None = None) -> WeylFit:
    """Fit the disk buckling count against its Weyl law |Omega| E / (4 pi).

    The coefficient is fitted together with an E^(1/2) boundary term so that
    the perimeter correction does not bias it.
    """
    energies = np.sort(
        np.geomspace(1e4, 1e5, 8)
        if e_grid is None
        else np.atleast_1d(np.asarray(e_grid, dtype=float))
    )
    if len(energies) < 2 or energies[0] <= 0:
        raise ValueError("Expected at least 2 positive energies")
    counts = buckling_counts(energies)
    if np.any(counts == 0):
        raise ValueError(
            f"Expected energies above the first buckling value; got {energies[0]}"
        )
    exponent = polynomial.polyfit(np.log(energies), np.log(counts), 1)[1]
    design = np.column_stack([energies, np.sqrt(energies)])
    (coefficient, boundary), *_ = np.linalg.lstsq(design, counts, rcond=None)
    return WeylFit(
        exponent=float(exponent),
        coefficient=float(coefficient),
        boundary_term=float(boundary),
        counts=counts,
    )


def remainder_model(eps: float, v_sup: float, lambda1: float, d: int) -> int:
    """Tr 1_(-inf, E)(L) at E = lambda_1 + v_sup / eps.

    For d = 2 this is the disk buckling count. Other dimensions use the
    unit-constant model floor(E^(d / 2)), which is not a bound.
    """
    check_dimension(d)
    if eps <= 0:
        raise ValueError(f"Expected positive eps; got {eps}")
    if v_sup <= 0 or lambda1 <= 0:
        raise ValueError(
            f"Expected positive sup V and lambda_1; got ({v_sup}, {lambda1})"
        )
    energy = lambda1 + v_sup / eps
    if d == 2:
        return buckling_count(energy)
    logging.warning(
        "No buckling spectrum in dimension %d; using the model E^(d/2) at E = %g",
        d,
        energy,
    )
    return math.floor(energy ** (d / 2))


class RemainderExponent(NamedTuple):
    """Empirical order of upper - main along the optimal eps = lambda^theta."""

    slope: float
    expected: float
    excess: np.ndarray


def remainder_exponent_check(
    d: int,
    gamma: float,
    a: float = 1.0,
    lambdas: ArrayLike | None = None,
    lambda1: float | None = None,
) -> RemainderExponent:
    """Log-log slope of the sandwich excess over the main term for a (1 - r)^gamma.

    With eps = lambda^theta the excess n_+((1 - eps) lambda) + remainder(eps)
    - C lambda^(-(d - 1) / gamma) decays like lambda^(-(d - 1) kappa / gamma).
    """
    lambdas = np.geomspace(1e-6, 1e-3, 7) if lambdas is None else np.asarray(lambdas)
    if lambda1 is None:
        lambda1 = buckling_disk(1)[0].value if d == 2 else 1.0
    v = Power(a, gamma)
    theta = optimal_eps_exponent(d, gamma)

    excess = []
    for lam in lambdas:
        inp = SandwichInput(
            lam=float(lam),
            eps=float(lam) ** theta,
            n_plus=lambda s: counting(v, d, s),
            remainder=lambda eps: remainder_model(eps, v.sup_abs, lambda1, d),
        )
        upper = sandwich_minus(inp).upper
        excess.append(upper - counting_envelope(d, gamma, a, float(lam)).main)
    excess = np.asarray(excess)
    if np.any(excess <= 0):
        raise ValueError("Expected the sandwich excess to stay positive")
    slope = polynomial.polyfit(np.log(lambdas), np.log(excess), 1)[1]
    return RemainderExponent(
        slope=float(slope),
        expected=-(d - 1) * envelope_kappa(d) / gamma,
        excess=excess,
    )
