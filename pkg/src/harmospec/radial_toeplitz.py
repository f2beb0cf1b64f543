"""Toeplitz operators with radial symbols.

For V(x) = v(|x|) the operator is diagonal in the harmonic basis: every degree-k
harmonic is an eigenfunction with eigenvalue

    mu_k(v) = (2k + d) int_0^1 v(r) r^(2k + d - 1) dr

of multiplicity m_k. Counting compares logarithms, so thresholds far below the
smallest normal double (ln(lambda) = -200 and beyond) are exact.
"""

import logging
import math
from collections.abc import Sequence
from typing import Literal, NamedTuple

import numpy as np
from numpy.polynomial import polynomial
from scipy.special import logsumexp

from harmospec.checks import (
    TailNotCertifiedError,
    check_degree,
    check_dimension,
    check_sign,
)
from harmospec.harmonic_basis import (
    ball_volume,
    cumulative_multiplicity,
    multiplicities,
    sphere_surface_area,
)
from harmospec.numerics import (
    composite_gauss_legendre,
    gauss_jacobi,
    log_beta,
    log_gamma,
)
from harmospec.spectrum import Spectrum
from harmospec.symbols import Power, RadialSymbol, Sampled, Step, Sum
from harmospec.typing import ArrayLike

MAX_DEGREE = 10**6

# Smallest fitted slope of ln n against -ln(lambda) accepted by the power model
MIN_GROWTH_EXPONENT = 1e-9

# Chunk of degrees evaluated at once for sampled profiles
_CHUNK = 4096

FitModel = Literal["log-power", "power"]


def _moment(v: RadialSymbol, n: int, order: int) -> float:
    """Quadrature value of int_0^1 v(r) r^(n - 1) dr."""
    match v:
        case Power(a=a, gamma=gamma):
            # Jacobi weight absorbs (1 - r)^gamma; the rest is a polynomial
            rule = gauss_jacobi(order, gamma, 0.0, 0.0, 1.0)
            return a * rule.integrate(rule.nodes ** (n - 1))
        case Sum(terms=terms):
            return sum(_moment(term, n, order) for term in terms)
        case _:
            rule = composite_gauss_legendre(order, v.breakpoints, 0.0, 1.0)
            return rule.integrate(v.profile(rule.nodes) * rule.nodes ** (n - 1))


def mu_k(v: RadialSymbol, d: int, k: int, order: int | None = None) -> float:
    """Eigenvalue mu_k(v) on degree-k harmonics, by quadrature.

    The default order integrates step, piecewise-linear and power profiles
    exactly up to rounding.
    """
    check_dimension(d)
    check_degree(k)
    n = 2 * k + d
    return n * _moment(v, n, order if order is not None else n // 2 + 2)


def mu_k_step(b: float, c: float, d: int, k: int) -> float:
    """Closed form b c^(2k + d) for the step profile b 1_[0, c]."""
    check_dimension(d)
    check_degree(k)
    if not 0.0 < c < 1.0:
        raise ValueError(f"Expected step radius c in (0, 1); got {c}")
    return b * math.exp((2 * k + d) * math.log(c))


def mu_k_power(a: float, gamma: float, d: int, k: int) -> float:
    """Closed form a Gamma(gamma + 1) Gamma(2k + d + 1) / Gamma(2k + d + 1 + gamma)."""
    check_dimension(d)
    check_degree(k)
    return float(np.exp(log_abs_eigenvalues(Power(a, gamma), d, k)))


def _sampled_eigenvalues(v: Sampled, n: np.ndarray) -> np.ndarray:
    """Exact eigenvalues of a piecewise-linear profile via segment moments."""
    radii = np.asarray(v.radii)
    values = np.asarray(v.values)
    r0, r1 = radii[:-1], radii[1:]
    slope = np.diff(values) / np.diff(radii)
    intercept = values[:-1] - slope * r0

    out = np.empty(len(n))
    for start in range(0, len(n), _CHUNK):
        nn = n[start : start + _CHUNK, None]
        head = values[0] * radii[0] ** nn[:, 0]
        tail = values[-1] * (1.0 - radii[-1] ** nn[:, 0])
        body = intercept * (r1**nn - r0**nn) + slope * nn / (nn + 1.0) * (
            r1 ** (nn + 1.0) - r0 ** (nn + 1.0)
        )
        out[start : start + _CHUNK] = head + tail + body.sum(axis=1)
    return out


def radial_eigenvalues(v: RadialSymbol, d: int, ks: ArrayLike) -> np.ndarray:
    """Exact eigenvalues mu_k for an array of degrees (closed forms)."""
    check_dimension(d)
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    n = 2.0 * ks + d
    match v:
        case Step(b=b, c=c):
            return b * np.exp(n * math.log(c))
        case Power():
            return np.exp(log_abs_eigenvalues(v, d, ks))
        case Sampled():
            return _sampled_eigenvalues(v, n)
        case Sum(terms=terms):
            return sum(radial_eigenvalues(term, d, ks) for term in terms)
        case _:
            raise TypeError(f"Unsupported radial symbol {type(v).__name__}")


def log_abs_eigenvalues(v: RadialSymbol, d: int, ks: ArrayLike) -> np.ndarray:
    """Log-magnitude ln |mu_k|; exact in the log domain for step and power profiles.

    Returns -inf where an eigenvalue vanishes or underflows.
    """
    ks = np.asarray(ks, dtype=float)
    n = 2.0 * ks + d
    match v:
        case Step(b=b, c=c):
            if b == 0:
                return np.full_like(n, -np.inf)
            return math.log(abs(b)) + n * math.log(c)
        case Power(a=a, gamma=gamma):
            return math.log(a) + np.log(n) + log_beta(gamma + 1.0, n)
        case _:
            with np.errstate(divide="ignore"):
                out = np.log(np.abs(radial_eigenvalues(v, d, ks)))
            return out if np.ndim(ks) else out[0]


def log_tail_bound(v: RadialSymbol, d: int, k: int) -> float:
    """Natural log of an upper bound for sup_{j >= k} |mu_j|, nonincreasing in k."""
    n = 2 * k + d
    match v:
        case Step() | Power():
            # Both sequences are decreasing in k
            return float(log_abs_eigenvalues(v, d, k))
        case Sum(terms=terms):
            with np.errstate(divide="ignore"):
                return float(logsumexp([log_tail_bound(term, d, k) for term in terms]))
        case _:
            # |mu_j| <= sup_{r >= r0} |v| + sup |v| r0^n for every cut r0
            bound = min(
                v.tail_sup(r0) + v.sup_abs * r0**n for r0 in (0.0, *v.breakpoints)
            )
            return math.log(bound) if bound > 0 else -math.inf


def certified_degree(
    v: RadialSymbol, d: int, ln_level: float, max_degree: int = MAX_DEGREE
) -> int:
    """Smallest K_stop with |mu_k| <= exp(ln_level) certified for all k >= K_stop.

    Raises:
        TailNotCertifiedError: if the tail bound stays above the level up to
            `max_degree`
    """
    if log_tail_bound(v, d, 0) <= ln_level:
        return 0
    hi = 1
    while log_tail_bound(v, d, hi) > ln_level:
        if hi >= max_degree:
            raise TailNotCertifiedError(
                f"Cannot bound eigenvalues below exp({ln_level:g}) beyond degree "
                f"{max_degree} for {v}"
            )
        hi = min(2 * hi, max_degree)
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if log_tail_bound(v, d, mid) <= ln_level:
            hi = mid
        else:
            lo = mid
    logging.debug("Tail certified from degree %d at ln(lambda) = %g", hi, ln_level)
    return hi


def _monotone_sign(v: RadialSymbol) -> int | None:
    """Sign of a profile whose |mu_k| is strictly decreasing, else None."""
    match v:
        case Step(b=b):
            return int(np.sign(b))
        case Power():
            return 1
        case _:
            return None


def _monotone_nu(v: RadialSymbol, d: int, ln_lambda: float) -> int:
    """Number of degrees with ln |mu_k| > ln_lambda for a monotone profile."""

    def above(k: int) -> bool:
        return bool(log_abs_eigenvalues(v, d, k) > ln_lambda)

    if not above(0):
        return 0
    hi = 1
    while above(hi):
        hi *= 2
        if hi > 2**62:
            raise TailNotCertifiedError(
                f"Degree count overflow at ln(lambda) = {ln_lambda}"
            )
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if above(mid):
            lo = mid
        else:
            hi = mid
    return hi


def _degree_mask(
    v: RadialSymbol, d: int, ln_lambda: float, sign: int, max_degree: int
) -> np.ndarray:
    """Degrees k < K_stop with sign * mu_k > lambda."""
    k_stop = certified_degree(v, d, ln_lambda, max_degree)
    ks = np.arange(k_stop)
    mu = radial_eigenvalues(v, d, ks)
    with np.errstate(divide="ignore"):
        return (sign * mu > 0) & (np.log(np.abs(mu)) > ln_lambda)


def nu_count(
    v: RadialSymbol,
    d: int,
    lam: float,
    sign: int = 1,
    max_degree: int = MAX_DEGREE,
) -> int:
    """Number of degrees k with sign * mu_k > lam."""
    if lam <= 0:
        raise ValueError(f"Expected positive threshold; got {lam}")
    return log_nu_count(v, d, math.log(lam), sign, max_degree)


def log_nu_count(
    v: RadialSymbol,
    d: int,
    ln_lambda: float,
    sign: int = 1,
    max_degree: int = MAX_DEGREE,
) -> int:
    """Number of degrees k with sign * mu_k > lambda, threshold given as ln(lambda)."""
    check_dimension(d)
    check_sign(sign)
    monotone = _monotone_sign(v)
    if monotone is not None:
        return _monotone_nu(v, d, ln_lambda) if monotone == sign else 0
    return int(np.sum(_degree_mask(v, d, ln_lambda, sign, max_degree)))


def log_counting(
    v: RadialSymbol,
    d: int,
    ln_lambda: float,
    sign: int = 1,
    max_degree: int = MAX_DEGREE,
) -> int:
    """Counting function n_sign(lambda) with the threshold given as ln(lambda).

    Counts eigenvalues e with sign * e > lambda (strict), with multiplicity.
    Monotone profiles use n = M_{nu - 1} with no degree cap.

    Raises:
        TailNotCertifiedError: if the eigenvalues beyond `max_degree` cannot be
            bounded below lambda
    """
    check_dimension(d)
    check_sign(sign)
    monotone = _monotone_sign(v)
    if monotone is not None:
        if monotone != sign:
            return 0
        return cumulative_multiplicity(d, _monotone_nu(v, d, ln_lambda) - 1)
    mask = _degree_mask(v, d, ln_lambda, sign, max_degree)
    if not mask.any():
        return 0
    return int(np.sum(multiplicities(d, len(mask) - 1)[mask]))


def counting(
    v: RadialSymbol,
    d: int,
    lam: float,
    sign: int = 1,
    max_degree: int = MAX_DEGREE,
) -> int:
    """Counting function n_sign(lam; T_V), strict inequality."""
    if lam <= 0:
        raise ValueError(f"Expected positive threshold; got {lam}")
    return log_counting(v, d, math.log(lam), sign, max_degree)


def counting_curve(
    v: RadialSymbol,
    d: int,
    ln_lambdas: ArrayLike,
    sign: int = 1,
    max_degree: int = MAX_DEGREE,
) -> list[int]:
    """Counting function over a grid of ln(lambda) values.

    Non-monotone profiles are diagonalized once up to the degree certified for
    the smallest threshold.
    """
    check_sign(sign)
    ln_lambdas = np.atleast_1d(np.asarray(ln_lambdas, dtype=float))
    if _monotone_sign(v) is not None:
        return [log_counting(v, d, float(x), sign) for x in ln_lambdas]

    k_stop = certified_degree(v, d, float(ln_lambdas.min()), max_degree)
    if k_stop == 0:
        return [0] * len(ln_lambdas)
    mu = radial_eigenvalues(v, d, np.arange(k_stop))
    mult = multiplicities(d, k_stop - 1)
    keep = sign * mu > 0
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(mu[keep]))
    order = np.argsort(-logs, kind="stable")
    cumulative = np.cumsum(mult[keep][order])
    # Number of kept degrees with ln |mu| > ln(lambda)
    above = np.searchsorted(-logs[order], -ln_lambdas, side="left")
    return [int(cumulative[i - 1]) if i > 0 else 0 for i in above]


def step_constant(d: int, c: float) -> float:
    """Coefficient of |ln lambda|^(d - 1) in the counting law of b 1_[0, c]."""
    check_dimension(d)
    if not 0.0 < c < 1.0:
        raise ValueError(f"Expected step radius c in (0, 1); got {c}")
    return 2.0 ** (2 - d) / (math.factorial(d - 1) * abs(math.log(c)) ** (d - 1))


def power_constant(d: int, gamma: float, a: float) -> float:
    """Coefficient of lambda^(-(d - 1) / gamma) in the law of a (1 - r)^gamma."""
    check_dimension(d)
    if gamma <= 0 or a <= 0:
        raise ValueError(f"Expected positive gamma and a; got ({gamma}, {a})")
    log_scale = (d - 1) / gamma * (math.log(a) + log_gamma(gamma + 1.0))
    return 2.0 ** (2 - d) / math.factorial(d - 1) * math.exp(log_scale)


def boundary_trace_constant(d: int, gamma: float, a0_const: float) -> float:
    """Boundary-integral form of the power-law coefficient for a constant trace.

    omega_{d-1} (Gamma(gamma + 1)^(1 / gamma) / (4 pi))^(d - 1)
    a0^((d - 1) / gamma) |S^{d-1}|
    """
    check_dimension(d)
    if gamma <= 0 or a0_const <= 0:
        raise ValueError(
            f"Expected positive gamma and boundary trace; got ({gamma}, {a0_const})"
        )
    log_scale = (d - 1) * (log_gamma(gamma + 1.0) / gamma - math.log(4.0 * math.pi))
    log_trace = (d - 1) / gamma * math.log(a0_const)
    return ball_volume(d - 1) * sphere_surface_area(d) * math.exp(log_scale + log_trace)


class AsymptoticFit(NamedTuple):
    """Least-squares fit of a counting function against a growth model.

    Attributes:
        model: 'log-power' (x = |ln lambda|) or 'power' (x = lambda^(-1 / gamma))
        coefficient: leading coefficient C of n ~ C x^(d - 1)
        exponent: free log-log slope of n against |ln lambda| or 1 / lambda
        intercept: offset of the linear fit of n^(1 / (d - 1)) against x
        residual: root-mean-square relative residual of that fit
        gamma: decay exponent used by the power model
    """

    model: str
    coefficient: float
    exponent: float
    intercept: float
    residual: float
    gamma: float | None


def decay_exponent(v: RadialSymbol) -> float | None:
    """Smallest exponent gamma among the power terms of a symbol, if any."""
    match v:
        case Power(gamma=gamma):
            return gamma
        case Sum(terms=terms):
            exponents = [g for term in terms if (g := decay_exponent(term))]
            return min(exponents) if exponents else None
        case _:
            return None


def fit_counts(
    d: int,
    ln_lambdas: np.ndarray,
    counts: Sequence[int],
    model: FitModel,
    gamma: float | None = None,
) -> AsymptoticFit:
    """Fit counts n(lambda) against the log-power or power growth model.

    n^(1 / (d - 1)) is fitted linearly in x, so constant offsets in the degree
    count do not bias the leading coefficient.
    """
    n = np.asarray(counts, dtype=float)
    if np.any(n <= 0):
        raise ValueError(
            f"Expected positive counts on the whole grid; got {int(np.sum(n <= 0))} "
            "zero counts"
        )
    match model:
        case "log-power":
            if np.any(ln_lambdas >= 0):
                raise ValueError("Expected lambda < 1 for the log-power model")
            x = np.abs(ln_lambdas)
            exponent = polynomial.polyfit(np.log(x), np.log(n), 1)[1]
        case "power":
            exponent = polynomial.polyfit(-ln_lambdas, np.log(n), 1)[1]
            if gamma is None:
                if exponent <= MIN_GROWTH_EXPONENT:
                    raise ValueError(
                        "Expected positive growth exponent for the power model; "
                        f"got {exponent:.3g}"
                    )
                gamma = (d - 1) / exponent
            x = np.exp(-ln_lambdas / gamma)
        case _:
            raise ValueError(f"Expected model 'log-power' or 'power'; got {model}")

    y = n ** (1.0 / (d - 1))
    intercept, slope = polynomial.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean(((y - (intercept + slope * x)) / y) ** 2)))
    return AsymptoticFit(
        model=model,
        coefficient=float(slope ** (d - 1)),
        exponent=float(exponent),
        intercept=float(intercept),
        residual=residual,
        gamma=gamma,
    )


def asymptotic_fit(
    v: RadialSymbol,
    d: int,
    ln_lambdas: ArrayLike,
    model: FitModel = "power",
    gamma: float | None = None,
    sign: int = 1,
    max_degree: int = MAX_DEGREE,
    counts: Sequence[int] | None = None,
) -> AsymptoticFit:
    """Fit n_sign(lambda; T_V) over a grid of ln(lambda) against a growth model.

    Args:
        v: radial symbol
        d: dimension
        ln_lambdas: thresholds as natural logarithms
        model: 'log-power' for compactly supported profiles, 'power' for
            boundary-vanishing profiles
        gamma: decay exponent for the power model; taken from the symbol's
            power terms or estimated from the free log-log slope if omitted
        sign: +1 for n_+, -1 for n_-
        max_degree: tail certification cap for non-monotone profiles
        counts: precomputed counts, one per entry of `ln_lambdas`

    Raises:
        ValueError: with fewer than 4 grid points
    """
    check_dimension(d)
    ln_lambdas = np.atleast_1d(np.asarray(ln_lambdas, dtype=float))
    order = np.argsort(ln_lambdas)
    ln_lambdas = ln_lambdas[order]
    if len(ln_lambdas) < 4:
        raise ValueError(f"Expected at least 4 grid points; got {len(ln_lambdas)}")
    decades = float(np.ptp(ln_lambdas)) / math.log(10.0)
    if decades < 6:
        logging.warning(
            "Lambda grid spans %.2f decades; fits assume 6 or more", decades
        )

    if model == "power" and gamma is None:
        gamma = decay_exponent(v)
    if counts is None:
        counts = counting_curve(v, d, ln_lambdas, sign, max_degree)
    else:
        if len(counts) != len(order):
            raise ValueError(f"Expected {len(order)} counts; got {len(counts)}")
        counts = [int(counts[i]) for i in order]
    return fit_counts(d, ln_lambdas, counts, model, gamma)


def radial_spectrum(v: RadialSymbol, d: int, K: int) -> Spectrum:
    """Exact spectrum on degrees <= K: mu_k with multiplicity m_k."""
    check_dimension(d)
    check_degree(K)
    return Spectrum(
        values=radial_eigenvalues(v, d, np.arange(K + 1)),
        multiplicities=multiplicities(d, K),
        K=K,
        d=d,
        provenance="exact-radial",
    )


def schatten_radial(
    v: RadialSymbol,
    d: int,
    p: float,
    weak: bool = False,
    k_stop: int | None = None,
    rtol: float = 1e-16,
    max_degree: int = MAX_DEGREE,
) -> float:
    """Schatten (or weak Schatten) norm of T_V from the exact spectrum.

    Without `k_stop` the spectrum is truncated where the tail bound falls below
    rtol * sup |v|; power profiles need an explicit `k_stop`.

    Raises:
        TailNotCertifiedError: if no such truncation exists below `max_degree`
    """
    if v.sup_abs == 0:
        return 0.0
    if k_stop is None:
        k_stop = certified_degree(
            v, d, math.log(rtol) + math.log(v.sup_abs), max_degree
        )
    spectrum = radial_spectrum(v, d, k_stop)
    return spectrum.weak_schatten(p) if weak else spectrum.schatten(p)


class DecayCheck(NamedTuple):
    """Profile of j^alpha s_j over the first j_max singular values."""

    maximum: float
    argmax: int
    log_at_j_max: float


def superpolynomial_decay_check(
    v: RadialSymbol,
    d: int,
    alpha: float,
    k_stop: int | None = None,
    j_max: int = 10**4,
) -> DecayCheck:
    """Supremum over j <= j_max of j^alpha s_j(T_V), evaluated in the log domain."""
    check_dimension(d)
    if alpha <= 0:
        raise ValueError(f"Expected positive alpha; got {alpha}")
    if v.sup_abs == 0:
        return DecayCheck(maximum=0.0, argmax=1, log_at_j_max=-math.inf)

    K = 0
    while cumulative_multiplicity(d, K) < j_max:
        K += 1
    K = max(K, k_stop or 0)
    logs = np.asarray(log_abs_eigenvalues(v, d, np.arange(K + 1)), dtype=float)
    order = np.argsort(-logs, kind="stable")
    log_s = np.repeat(logs[order], multiplicities(d, K)[order].astype(int))[:j_max]
    if log_tail_bound(v, d, K + 1) > log_s[-1]:
        logging.warning(
            "Degrees beyond %d may carry singular values above s_%d", K, j_max
        )

    j = np.arange(1, j_max + 1)
    weighted = alpha * np.log(j) + log_s
    best = int(np.argmax(weighted))
    return DecayCheck(
        maximum=float(np.exp(weighted[best])),
        argmax=best + 1,
        log_at_j_max=float(weighted[-1]),
    )


class SupportBracket(NamedTuple):
    """Step-law coefficients bracketing a compactly supported profile."""

    lower: float
    upper: float
    radius: float


def support_radius(v: RadialSymbol) -> float:
    """Smallest c such that v vanishes on (c, 1).

    Raises:
        ValueError: if the profile does not vanish near r = 1
    """
    match v:
        case Step(b=b, c=c):
            return c if b != 0 else 0.0
        case Sampled(radii=radii, values=values):
            nonzero = np.flatnonzero(np.asarray(values) != 0)
            if nonzero.size == 0:
                return 0.0
            if nonzero[-1] == len(values) - 1:
                raise ValueError("Expected profile vanishing near r = 1")
            return radii[nonzero[-1] + 1]
        case Sum(terms=terms):
            return max(support_radius(term) for term in terms)
        case _:
            raise ValueError(f"Expected compactly supported profile; got {v}")


def support_bracket(v: RadialSymbol, d: int, delta: float) -> SupportBracket:
    """Step-law coefficients for m 1_{B_delta} <= V <= M 1_{B_c}.

    By min-max, |ln lambda|^(1 - d) n_+(lambda; T_V) is asymptotically between
    `lower` and `upper`, and `upper` is the limit for a profile positive on
    every B_delta with delta < c.
    """
    radius = support_radius(v)
    if not 0.0 < delta <= radius < 1.0:
        raise ValueError(
            f"Expected 0 < delta <= support radius {radius}; got {delta}"
        )
    inner = v.profile(np.linspace(0.0, delta, 257))
    if np.min(inner) <= 0:
        raise ValueError(f"Expected profile positive on [0, {delta}]")
    if np.min(v.profile(np.linspace(0.0, radius, 1025))) < 0:
        raise ValueError("Expected nonnegative profile")
    return SupportBracket(
        lower=step_constant(d, delta), upper=step_constant(d, radius), radius=radius
    )
