"""Invariant suites run by `harmotop selftest`.

Each suite checks one closed-form oracle, structural identity or asymptotic
constant and reports the measured value against its limit. Suites and their
parameters are listed in `resources/selftest.yaml`.
"""

import logging
import math
import time
from collections.abc import Callable
from importlib import resources
from pathlib import Path
from typing import Any, NamedTuple, TypeVar

import numpy as np
import yaml  # type:ignore [import-untyped]
from scipy import optimize, special

from harmospec import boundary_reduction as boundary
from harmospec import galerkin_toeplitz as galerkin
from harmospec import krein_counting as krein
from harmospec import radial_toeplitz as radial
from harmospec.grid import TruncationSpec
from harmospec.harmonic_basis import (
    cumulative_multiplicity,
    multiplicities,
    multiplicity,
    multiplicity_asymptotic_check,
)
from harmospec.kernel_berezin import rho_integral
from harmospec.symbols import GeneralSymbol, Power, Sampled, Step, Sum, constant


class SuiteResult(NamedTuple):
    """Outcome of one suite: measured value against its limit."""

    suite: str
    passed: bool
    value: float
    limit: float
    detail: str
    elapsed: float


SuiteFn = Callable[..., tuple[float, float, str]]
T = TypeVar("T", bound=SuiteFn)

suite_registry: dict[str, SuiteFn] = {}


def register(name: str) -> Callable[[T], T]:
    """Register a suite returning (value, limit, detail); passes when value <= limit."""

    def decorator(fn: T) -> T:
        suite_registry[name] = fn
        return fn

    return decorator


def load_suites(path: Path | None = None) -> dict[str, Any]:
    """Load the suite configuration (bundled selftest.yaml by default)."""
    if not path:
        path = Path(resources.files("harmotop").joinpath("resources/selftest.yaml"))  # type: ignore

    with open(path, "r") as fpath:
        contents = yaml.safe_load(fpath)

    return contents


def create_suites(config: dict[str, Any]) -> list[tuple[str, dict[str, Any]]]:
    """Enabled suites with their keyword arguments, in file order."""
    entries = []
    for name, kwargs in (config.get("suites") or {}).items():
        kwargs = dict(kwargs or {})
        if not kwargs.pop("enabled", True):
            continue
        if name not in suite_registry:
            raise KeyError(f"Suite '{name}' not found in registry.")
        entries.append((name, kwargs))
    return entries


def run_suite(entry: tuple[str, dict[str, Any]]) -> SuiteResult:
    """Run one suite; exceptions are reported as failures."""
    name, kwargs = entry
    tic = time.monotonic()
    try:
        value, limit, detail = suite_registry[name](**kwargs)
        passed = bool(value <= limit)
    except Exception as exc:
        logging.warning("Suite %s raised an exception", name, exc_info=exc)
        value, limit, detail, passed = math.nan, math.nan, repr(exc), False
    elapsed = time.monotonic() - tic
    logging.info(
        "Suite %s: %s; elapsed: %.2fs", name, "pass" if passed else "FAIL", elapsed
    )
    return SuiteResult(name, passed, float(value), float(limit), detail, elapsed)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


@register("eigenvalue_oracles")
def eigenvalue_oracles(
    dims: list[int], k_max: int = 30, rtol: float = 1e-10
) -> tuple[float, float, str]:
    """Quadrature eigenvalues against the step and power closed forms."""
    steps = [(1.0, 0.5), (2.0, 0.3), (-1.0, 0.7)]
    powers = [(1.0, 1.0), (2.0, 0.5), (1.0, 2.0)]
    worst = 0.0
    for d in dims:
        for k in range(k_max + 1):
            for b, c in steps:
                exact = radial.mu_k_step(b, c, d, k)
                worst = max(worst, _relative(radial.mu_k(Step(b, c), d, k), exact))
            for a, gamma in powers:
                exact = radial.mu_k_power(a, gamma, d, k)
                worst = max(worst, _relative(radial.mu_k(Power(a, gamma), d, k), exact))
    return worst, rtol, "max relative deviation of mu_k from closed forms"


@register("trace_identity")
def trace_identity(K: int = 40, atol: float = 1e-6) -> tuple[float, float, str]:
    """Trace of 1_[0, 1/2] in d = 2 against 5/12 and the rho integral."""
    v = Step(1.0, 0.5)
    trace = radial.radial_spectrum(v, 2, K).trace()
    rho = rho_integral(v, 2, K)
    section = galerkin.spectrum(v, 2, TruncationSpec.default(K)).trace()
    deviation = max(abs(trace - 5.0 / 12.0), abs(trace - rho), abs(section - trace))
    return deviation, atol, f"Tr T_V = {trace:.12f}, section trace = {section:.12f}"


@register("step_asymptotics")
def step_asymptotics(
    dims: list[int],
    radii: list[float],
    ln_lo: float = -60.0,
    ln_hi: float = -10.0,
    points: int = 200,
    rtol: float = 0.02,
) -> tuple[float, float, str]:
    """Fitted |ln lambda|^(d - 1) coefficient of step symbols."""
    grid = np.linspace(ln_lo, ln_hi, points)
    worst, details = 0.0, []
    for d in dims:
        for c in radii:
            fit = radial.asymptotic_fit(Step(1.0, c), d, grid, model="log-power")
            error = _relative(fit.coefficient, radial.step_constant(d, c))
            worst = max(worst, error)
            details.append(f"d={d},c={c}:{error:.2e}")
    return worst, rtol, " ".join(details)


def power_window(
    gamma: float, lambda_lo: float, lambda_hi: float, max_degrees: float
) -> tuple[float, float]:
    """Range of ln(lambda) for a power-law fit with degree counts below max_degrees.

    The number of degrees above lambda grows like lambda^(-1 / gamma), so the
    lower end is raised to max_degrees^(-gamma) for small gamma. The window is
    then widened upward to keep 6 decades.
    """
    ln_lo = max(math.log(lambda_lo), -gamma * math.log(max_degrees))
    ln_hi = max(math.log(lambda_hi), ln_lo + 6.0 * math.log(10.0))
    return ln_lo, ln_hi


@register("power_asymptotics")
def power_asymptotics(
    dims: list[int],
    gammas: list[float],
    lambda_lo: float = 1e-12,
    lambda_hi: float = 1e-5,
    max_degrees: float = 1e16,
    points: int = 30,
    rtol: float = 0.01,
) -> tuple[float, float, str]:
    """Fitted lambda^(-(d - 1) / gamma) coefficient of power symbols."""
    worst, details = 0.0, []
    for gamma in gammas:
        ln_lo, ln_hi = power_window(gamma, lambda_lo, lambda_hi, max_degrees)
        grid = np.linspace(ln_lo, ln_hi, points)
        for d in dims:
            fit = radial.asymptotic_fit(Power(1.0, gamma), d, grid, model="power")
            error = _relative(fit.coefficient, radial.power_constant(d, gamma, 1.0))
            worst = max(worst, error)
            details.append(f"d={d},gamma={gamma}:{error:.2e}")
    return worst, rtol, " ".join(details)


@register("constant_consistency")
def constant_consistency(
    dims: list[int], gammas: list[float], rtol: float = 1e-12
) -> tuple[float, float, str]:
    """Boundary-integral and closed forms of the power-law constant agree."""
    worst = max(
        _relative(
            radial.boundary_trace_constant(d, gamma, a),
            radial.power_constant(d, gamma, a),
        )
        for d in dims
        for gamma in gammas
        for a in (0.5, 1.0, 3.0)
    )
    return worst, rtol, "max relative difference of the two constants"


def _affine(points: np.ndarray) -> np.ndarray:
    return 1.0 + points[:, 0]


def _quadratic(points: np.ndarray) -> np.ndarray:
    return points[:, 0] * points[:, 1] + points[:, -1] ** 2


def _half_ball(points: np.ndarray) -> np.ndarray:
    return (points[:, 0] > 0).astype(float)


def _wave(points: np.ndarray) -> np.ndarray:
    return np.cos(3.0 * points[:, 0]) * np.exp(points[:, 1])


def _sharp(points: np.ndarray) -> np.ndarray:
    return (1.0 - np.sum(points**2, axis=1)) * (points[:, 0] - points[:, 1])


@register("unitary_equivalence")
def unitary_equivalence(
    K2: int = 12, K3: int = 8, atol: float = 1e-10
) -> tuple[float, float, str]:
    """Boundary-reduced operator equals the finite section entrywise."""
    cases = [(2, K2, f) for f in (_affine, _quadratic, _half_ball, _wave, _sharp)]
    cases += [(3, K3, f) for f in (_affine, _wave)]
    worst = 0.0
    for d, K, func in cases:
        spec = TruncationSpec.default(K)
        V = GeneralSymbol(func, d, name=func.__name__)
        reduced = boundary.reduced_operator(V, d, spec).to_dense()
        section = galerkin.assemble(V, d, spec)
        worst = max(worst, float(np.max(np.abs(reduced - section))))
    return worst, atol, f"{len(cases)} symbols"


@register("symbol_order")
def symbol_order(
    dims: list[int], k_max: int = 10**4, atol: float = 1e-3
) -> tuple[float, float, str]:
    """Checks that k^gamma mu_k tends to 2^-gamma Gamma(gamma + 1) a."""
    cases = [(1.0, 1.0), (2.0, 1.0), (0.5, 3.0)]
    worst = max(
        boundary.symbol_order_check(gamma, a, d, k_max).error
        for d in dims
        for gamma, a in cases
    )
    return worst, atol, "max extrapolation error"


@register("schatten_bounds")
def schatten_bounds(
    K: int = 12, strong: list[float] | None = None, weak: list[float] | None = None
) -> tuple[float, float, str]:
    """Section norms against the rho-weighted norms of nonnegative symbols.

    Returns the largest lhs / rhs - 1 for p > 1 and the trace defect for p = 1.
    """
    strong = strong or [1.0, 2.0, 3.0]
    weak = weak or [1.5, 2.0]
    spec = TruncationSpec.default(K)
    symbols = [
        constant(1.0),
        Step(1.0, 0.5),
        Step(2.0, 0.3),
        GeneralSymbol(_half_ball, 2, name="half-disk"),
    ]
    worst = -math.inf
    for V in symbols:
        for p in strong:
            check = galerkin.schatten_bound_check(V, 2, spec, p)
            if p == 1:
                worst = max(worst, abs(check.lhs - check.rhs) / check.rhs - 1e-8)
            else:
                worst = max(worst, check.lhs / check.rhs - 1.0)
        for p in weak:
            check = galerkin.schatten_bound_check(V, 2, spec, p, weak=True)
            worst = max(worst, check.lhs / check.rhs - 1.0)
    return worst, 1e-9, "max relative excess of section norms"


@register("superpolynomial_decay")
def superpolynomial_decay(
    alpha: float = 5.0, j_max: int = 10**4, argmax_limit: int = 50
) -> tuple[float, float, str]:
    """Checks that j^alpha s_j of 1_[0, 1/2] peaks early and is negligible at j_max."""
    check = radial.superpolynomial_decay_check(Step(1.0, 0.5), 2, alpha, j_max=j_max)
    # Both conditions must hold; the tail is measured in units of 1e-100
    tail = check.log_at_j_max / (100 * math.log(10)) + 2
    value = max(check.argmax / argmax_limit, tail)
    return value, 1.0, (
        f"argmax j = {check.argmax}, ln at j_max = {check.log_at_j_max:.1f}"
    )


@register("compact_support")
def compact_support(
    dims: list[int], ln_lambda: float = -80.0, rtol: float = 0.1
) -> tuple[float, float, str]:
    """Compactly supported profiles follow the step law of their support radius."""
    v = Sampled((0.0, 0.49, 0.5, 0.9), (1.0, 1.0, 0.0, 0.0))
    worst, details = 0.0, []
    for d in dims:
        count = radial.log_counting(v, d, ln_lambda)
        estimate = count / abs(ln_lambda) ** (d - 1)
        error = _relative(estimate, radial.step_constant(d, 0.5))
        worst = max(worst, error)
        details.append(f"d={d}:{error:.2e}")
    return worst, rtol, " ".join(details)


@register("bump_invariance")
def bump_invariance(
    dims: list[int],
    lambda_lo: float = 1e-5,
    lambda_hi: float = 1e-2,
    points: int = 20,
    rtol: float = 0.02,
) -> tuple[float, float, str]:
    """A compactly supported bump leaves the power-law coefficient unchanged."""
    grid = np.linspace(math.log(lambda_lo), math.log(lambda_hi), points)
    worst, details = 0.0, []
    for d in dims:
        for b in (0.5, -0.5):
            v = Sum((Power(1.0, 1.0), Step(b, 0.5)))
            fit = radial.asymptotic_fit(v, d, grid, model="power", gamma=1.0)
            error = _relative(fit.coefficient, radial.power_constant(d, 1.0, 1.0))
            worst = max(worst, error)
            details.append(f"d={d},b={b}:{error:.2e}")
    return worst, rtol, " ".join(details)


@register("weyl_inequalities")
def weyl_inequalities(
    pairs: int = 100, size: int = 30, n_s: int = 10, seed: int = 0
) -> tuple[float, float, str]:
    """Weyl inequalities for counting functions of random symmetric pairs."""
    report = galerkin.weyl_suite(pairs=pairs, size=size, n_s=n_s, seed=seed)
    return float(report.violations), 0.0, f"{report.checked} comparisons"


def _tilted(points: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + points[:, 0])


@register("essential_spectrum")
def essential_spectrum(
    K: int = 40,
    targets: list[float] | None = None,
    gap: float = 0.02,
    k_boundary: int = 1000,
) -> tuple[float, float, str]:
    """Section eigenvalues fill the boundary range of the symbol.

    Returns the largest target gap relative to `gap`, combined with the
    distance of mu_k from the boundary value 0.3 relative to 1e-3.
    """
    targets = targets or [0.1, 0.3, 0.5, 0.7, 0.9]
    section = galerkin.spectrum(
        GeneralSymbol(_tilted, 2, name="tilted"), 2, TruncationSpec.default(K)
    )
    l_values = np.array([entry.value for entry in krein.buckling_disk(20)])
    block = galerkin.block_model_spectrum(section.values, l_values, (0.0, 1.0))
    gaps = galerkin.nearest_gaps(block, targets)

    v = Sampled((0.0, 0.5, 0.9), (1.0, 0.5, 0.3))
    boundary_error = abs(float(radial.radial_eigenvalues(v, 2, [k_boundary])[0]) - 0.3)
    value = max(float(gaps.max()) / gap, boundary_error / 1e-3)
    return value, 1.0, f"max gap {gaps.max():.4f}, |mu_k - v(1)| = {boundary_error:.2e}"


@register("krein_sandwich")
def krein_sandwich(
    grid: int = 20, rtol: float = 0.15, d: int = 2, gamma: float = 1.0
) -> tuple[float, float, str]:
    """Sandwich intervals are well formed and their excess has the optimal order."""
    v = Power(1.0, gamma)
    lambda1 = krein.buckling_disk(1)[0].value

    def n_plus(s: float) -> int:
        return radial.counting(v, d, s)

    def remainder(eps: float) -> int:
        return krein.remainder_model(eps, v.sup_abs, lambda1, d)

    for lam in np.geomspace(1e-6, 1e-2, grid):
        for eps in np.linspace(0.01, 0.99, grid):
            inp = krein.SandwichInput(float(lam), float(eps), n_plus, remainder)
            # BoundInterval rejects lower > upper
            krein.sandwich_minus(inp)
            krein.sandwich_plus(inp)

    lam = 1.234e-4
    collapsed = krein.sandwich_minus(krein.SandwichInput(lam, 1e-9, n_plus))
    if collapsed.upper != n_plus(lam * (1.0 - 1e-9)) or collapsed.lower != n_plus(lam):
        return math.inf, rtol, "zero-remainder sandwich does not collapse"

    check = krein.remainder_exponent_check(d, gamma)
    error = _relative(check.slope, check.expected)
    return error, rtol, f"slope {check.slope:.4f}, expected {check.expected:.4f}"


@register("buckling_weyl")
def buckling_weyl(
    rtol: float = 0.1, exponent_tol: float = 0.05
) -> tuple[float, float, str]:
    """First buckling value against an independent root, and its Weyl law."""
    root = optimize.brentq(special.j1, 3.0, 4.5, xtol=1e-14)
    first_error = abs(krein.buckling_disk(1)[0].value - root**2)

    fit = krein.weyl_L_check()
    ratio = krein.buckling_count(1e4) / 1e4
    value = max(
        first_error / 1e-6,
        abs(fit.exponent - 1.0) / exponent_tol,
        _relative(fit.coefficient, 0.25) / rtol,
        _relative(ratio, 0.25) / rtol,
    )
    return value, 1.0, (
        f"j_11^2 error {first_error:.1e}, exponent {fit.exponent:.4f}, "
        f"coefficient {fit.coefficient:.4f}, N(1e4)/1e4 = {ratio:.4f}"
    )


@register("multiplicities")
def multiplicities_check(
    max_dim: int = 6, k_max: int = 200
) -> tuple[float, float, str]:
    """Integer identities of the harmonic dimensions and their growth."""
    mismatches = 0
    for d in range(2, max_dim + 1):
        values = [multiplicity(d, k) for k in range(k_max + 1)]
        array = [int(m) for m in multiplicities(d, k_max)]
        mismatches += sum(a != b for a, b in zip(values, array))
        partial = 0
        for k, m in enumerate(values):
            partial += m
            mismatches += partial != cumulative_multiplicity(d, k)
            mismatches += partial != math.comb(k + d, d) - math.comb(k + d - 2, d)
    growth = max(
        multiplicity_asymptotic_check(d, 2 * k_max)
        / multiplicity_asymptotic_check(d, k_max)
        for d in range(3, max_dim + 1)
    )
    # Bounded deviations keep the ratio near 1
    return max(float(mismatches), growth - 1.1), 0.0, f"{mismatches} mismatches"
