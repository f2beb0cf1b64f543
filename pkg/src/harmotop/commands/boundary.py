"""Reduction of T_V to an operator on boundary harmonics."""

import logging

import numpy as np
import pandas as pd

from harmospec import galerkin_toeplitz as galerkin
from harmospec.boundary_reduction import reduced_operator, symbol_order_check
from harmospec.io import save_matrix
from harmospec.numerics import symmetric_eigen
from harmospec.symbols import Power
from harmotop.commands.registry import CommandResult, load_symbol, register
from harmotop.config import ExperimentConfig

# Degree at which k^gamma mu_k is extrapolated for power profiles
ORDER_CHECK_DEGREE = 10_000


@register("boundary")
def boundary(config: ExperimentConfig) -> CommandResult:
    """Spectrum of J^(-1/2) J_V J^(-1/2) and its deviation from the section."""
    symbol = load_symbol(config)
    spec = config.truncation()
    reduced = reduced_operator(symbol, config.d, spec).to_dense()
    section = galerkin.assemble(symbol, config.d, spec)
    deviation = float(np.max(np.abs(reduced - section)))
    logging.info("Boundary reduction deviates from the section by %.3g", deviation)

    if config.matrix is not None:
        save_matrix(config.matrix, reduced, config.d, spec.K)
        logging.info("Wrote reduced matrix to %s", config.matrix)

    eigenvalues = symmetric_eigen(reduced)
    eigenvalues = eigenvalues[np.argsort(-np.abs(eigenvalues), kind="stable")]
    summary: dict[str, float | int | bool] = {
        "K": spec.K,
        "max_deviation": deviation,
    }
    equations = [
        "J = G*G acts on degree-k boundary harmonics as 1 / (2k + d)",
        "T_V is unitarily equivalent to J^(-1/2) G*VG J^(-1/2)",
    ]
    if isinstance(symbol, Power):
        check = symbol_order_check(
            symbol.gamma, symbol.a, config.d, ORDER_CHECK_DEGREE
        )
        summary |= {
            "symbol_order_estimate": check.estimate,
            "symbol_order_expected": check.expected,
            "symbol_order_error": check.error,
        }
        equations.append("k^gamma mu_k -> 2^-gamma Gamma(gamma + 1) a")

    return CommandResult(
        table=pd.DataFrame(
            {"index": np.arange(1, len(eigenvalues) + 1), "eigenvalue": eigenvalues}
        ),
        columns={
            "index": "position in decreasing absolute value",
            "eigenvalue": "eigenvalue of the reduced boundary operator",
        },
        summary=summary,
        equations=equations,
    )
