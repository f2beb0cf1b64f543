"""Counting functions n_+(lambda) and n_-(lambda) over threshold grids."""

import logging
import math
from functools import partial

import numpy as np
import pandas as pd

from harmospec import galerkin_toeplitz as galerkin
from harmospec.radial_toeplitz import counting_curve, log_nu_count
from harmospec.symbols import RadialSymbol
from harmotop.commands.registry import (
    CommandResult,
    load_symbol,
    register,
    require_thresholds,
)
from harmotop.config import ExperimentConfig
from harmotop.runner import parallel_chunks


def count_column(sign: int) -> str:
    """Name of the count column for a sign."""
    return "n_plus" if sign == 1 else "n_minus"


def radial_counts(
    symbol: RadialSymbol, d: int, sign: int, ln_lambdas: np.ndarray
) -> list[tuple[int, int]]:
    """(n, nu) at each ln(lambda): eigenvalue count with multiplicity and degrees."""
    counts = counting_curve(symbol, d, ln_lambdas, sign)
    return [
        (n, log_nu_count(symbol, d, float(x), sign))
        for n, x in zip(counts, ln_lambdas)
    ]


@register("counting")
def counting(config: ExperimentConfig) -> CommandResult:
    """Counting function on the configured thresholds.

    Radial symbols are counted exactly in the log domain. Other symbols are
    counted on the finite section, a lower bound for nonnegative symbols.
    """
    symbol = load_symbol(config)
    name, values = require_thresholds(config)
    ln_lambdas = np.log(values) if name == "lambda" else np.asarray(values)
    column = count_column(config.sign)
    relation = ">" if config.sign == 1 else "<"
    bound = "lambda" if config.sign == 1 else "-lambda"
    columns = {
        name: "threshold" if name == "lambda" else "natural log of the threshold",
        column: f"number of eigenvalues e {relation} {bound}, with multiplicity",
    }

    if isinstance(symbol, RadialSymbol):
        rows = parallel_chunks(
            partial(radial_counts, symbol, config.d, config.sign),
            ln_lambdas,
            config.threads,
        )
        table = pd.DataFrame(
            {
                name: values,
                column: [n for n, _ in rows],
                "nu": [nu for _, nu in rows],
            }
        )
        columns[column] += "; n = sum of m_k over degrees k with e = mu_k"
        columns["nu"] = f"number of degrees k with mu_k {relation} {bound}"
        return CommandResult(
            table=table,
            columns=columns,
            summary={"provenance": "exact-radial"},
            equations=[
                "n_sign(lambda) = sum_k m_k [sign mu_k > lambda]",
                "nu_sign(lambda) = #{k : sign mu_k > lambda}",
            ],
        )

    section = galerkin.spectrum(symbol, config.d, config.truncation())
    if np.any(ln_lambdas < math.log(np.finfo(float).tiny)):
        logging.warning(
            "Thresholds below the smallest normal double count every eigenvalue "
            "of sign %+d in the section",
            config.sign,
        )
    counts = [
        galerkin.counting_galerkin(section, math.exp(x), config.sign)
        for x in ln_lambdas
    ]
    columns[column] += f"; finite section of degree {section.K}"
    return CommandResult(
        table=pd.DataFrame({name: values, column: counts}),
        columns=columns,
        summary={"provenance": "galerkin", "lower_bound": True, "K": section.K},
        equations=["n_sign(lambda; P_K T_V P_K) <= n_sign(lambda; T_V) for V >= 0"],
    )
