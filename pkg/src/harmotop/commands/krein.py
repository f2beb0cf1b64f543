"""Counting bounds for K +- V near the kernel of the Krein Laplacian."""

import logging
import math
from functools import partial
from typing import Any

import pandas as pd

from harmospec.krein_counting import (
    SandwichInput,
    buckling_disk,
    counting_envelope,
    envelope_kappa,
    optimal_eps_exponent,
    remainder_model,
    sandwich_minus,
    sandwich_plus,
    weyl_L_check,
)
from harmospec.radial_toeplitz import counting as radial_counting
from harmospec.symbols import Power, RadialSymbol
from harmotop.commands.registry import (
    CommandResult,
    load_radial_symbol,
    register,
    require_thresholds,
)
from harmotop.config import ConfigError, ExperimentConfig
from harmotop.runner import parallel_map

# exp(-700) is still a normal double
MIN_LN_LAMBDA = -700.0


def krein_row(
    symbol: RadialSymbol, d: int, eps: float, lambda1: float, lam: float
) -> dict[str, Any]:
    """Sandwich bounds for both perturbation signs at one threshold."""
    inp = SandwichInput(
        lam=lam,
        eps=eps,
        n_plus=partial(radial_counting, symbol, d),
        remainder=partial(
            remainder_model, v_sup=symbol.sup_abs, lambda1=lambda1, d=d
        ),
    )
    minus, plus = sandwich_minus(inp), sandwich_plus(inp)
    row: dict[str, Any] = {
        "lambda": lam,
        "n_plus": radial_counting(symbol, d, lam),
        "minus_lower": minus.lower,
        "minus_upper": minus.upper,
        "plus_lower": plus.lower,
        "plus_upper": plus.upper,
    }
    if isinstance(symbol, Power):
        row["main"] = counting_envelope(d, symbol.gamma, symbol.a, lam).main
    return row


@register("krein")
def krein(config: ExperimentConfig) -> CommandResult:
    """Sandwich bounds on the threshold grid; buckling Weyl fit on --E."""
    symbol = load_radial_symbol(config)
    if symbol.sup_abs == 0:
        raise ConfigError("Expected a nonzero symbol for the Krein sandwich")
    name, values = require_thresholds(config)
    if name == "ln_lambda":
        if min(values) < MIN_LN_LAMBDA:
            raise ConfigError(
                f"Expected ln(lambda) >= {MIN_LN_LAMBDA} for the Krein sandwich; "
                f"got {min(values)}"
            )
        values = [math.exp(x) for x in values]

    lambda1 = config.lambda1 or buckling_disk(1)[0].value
    if any(lam >= lambda1 for lam in values):
        logging.warning(
            "Thresholds at or above lambda_1 = %g; the K + V bounds assume lambda "
            "below it",
            lambda1,
        )
    rows = parallel_map(
        partial(krein_row, symbol, config.d, config.eps, lambda1),
        values,
        config.threads,
    )

    columns = {
        "lambda": "threshold",
        "n_plus": "n_+(lambda; T_V)",
        "minus_lower": "lower bound for #{K - V eigenvalues < -lambda}: n_+(lambda)",
        "minus_upper": "upper bound: n_+((1 - eps) lambda) + remainder(eps)",
        "plus_lower": "lower bound for #{K + V eigenvalues in (0, lambda)}: "
        "n_+((1 + eps) lambda) - remainder(eps)",
        "plus_upper": "upper bound: n_+(lambda)",
    }
    summary: dict[str, Any] = {
        "eps": config.eps,
        "lambda1": lambda1,
        "remainder": remainder_model(config.eps, symbol.sup_abs, lambda1, config.d),
        "kappa": envelope_kappa(config.d),
    }
    equations = [
        "n_+(lambda) <= N_-(lambda) <= n_+((1 - eps) lambda) + "
        "Tr 1_(-inf, lambda_1 + sup V / eps)(L)",
    ]
    if isinstance(symbol, Power):
        columns["main"] = "C lambda^(-(d - 1) / gamma), C from the boundary trace"
        summary["optimal_eps_exponent"] = optimal_eps_exponent(
            config.d, symbol.gamma
        )
        equations.append(
            "C = omega_{d-1} (Gamma(gamma+1)^(1/gamma) / 4pi)^(d-1) "
            "a^((d-1)/gamma) |S^{d-1}|"
        )
    if config.energies is not None:
        fit = weyl_L_check(config.energies)
        summary |= {
            "weyl_exponent": fit.exponent,
            "weyl_coefficient": fit.coefficient,
            "weyl_boundary_term": fit.boundary_term,
        }
        equations.append("N_L(E) ~ |Omega| E / (4 pi) for the disk buckling problem")

    return CommandResult(
        table=pd.DataFrame(rows),
        columns=columns,
        summary=summary,
        equations=equations,
    )
