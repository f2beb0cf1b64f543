"""Fit of the radial counting function against its growth law."""

from functools import partial

import numpy as np
import pandas as pd

from harmospec.radial_toeplitz import (
    asymptotic_fit,
    decay_exponent,
    power_constant,
    step_constant,
    support_radius,
)
from harmospec.symbols import Power, RadialSymbol, Sampled, Step, Sum
from harmotop.commands.counting import count_column, radial_counts
from harmotop.commands.registry import (
    CommandResult,
    load_radial_symbol,
    register,
    require_thresholds,
)
from harmotop.config import ExperimentConfig
from harmotop.runner import parallel_chunks


def reference_constant(symbol: RadialSymbol, d: int, model: str) -> float | None:
    """Leading coefficient predicted for the symbol, where a closed form exists.

    Power terms dominate the power law; compactly supported terms only shift
    the degree count.
    """
    match symbol, model:
        case Step(b=b, c=c), "log-power" if b > 0:
            return step_constant(d, c)
        case Sampled(values=values), "log-power" if values[-1] == 0 <= min(values):
            radius = support_radius(symbol)
            return step_constant(d, radius) if 0 < radius < 1 else None
        case Power(a=a, gamma=gamma), "power":
            return power_constant(d, gamma, a)
        case Sum(terms=terms), "power":
            powers = [term for term in terms if isinstance(term, Power)]
            gamma = decay_exponent(symbol)
            leading = [term for term in powers if term.gamma == gamma]
            if len(leading) != 1:
                return None
            return power_constant(d, leading[0].gamma, leading[0].a)
        case _:
            return None


@register("asymptotics")
def asymptotics(config: ExperimentConfig) -> CommandResult:
    """Counts on the threshold grid and their least-squares fit."""
    symbol = load_radial_symbol(config)
    name, values = require_thresholds(config)
    ln_lambdas = np.log(values) if name == "lambda" else np.asarray(values)
    rows = parallel_chunks(
        partial(radial_counts, symbol, config.d, config.sign),
        ln_lambdas,
        config.threads,
    )
    counts = [n for n, _ in rows]
    fit = asymptotic_fit(
        symbol, config.d, ln_lambdas, config.model, sign=config.sign, counts=counts
    )

    column = count_column(config.sign)
    if config.model == "power":
        x = np.exp(-ln_lambdas / fit.gamma)
        x_description = "lambda^(-1 / gamma)"
    else:
        x = np.abs(ln_lambdas)
        x_description = "|ln lambda|"
    predicted = (fit.intercept + fit.coefficient ** (1.0 / (config.d - 1)) * x) ** (
        config.d - 1
    )
    table = pd.DataFrame(
        {name: values, column: counts, "x": x, "fitted": predicted}
    )

    summary = {
        "model": fit.model,
        "coefficient": fit.coefficient,
        "exponent": fit.exponent,
        "intercept": fit.intercept,
        "residual": fit.residual,
        "gamma": fit.gamma,
    }
    reference = reference_constant(symbol, config.d, config.model)
    if reference is not None and config.sign == 1:
        summary["reference_coefficient"] = reference
        summary["relative_error"] = abs(fit.coefficient - reference) / reference
    return CommandResult(
        table=table,
        columns={
            name: "threshold" if name == "lambda" else "natural log of the threshold",
            column: "counting function with multiplicity",
            "x": x_description,
            "fitted": "(intercept + C^(1 / (d - 1)) x)^(d - 1), n ~ C x^(d - 1)",
        },
        summary=summary,
        equations=[
            "n(lambda) ~ 2^(2-d) / (d-1)! |ln c|^-(d-1) |ln lambda|^(d-1) "
            "for b 1_[0,c]",
            "n(lambda) ~ 2^(2-d) / (d-1)! (a Gamma(gamma+1) / lambda)^((d-1)/gamma) "
            "for a (1-r)^gamma",
        ],
    )
