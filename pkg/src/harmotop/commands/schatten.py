"""Schatten norms of T_V and their bound by the symbol norm under rho_K."""

import pandas as pd

from harmospec.galerkin_toeplitz import schatten_bound_check
from harmospec.radial_toeplitz import schatten_radial
from harmospec.symbols import RadialSymbol
from harmotop.commands.registry import CommandResult, load_symbol, register
from harmotop.config import ExperimentConfig

_NORM = {False: "||T_V||_{S_p}", True: "||T_V||_{S_p,weak}"}


@register("schatten")
def schatten(config: ExperimentConfig) -> CommandResult:
    """Schatten norm: exact spectrum for radial symbols, bound check otherwise.

    Power profiles need --K, the degree where the spectrum is cut.
    """
    symbol = load_symbol(config)
    columns = {"p": "Schatten exponent", "weak": "weak quasinorm"}
    columns["norm"] = _NORM[config.weak]

    if isinstance(symbol, RadialSymbol):
        norm = schatten_radial(
            symbol, config.d, config.p, weak=config.weak, k_stop=config.K
        )
        return CommandResult(
            table=pd.DataFrame([{"p": config.p, "weak": config.weak, "norm": norm}]),
            columns=columns,
            summary={"provenance": "exact-radial"},
            equations=["||T_V||_{S_p}^p = sum_k m_k |mu_k|^p"],
        )

    check = schatten_bound_check(
        symbol, config.d, config.truncation(), config.p, config.weak
    )
    columns["bound"] = (
        "||V||_{L^p_weak(rho_K dx)}" if config.weak else "||V||_{L^p(rho_K dx)}"
    )
    return CommandResult(
        table=pd.DataFrame(
            [
                {
                    "p": config.p,
                    "weak": config.weak,
                    "norm": check.lhs,
                    "bound": check.rhs,
                }
            ]
        ),
        columns=columns,
        summary={"provenance": "galerkin", "bound_holds": check.passed},
        equations=["||P_K T_V P_K||_{S_p} <= ||V||_{L^p(rho_K dx)} for V >= 0"],
        passed=check.passed,
    )
