"""Reproducing-kernel density and Berezin transform along the first axis."""

from functools import partial

import numpy as np
import pandas as pd

from harmospec.grid import TruncationSpec
from harmospec.kernel_berezin import (
    berezin_transform,
    density_rho,
    rho_integral,
    suggest_truncation,
)
from harmospec.symbols import RadialSymbol, Symbol
from harmotop.commands.registry import CommandResult, load_symbol, register
from harmotop.config import ExperimentConfig
from harmotop.runner import parallel_map

DEFAULT_RADII = (0.0, 0.25, 0.5, 0.75, 0.9)


def berezin_row(
    symbol: Symbol, d: int, spec: TruncationSpec, radius: float
) -> dict[str, float]:
    """Kernel density, Berezin transform and symbol value at radius * e_1."""
    point = np.zeros(d)
    point[0] = radius
    rho = density_rho(point, spec.K)
    return {
        "radius": radius,
        "rho_K": rho,
        "rho_K_scaled": rho * (1.0 - radius) ** d,
        "berezin": berezin_transform(symbol, point, spec.K, spec),
        "V": float(symbol(point.reshape(1, d))[0]),
    }


@register("berezin")
def berezin(config: ExperimentConfig) -> CommandResult:
    """Berezin transform of V and the kernel density on sample radii."""
    symbol = load_symbol(config)
    radii = config.radii or DEFAULT_RADII
    if config.K is None and isinstance(symbol, RadialSymbol):
        spec = TruncationSpec.default(
            suggest_truncation(max(radii)), config.n_r, config.n_ang
        )
    else:
        spec = config.truncation()

    rows = parallel_map(
        partial(berezin_row, symbol, config.d, spec), radii, config.threads
    )
    return CommandResult(
        table=pd.DataFrame(rows),
        columns={
            "radius": "sample point r e_1",
            "rho_K": "rho_K(x) = R_K(x, x)",
            "rho_K_scaled": "rho_K(x) (1 - |x|)^d, bounded as |x| -> 1",
            "berezin": "rho_K(x)^-1 int R_K(x, y)^2 V(y) dy",
            "V": "symbol value V(x)",
        },
        summary={
            "K": spec.K,
            "trace": rho_integral(symbol, config.d, spec.K, spec),
        },
        equations=[
            "R_K(x, y) = sum_{k <= K} (2k + d) |x|^k |y|^k Z_k(x/|x| . y/|y|)",
            "Tr P_K T_V P_K = int V rho_K dx",
        ],
    )
