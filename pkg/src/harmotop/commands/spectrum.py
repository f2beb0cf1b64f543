"""Eigenvalues of T_V: exact per degree for radial symbols, Galerkin otherwise."""

import logging

import numpy as np
import pandas as pd

from harmospec import galerkin_toeplitz as galerkin
from harmospec.harmonic_basis import multiplicities
from harmospec.io import save_matrix
from harmospec.radial_toeplitz import radial_eigenvalues
from harmospec.symbols import RadialSymbol
from harmotop.commands.registry import CommandResult, load_symbol, register
from harmotop.config import ExperimentConfig


@register("spectrum")
def spectrum(config: ExperimentConfig) -> CommandResult:
    """Spectrum of T_V on harmonics of degree <= K."""
    symbol = load_symbol(config)
    spec = config.truncation()

    if config.matrix is not None:
        section = galerkin.assemble(symbol, config.d, spec)
        save_matrix(config.matrix, section, config.d, spec.K)
        logging.info("Wrote section matrix to %s", config.matrix)

    if isinstance(symbol, RadialSymbol):
        degrees = np.arange(spec.K + 1)
        mu = radial_eigenvalues(symbol, config.d, degrees)
        mult = multiplicities(config.d, spec.K)
        table = pd.DataFrame(
            {"degree": degrees, "eigenvalue": mu, "multiplicity": mult}
        )
        return CommandResult(
            table=table,
            columns={
                "degree": "degree k of the harmonic eigenspace",
                "eigenvalue": "mu_k = (2k + d) int_0^1 v(r) r^(2k + d - 1) dr",
                "multiplicity": "m_k, dimension of the degree-k harmonics",
            },
            summary={
                "provenance": "exact-radial",
                "trace": float(np.dot(mult, mu)),
                "total": int(mult.sum()),
            },
            equations=["T_V psi = mu_k psi on degree-k harmonics"],
        )

    section = galerkin.spectrum(symbol, config.d, spec)
    table = pd.DataFrame(
        {"index": np.arange(1, section.total + 1), "eigenvalue": section.values}
    )
    return CommandResult(
        table=table,
        columns={
            "index": "position in decreasing absolute value",
            "eigenvalue": "eigenvalue of the finite section P_K T_V P_K",
        },
        summary={
            "provenance": "galerkin",
            "trace": section.trace(),
            "total": section.total,
        },
        equations=["(P_K T_V P_K)_{ij} = int V psi_i psi_j dx"],
    )
