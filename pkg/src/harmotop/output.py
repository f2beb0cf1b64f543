"""Emission of command results as CSV or JSON."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from harmotop import __version__
from harmotop.commands.registry import CommandResult
from harmotop.config import ExperimentConfig


def _to_builtin(value: Any) -> Any:
    """JSON encoder fallback for numpy scalars and arrays."""
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _format_scalar(value: Any) -> str:
    if isinstance(value, float | np.floating):
        # shortest repr that round-trips the double
        return repr(float(value))
    return str(value)


def write_csv(result: CommandResult, config: ExperimentConfig, stream: TextIO) -> None:
    """Long-format CSV preceded by '#' comments naming every column."""
    stream.write(f"# harmotop {config.command}\n")
    if config.symbol:
        stream.write(f"# symbol: {config.symbol} (d={config.d})\n")
    for column, description in result.columns.items():
        stream.write(f"# {column}: {description}\n")
    for key, value in result.summary.items():
        stream.write(f"# {key} = {_format_scalar(value)}\n")
    result.table.to_csv(stream, index=False)


def write_json(result: CommandResult, config: ExperimentConfig, stream: TextIO) -> None:
    """JSON envelope with the config, the results and their provenance."""
    document = {
        "config": config.to_dict(),
        "results": {
            "summary": result.summary,
            "columns": result.columns,
            "rows": result.table.to_dict(orient="records"),
        },
        "provenance": {"equations": result.equations, "version": __version__},
    }
    json.dump(document, stream, indent=2, default=_to_builtin)
    stream.write("\n")


def write_result(result: CommandResult, config: ExperimentConfig) -> None:
    """Write a result to the configured output (stdout if none)."""
    writer = write_json if config.format == "json" else write_csv
    if config.output is None:
        writer(result, config, sys.stdout)
        return

    out_path = Path(config.output)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w") as f:
        writer(result, config, f)
    logging.info("Wrote %d rows to %s", len(result.table), out_path)
