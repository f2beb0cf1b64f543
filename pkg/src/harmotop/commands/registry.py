"""Registry of harmotop commands and their shared result type."""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, TypeVar

import pandas as pd

from harmospec.symbols import RadialSymbol, Symbol
from harmotop.config import ConfigError, ExperimentConfig
from harmotop.descriptors import parse_symbol


@dataclass
class CommandResult:
    """Table produced by a command.

    Attributes:
        table: long-format rows, one column per quantity
        columns: description of each column, written as CSV header comments
        summary: scalar results (fits, deviations, pass flags)
        equations: formulas realized by the columns
        passed: False if a check performed by the command failed
    """

    table: pd.DataFrame
    columns: dict[str, str]
    summary: dict[str, Any] = field(default_factory=dict)
    equations: list[str] = field(default_factory=list)
    passed: bool = True


CommandFn = Callable[[ExperimentConfig], CommandResult]
T = TypeVar("T", bound=CommandFn)

command_registry: dict[str, CommandFn] = {}


def register(name: str) -> Callable[[T], T]:
    """Register a command to be callable from the CLI."""

    def decorator(fn: T) -> T:
        command_registry[name] = fn
        return fn

    return decorator


def run_command(config: ExperimentConfig) -> CommandResult:
    """Run the registered command named by the configuration."""
    try:
        command = command_registry[config.command]
    except KeyError:
        raise KeyError(f"Command '{config.command}' not found in registry.")
    return command(config)


def load_symbol(config: ExperimentConfig) -> Symbol:
    """Symbol of the experiment, parsed from its descriptor."""
    if config.symbol is None:
        raise ConfigError(f"Expected a symbol descriptor for '{config.command}'")
    return parse_symbol(config.symbol, d=config.d)


def load_radial_symbol(config: ExperimentConfig) -> RadialSymbol:
    """Radial symbol of the experiment; other symbols are a configuration error."""
    symbol = load_symbol(config)
    if not isinstance(symbol, RadialSymbol):
        raise ConfigError(f"Command '{config.command}' expects a radial symbol")
    return symbol


def require_thresholds(config: ExperimentConfig) -> tuple[str, list[float]]:
    """Threshold column name and values: lambda if given explicitly, else ln(lambda).

    The ln(lambda) values are used as given so deep thresholds never underflow.
    """
    if config.lambdas is not None:
        return "lambda", list(config.lambdas)
    if config.ln_lambdas is not None:
        return "ln_lambda", list(config.ln_lambdas)
    raise ConfigError(f"Expected --lambda or --lnlambda for '{config.command}'")
