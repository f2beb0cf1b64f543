"""Command line interface (CLI) utilities."""

import sys
from argparse import (
    ArgumentParser,
    ArgumentTypeError,
    Namespace,
    RawDescriptionHelpFormatter,
)
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from harmotop.config import COMMANDS, ConfigError, ExperimentConfig

# Options whose values may start with '-', which argparse reads as a flag
_GRID_FLAGS = {"--lnlambda", "--E"}


def _split_grid(spec: str, need_count: bool) -> tuple[float, float, int]:
    parts = spec.split(":")
    if len(parts) not in ((3,) if need_count else (2, 3)):
        form = "LO:HI:N" if need_count else "LO:HI[:N]"
        raise ArgumentTypeError(f"expected {form}; got '{spec}'")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2]) if len(parts) == 3 else 50
    except ValueError:
        raise ArgumentTypeError(f"expected numbers in '{spec}'") from None
    if count < 1 or (count > 1 and lo == hi):
        raise ArgumentTypeError(f"expected a nondegenerate grid; got '{spec}'")
    return lo, hi, count


def ln_grid(spec: str) -> tuple[float, ...]:
    """`LO:HI[:N]` as N equispaced values of ln(lambda) (default N = 50)."""
    lo, hi, count = _split_grid(spec, need_count=False)
    return tuple(float(x) for x in np.linspace(lo, hi, count))


def energy_grid(spec: str) -> tuple[float, ...]:
    """`LO:HI:N` as N log-spaced positive energies."""
    lo, hi, count = _split_grid(spec, need_count=True)
    if lo <= 0 or hi <= 0:
        raise ArgumentTypeError(f"expected positive energies; got '{spec}'")
    return tuple(float(x) for x in np.geomspace(lo, hi, count))


def float_list(spec: str) -> tuple[float, ...]:
    """Comma-separated floats."""
    try:
        return tuple(float(x) for x in spec.split(","))
    except ValueError:
        raise ArgumentTypeError(
            f"expected comma-separated numbers; got '{spec}'"
        ) from None


class HarmotopArgumentParser:
    """Harmotop CLI parser."""

    def __init__(self) -> None:
        self.parser = ArgumentParser(
            prog="harmotop",
            usage="%(prog)s command [options]",
            formatter_class=RawDescriptionHelpFormatter,
            description="""
Harmotop computes spectra, counting functions and norms of Toeplitz
operators T_V acting on harmonic functions of the unit ball.

The different commands perform the following tasks:
    * spectrum - eigenvalues of T_V (exact for radial symbols)
    * counting - counting function n_+(lambda) or n_-(lambda)
    * asymptotics - fit of the counting function against its growth law
    * berezin - reproducing-kernel density and Berezin transform
    * schatten - Schatten norms and their bounds
    * boundary - reduction of T_V to the boundary sphere
    * krein - counting bounds near the kernel of the Krein Laplacian
    * selftest - runs the invariant suites""",
        )
        self._add_common_args()
        self._add_problem_args()
        self._add_grid_args()
        self._add_command_args()

    def _add_common_args(self) -> None:
        """Common (non-command specific) arguments."""
        self.parser.add_argument(
            "command",
            metavar="command",
            type=str,
            nargs="?",
            choices=COMMANDS,
            help="command - one of [%(choices)s]",
        )
        self.parser.add_argument(
            "--config",
            metavar="PATH",
            type=Path,
            default=None,
            help="JSON experiment file; replaces all other experiment options",
        )
        self.parser.add_argument(
            "--output",
            "-o",
            metavar="PATH",
            type=Path,
            default=None,
            help="output file (default: stdout)",
        )
        self.parser.add_argument(
            "--format",
            type=str,
            choices=["csv", "json"],
            default="csv",
            help="output format (default: %(default)s)",
        )
        self.parser.add_argument(
            "--threads",
            "-j",
            metavar="COUNT",
            type=int,
            help="number of worker processes - setting to -1 uses all available cores "
            "(default: %(default)d)",
            default=1,
        )
        self.parser.add_argument(
            "--verbose",
            "-v",
            help="verbose logging (info messages); warnings on numerical quality "
            "are always shown.",
            action="store_true",
        )

    def _add_problem_args(self) -> None:
        """Operator and truncation arguments."""
        self.problem = self.parser.add_argument_group(title="operator options")
        self.problem.add_argument(
            "--d",
            metavar="INT",
            type=int,
            default=2,
            help="dimension of the ball (default: %(default)d)",
        )
        self.problem.add_argument(
            "--symbol",
            metavar="DESC",
            type=str,
            default=None,
            help="symbol descriptor, e.g. 'step:b=1,c=0.5', 'power:a=1,gamma=1', "
            "'sampled:@profile.csv', 'sum:[<desc>; <desc>]', 'general:@grid.json'",
        )
        self.problem.add_argument(
            "--K",
            metavar="INT",
            type=int,
            default=None,
            help="truncation degree",
        )
        self.problem.add_argument(
            "--nr",
            metavar="INT",
            type=int,
            default=None,
            help="radial quadrature order (default: K + 8)",
        )
        self.problem.add_argument(
            "--nang",
            metavar="INT",
            type=int,
            default=None,
            help="angular quadrature order (default: 2K + 6)",
        )

    def _add_grid_args(self) -> None:
        """Threshold and sample grids."""
        self.grids = self.parser.add_argument_group(title="grid options")
        thresholds = self.grids.add_mutually_exclusive_group()
        thresholds.add_argument(
            "--lambda",
            dest="lambdas",
            metavar="F",
            type=float,
            action="append",
            default=None,
            help="threshold lambda > 0 (may be repeated)",
        )
        thresholds.add_argument(
            "--lnlambda",
            dest="ln_lambdas",
            metavar="LO:HI[:N]",
            type=ln_grid,
            default=None,
            help="N equispaced values of ln(lambda) (default N: 50)",
        )
        self.grids.add_argument(
            "--E",
            dest="energies",
            metavar="LO:HI:N",
            type=energy_grid,
            default=None,
            help="N log-spaced energies for buckling counts",
        )
        self.grids.add_argument(
            "--radii",
            metavar="R1,R2,...",
            type=float_list,
            default=None,
            help="sample radii along the first axis",
        )

    def _add_command_args(self) -> None:
        """Command-specific arguments."""
        self.commands = self.parser.add_argument_group(title="command options")
        self.commands.add_argument(
            "--model",
            type=str,
            choices=["power", "log-power"],
            default="power",
            help="growth model of the asymptotic fit (default: %(default)s)",
        )
        self.commands.add_argument(
            "--p",
            metavar="F",
            type=float,
            default=2.0,
            help="Schatten exponent (default: %(default)s)",
        )
        self.commands.add_argument(
            "--weak", action="store_true", help="use weak Schatten norms"
        )
        self.commands.add_argument(
            "--eps",
            metavar="F",
            type=float,
            default=0.1,
            help="Krein splitting parameter in (0, 1) (default: %(default)s)",
        )
        self.commands.add_argument(
            "--negative",
            action="store_true",
            help="count negative eigenvalues (n_-) instead of positive ones",
        )
        self.commands.add_argument(
            "--lambda1",
            metavar="F",
            type=float,
            default=None,
            help="lowest eigenvalue of L in the Krein remainder "
            "(default: first disk buckling value)",
        )
        self.commands.add_argument(
            "--matrix",
            metavar="PATH",
            type=Path,
            default=None,
            help="write the section matrix (spectrum, boundary)",
        )
        self.commands.add_argument(
            "--suites",
            metavar="PATH",
            type=Path,
            default=None,
            help="self-test suite file (default: bundled selftest.yaml)",
        )

    def parse_args(self, args: Sequence[str] | None = None) -> Namespace:
        """Parse command-line arguments."""
        args = list(sys.argv[1:] if args is None else args)
        joined: list[str] = []
        for arg in args:
            if joined and joined[-1] in _GRID_FLAGS and arg.startswith("-"):
                joined[-1] = f"{joined[-1]}={arg}"
            else:
                joined.append(arg)
        namespace = self.parser.parse_args(joined)
        if namespace.command is None and namespace.config is None:
            self.parser.error("expected a command or --config")
        return namespace

    def to_config(self, namespace: Namespace) -> ExperimentConfig:
        """Experiment described by parsed arguments.

        Exits with status 2 on invalid configurations.
        """
        try:
            if namespace.config is not None:
                config = ExperimentConfig.load(namespace.config)
                if namespace.command not in (None, config.command):
                    raise ConfigError(
                        f"Expected command '{config.command}' from "
                        f"{namespace.config}; got '{namespace.command}'"
                    )
                return config
            return ExperimentConfig(
                command=namespace.command,
                d=namespace.d,
                symbol=namespace.symbol,
                K=namespace.K,
                n_r=namespace.nr,
                n_ang=namespace.nang,
                lambdas=tuple(namespace.lambdas) if namespace.lambdas else None,
                ln_lambdas=namespace.ln_lambdas,
                energies=namespace.energies,
                radii=namespace.radii,
                model=namespace.model,
                p=namespace.p,
                weak=namespace.weak,
                eps=namespace.eps,
                sign=-1 if namespace.negative else 1,
                lambda1=namespace.lambda1,
                matrix=str(namespace.matrix) if namespace.matrix else None,
                suites=str(namespace.suites) if namespace.suites else None,
                output=str(namespace.output) if namespace.output else None,
                format=namespace.format,
                threads=namespace.threads,
            )
        except (ConfigError, OSError) as exc:
            self.parser.error(str(exc))
