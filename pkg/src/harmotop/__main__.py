"""Entrypoint of application."""

import logging
import sys
import time

from elbow.utils import setup_logging

from harmospec.checks import CertificationError
from harmotop.cli import HarmotopArgumentParser
from harmotop.commands import run_command
from harmotop.config import ExperimentConfig
from harmotop.output import write_result

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CERTIFICATION = 3


def run(config: ExperimentConfig) -> int:
    """Run one experiment and write its table.

    Returns:
        0 on success, 3 if a check performed by the command failed
    """
    logging.info(
        "Starting harmotop %s:"
        f"\n\tsymbol: {config.symbol}"
        f"\n\td: {config.d}"
        f"\n\tK: {config.degree}"
        f"\n\toutput: {config.output or '<stdout>'} ({config.format})"
        f"\n\tthreads: {config.threads}",
        config.command,
    )
    tic = time.monotonic()
    result = run_command(config)
    write_result(result, config)
    logging.info(
        "Done %s; passed: %s; elapsed: %.2fs",
        config.command,
        result.passed,
        time.monotonic() - tic,
    )
    return EXIT_OK if result.passed else EXIT_CERTIFICATION


def main() -> None:
    """Harmotop entrypoint."""
    parser = HarmotopArgumentParser()
    args = parser.parse_args()

    # Numerical quality warnings are shown without --verbose
    setup_logging("INFO" if args.verbose else "WARNING")

    config = parser.to_config(args)
    try:
        code = run(config)
    except ValueError as exc:
        # ConfigError, DescriptorError and invalid numerical arguments
        logging.error("Invalid experiment: %s", exc)
        code = EXIT_CONFIG
    except CertificationError as exc:
        logging.error("Numerical certification failed: %s", exc)
        code = EXIT_CERTIFICATION
    sys.exit(code)


if __name__ == "__main__":
    main()
