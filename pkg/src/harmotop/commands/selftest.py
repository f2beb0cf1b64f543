"""Invariant suites run from the command line."""

from pathlib import Path

from harmotop.commands.registry import CommandResult, register
from harmotop.config import ExperimentConfig
from harmotop.runner import run_selftests


@register("selftest")
def selftest(config: ExperimentConfig) -> CommandResult:
    """Pass/fail table of the self-test suites."""
    table = run_selftests(
        Path(config.suites) if config.suites else None, config.threads
    )
    passed = bool(table["passed"].all())
    return CommandResult(
        table=table,
        columns={
            "suite": "suite name",
            "passed": "value <= limit",
            "value": "measured deviation",
            "limit": "tolerance",
            "detail": "what was measured",
            "elapsed": "seconds",
        },
        summary={"passed": int(table["passed"].sum()), "total": len(table)},
        passed=passed,
    )
