"""Harmotop commands, registered by name on import."""

from harmotop.commands import (
    asymptotics,
    berezin,
    boundary,
    counting,
    krein,
    schatten,
    selftest,
    spectrum,
)
from harmotop.commands.registry import (
    CommandResult,
    command_registry,
    register,
    run_command,
)

__all__ = [
    "CommandResult",
    "asymptotics",
    "berezin",
    "boundary",
    "command_registry",
    "counting",
    "krein",
    "register",
    "run_command",
    "schatten",
    "selftest",
    "spectrum",
]
