"""
Error handling utilities and exit codes for CLI.

Exit Codes:
  0: Success
  1: Usage or configuration error (bad flags, invalid config file)
  2: Runtime failure (policy mismatch, unreadable data, failed run)
"""

import traceback

import click

from parley.src.core.errors import (
    ActionSpaceSizeError,
    DomainMismatchError,
    ParleyError,
    PolicyMismatchError,
)


# Exit codes
EXIT_SUCCESS = 0
EXIT_USAGE_ERROR = 1
EXIT_RUNTIME_ERROR = 2
EXIT_INTERRUPTED = 130


class ParleyCLIError(Exception):
    """Base exception for parley CLI errors."""

    def __init__(self, message: str, exit_code: int = EXIT_RUNTIME_ERROR):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class ConfigurationError(ParleyCLIError):
    """Invalid config file, flag or environment override."""

    def __init__(self, message: str):
        super().__init__(message, EXIT_USAGE_ERROR)


class FileSystemError(ParleyCLIError):
    """File system-related errors."""

    def __init__(self, message: str):
        super().__init__(message, EXIT_RUNTIME_ERROR)


HINTS = {
    PolicyMismatchError: (
        "Evaluate and chat need the config the policy was trained with "
        "(see config.yaml in the run directory)"
    ),
    ActionSpaceSizeError: "Set action_space.expected_size to the generated size, or null to skip the check",
    DomainMismatchError: "The database columns, templates and domain file must describe the same slots",
}


def handle_error(error: Exception, verbose: bool = False) -> int:
    """
    Print an error and return the exit code for it.

    CLI errors carry their own exit code; engine errors exit with
    EXIT_RUNTIME_ERROR and may print a hint on how to fix the input.
    """
    if isinstance(error, ParleyCLIError):
        click.secho(f"\n✗ Error: {error.message}", fg="red", err=True)
        return error.exit_code

    if isinstance(error, ParleyError):
        click.secho(f"\n✗ {type(error).__name__}: {error.message}", fg="red", err=True)
        hint = next((text for kind, text in HINTS.items() if isinstance(error, kind)), None)
        if hint:
            click.secho(f"  {hint}", fg="yellow", err=True)
        return EXIT_RUNTIME_ERROR

    click.secho(f"\n✗ Unexpected error: {error}", fg="red", err=True)
    if verbose:
        click.echo(traceback.format_exc(), err=True)
    return EXIT_RUNTIME_ERROR
