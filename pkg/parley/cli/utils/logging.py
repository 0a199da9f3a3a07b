"""
User-facing output of the CLI commands.
"""

import time
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

import click

SummaryRow = Tuple[str, object]


class CLILogger:
    """
    Step / result messages for one command run.

    Debug lines only show with --verbose; backend records go through the
    logging module instead (see the experiment runner).
    """

    def __init__(self, verbose: bool = False):
        self.verbose = verbose
        self._started = time.monotonic()

    def debug(self, message: str):
        if self.verbose:
            click.secho(f"[{self.elapsed_time():>7}] {message}", fg="cyan", dim=True)

    def info(self, message: str):
        click.echo(message)

    def success(self, message: str):
        click.secho(f"✓ {message}", fg="green")

    def warning(self, message: str):
        click.secho(f"⚠️  {message}", fg="yellow")

    def error(self, message: str):
        click.secho(f"✗ {message}", fg="red", err=True)

    def step(self, message: str, step: Optional[int] = None, total: Optional[int] = None):
        prefix = f"[{step}/{total}]" if step is not None and total is not None else "→"
        click.secho(f"{prefix} {message}", fg="blue", bold=True)

    def summary(self, title: str, rows: Sequence[SummaryRow], ok: bool = True):
        """
        Closing block of a command: a headline and aligned `label: value` rows.

        Float values are shown with three decimals.
        """
        click.echo()
        click.secho(f"{'✓' if ok else '✗'} {title}", fg="green" if ok else "yellow", bold=True)
        click.echo()
        width = max((len(label) for label, _ in rows), default=0) + 2
        for label, value in rows:
            shown = f"{value:.3f}" if isinstance(value, float) else str(value)
            click.echo(f"  {label + ':':<{width}}{shown}")

    def outputs(self, paths: Iterable[Union[str, Path]]):
        click.echo()
        click.echo("  Output files:")
        for path in paths:
            click.echo(f"    • {path}")
        click.echo()

    def elapsed_time(self) -> str:
        """Time since the command started, as '42s' or '3m 05s'."""
        seconds = int(time.monotonic() - self._started)
        minutes, seconds = divmod(seconds, 60)
        return f"{minutes}m {seconds:02d}s" if minutes else f"{seconds}s"


def create_logger(verbose: bool = False) -> CLILogger:
    return CLILogger(verbose=verbose)
