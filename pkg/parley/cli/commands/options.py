"""
Options shared by the experiment commands.
"""

from functools import wraps

import click

MODES = ["acts", "language"]


def experiment_options(command):
    """--config, --seed, --out, --mode and --verbose."""

    @click.option(
        "--config",
        "-c",
        "config_path",
        type=click.Path(exists=True, dir_okay=False),
        help="Experiment config YAML (default: built-in defaults)",
    )
    @click.option("--seed", type=int, help="Override the root seed")
    @click.option("--out", "-o", type=click.Path(file_okay=False), help="Output directory")
    @click.option(
        "--mode",
        type=click.Choice(MODES),
        help="Channel mode: acts (frames) or language (NLG + NLU)",
    )
    @click.option(
        "--verbose",
        "-v",
        is_flag=True,
        help="Show detailed progress and debug information",
    )
    @wraps(command)
    def wrapper(*args, **kwargs):
        return command(*args, **kwargs)

    return wrapper
