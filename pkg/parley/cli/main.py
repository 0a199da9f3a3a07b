"""
Main CLI application for parley using Click framework.
"""

import logging
import sys

import click

from parley import __version__
from parley.cli.utils.errors import EXIT_INTERRUPTED, EXIT_RUNTIME_ERROR, EXIT_USAGE_ERROR
from parley.src.config import RuntimeSettings
from parley.src.core.utils.logging_config import setup_logging


@click.group()
@click.version_option(version=__version__, prog_name="parley")
@click.pass_context
def cli(ctx):
    """
    parley: train two dialogue agents to talk to each other.

    A seeker with a restaurant goal and a provider with the database learn
    concurrently (WoLF-PHC, PHC or Q-learning) over a noisy channel of
    template NLG and rule NLU.

    Workflow:
      1. parley validate      - Check the learners on matrix games
      2. parley train         - Self-play training, learning curve, policies
      3. parley evaluate      - Frozen pairings, success / return / turns
      4. parley chat          - Talk to a trained agent
    """
    ctx.ensure_object(dict)
    level = getattr(logging, RuntimeSettings().log_level.upper(), logging.INFO)
    setup_logging(level)


@cli.command()
def version():
    """Display version information."""
    click.echo(f"parley v{__version__}")
    click.echo("Multi-agent dialogue policy learning with WoLF-PHC")


# Import commands
from parley.cli.commands.chat import chat_command
from parley.cli.commands.config import config_group
from parley.cli.commands.evaluate import evaluate_command
from parley.cli.commands.metrics import nlg_eval_command, nlu_eval_command
from parley.cli.commands.train import train_command
from parley.cli.commands.validate import validate_command

# Register command groups
cli.add_command(config_group)
cli.add_command(train_command, name="train")
cli.add_command(evaluate_command, name="evaluate")
cli.add_command(chat_command, name="chat")
cli.add_command(validate_command, name="validate")
cli.add_command(nlg_eval_command, name="nlg-eval")
cli.add_command(nlu_eval_command, name="nlu-eval")


def main():
    """Entry point for the CLI."""
    try:
        cli.main(obj={}, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("\nAborted", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_USAGE_ERROR)
    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        click.secho(f"\n✗ Unexpected error: {e}", fg="red", err=True)
        sys.exit(EXIT_RUNTIME_ERROR)


if __name__ == "__main__":
    main()
