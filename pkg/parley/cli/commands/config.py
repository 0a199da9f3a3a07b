"""
Configuration commands for parley CLI.
"""

import json
import sys
from pathlib import Path
from typing import Optional

import click

from parley.cli.config_manager import ConfigManager
from parley.cli.utils.errors import EXIT_USAGE_ERROR, handle_error


@click.group(name="config")
def config_group():
    """Inspect and create experiment configuration files."""
    pass


@config_group.command(name="show")
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config YAML (default: built-in defaults)",
)
@click.option("--json", "output_json", is_flag=True, help="Output in JSON format")
def config_show(config_path: Optional[str], output_json: bool):
    """
    Display the effective configuration.

    Shows the config file with environment overrides (PARLEY_OUTPUT_DIR,
    .env) applied and every default filled in.

    Examples:

    \b
    # Built-in defaults
    $ parley config show

    \b
    # A config file, as JSON
    $ parley config show --config configs/experiment.yaml --json
    """
    try:
        manager = ConfigManager(Path(config_path) if config_path else None)
        manager.load()
        manager.apply_overrides()
        cfg = manager.get_config()

        if output_json:
            click.echo(json.dumps(cfg.model_dump(mode="json"), indent=2))
        else:
            click.secho(f"# source: {manager.config_path or 'built-in defaults'}", fg="blue", bold=True)
            click.echo(manager.to_yaml())

    except Exception as e:
        sys.exit(handle_error(e))


@config_group.command(name="init")
@click.argument("path", type=click.Path(dir_okay=False), default="parley.yaml")
@click.option("--force", is_flag=True, help="Overwrite an existing file")
def config_init(path: str, force: bool):
    """
    Write a config file holding every default.

    Examples:

    \b
    $ parley config init experiment.yaml
    """
    try:
        target = Path(path)
        if target.exists() and not force:
            click.secho(f"\n✗ {target} exists (use --force to overwrite)", fg="red", err=True)
            sys.exit(EXIT_USAGE_ERROR)

        manager = ConfigManager()
        manager.load()
        manager.save(target)
        click.secho(f"✓ Wrote {target}", fg="green")

    except Exception as e:
        sys.exit(handle_error(e))
