"""
Validate command: learner convergence on repeated matrix games.
"""

import sys
from pathlib import Path
from typing import Optional

import click

from parley.cli.adapters.experiment_runner import CLIExperimentRunner
from parley.cli.config_manager import load_config
from parley.cli.utils.errors import EXIT_INTERRUPTED, EXIT_RUNTIME_ERROR, handle_error
from parley.cli.utils.logging import create_logger
from parley.src.config import VALIDATION_FILENAME


@click.command(name="validate")
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config YAML (its 'matrix' section is used)",
)
@click.option("--seed", type=int, help="Override the root seed")
@click.option("--out", "-o", type=click.Path(file_okay=False), help="Output directory")
@click.option("--steps", type=int, help="Override matrix.steps")
@click.option("--verbose", "-v", is_flag=True, help="Show detailed progress and debug information")
def validate_command(
    config_path: Optional[str],
    seed: Optional[int],
    out: Optional[str],
    steps: Optional[int],
    verbose: bool,
):
    """
    Check the learners on matching pennies and rock-paper-scissors.

    WoLF-PHC self-play must bring both average policies within tolerance of
    the uniform equilibrium, also on scaled payoffs, and plain PHC must end
    further from it than WoLF-PHC. Exits with 2 when a check fails.

    Examples:

    \b
    # Full suite (500k steps per run)
    $ parley validate --out runs/validation

    \b
    # Quick smoke run
    $ parley validate --steps 20000
    """
    logger = create_logger(verbose=verbose)

    try:
        cfg = load_config(
            Path(config_path) if config_path else None,
            seed=seed,
            output_dir=Path(out) if out else None,
        )
        if steps is not None:
            cfg = cfg.model_copy(update={"matrix": cfg.matrix.model_copy(update={"steps": steps})})

        logger.step(f"Running matrix-game suite ({cfg.matrix.steps} steps per run)...")
        runner = CLIExperimentRunner(cfg, verbose=verbose)
        report = runner.validate()

        click.echo()
        for check in report.checks:
            if check.passed:
                logger.success(check.name)
            else:
                logger.error(check.name)
            for key, value in check.details.items():
                logger.debug(f"  {key}: {value}")
        passed = sum(check.passed for check in report.checks)
        logger.summary(
            "All checks passed" if report.passed else "Validation failed",
            [("Checks passed", f"{passed}/{len(report.checks)}"), ("Time", logger.elapsed_time())],
            ok=report.passed,
        )
        logger.outputs([runner.output_dir / VALIDATION_FILENAME])
        if not report.passed:
            sys.exit(EXIT_RUNTIME_ERROR)

    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_error(e, verbose))
