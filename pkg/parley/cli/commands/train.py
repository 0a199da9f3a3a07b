"""
Train command: self-play training of a seeker and a provider.
"""

import sys
from pathlib import Path
from typing import Optional

import click

from parley.cli.adapters.experiment_runner import CLIExperimentRunner
from parley.cli.commands.options import experiment_options
from parley.cli.config_manager import load_config
from parley.cli.utils.errors import EXIT_INTERRUPTED, handle_error
from parley.cli.utils.logging import create_logger
from parley.src.config import CURVE_FILENAME
from parley.src.core.acts.models import Role


@click.command(name="train")
@experiment_options
@click.option(
    "--dialogues",
    "-n",
    type=int,
    help="Override n_train_dialogues",
)
@click.option(
    "--resume",
    is_flag=True,
    help="Continue from the last checkpoint in the output directory",
)
def train_command(
    config_path: Optional[str],
    seed: Optional[int],
    out: Optional[str],
    mode: Optional[str],
    verbose: bool,
    dialogues: Optional[int],
    resume: bool,
):
    """
    Train a seeker and a provider against each other.

    Both agents learn concurrently. Every checkpoint_every dialogues a
    learning-curve row is written and a checkpoint saved; --resume picks
    up an interrupted run where it stopped.

    Examples:

    \b
    # Train with the shipped defaults
    $ parley train --config configs/experiment.yaml --out runs/wolf

    \b
    # Act-level training, different seed
    $ parley train --mode acts --seed 7 --out runs/acts

    \b
    # Continue an interrupted run
    $ parley train --config configs/experiment.yaml --out runs/wolf --resume
    """
    logger = create_logger(verbose=verbose)

    try:
        logger.step("Loading configuration...", 1, 3)
        cfg = load_config(
            Path(config_path) if config_path else None,
            seed=seed,
            output_dir=Path(out) if out else None,
            mode=mode,
            n_train_dialogues=dialogues,
        )
        logger.success(
            f"{cfg.seeker.algorithm.value} seeker vs {cfg.provider.algorithm.value} provider, "
            f"{cfg.episode.channel_mode.value} channel, seed {cfg.seed}"
        )

        logger.step("Building domain, templates and action spaces...", 2, 3)
        runner = CLIExperimentRunner(cfg, verbose=verbose)
        resources = runner.resources
        logger.success(
            f"{len(resources.db)} items, action spaces "
            f"{len(resources.spaces[Role.SEEKER])}/{len(resources.spaces[Role.PROVIDER])}"
        )

        logger.step(f"Training for {cfg.n_train_dialogues} dialogues...", 3, 3)
        result = runner.train(resume=resume)
        if result.resumed_from:
            logger.debug(f"Resumed at {result.resumed_from} dialogues")

        rows = [("Dialogues", result.dialogues)]
        final = result.final_row
        if final is not None:
            rows += [
                ("Window success", final.success_rate),
                ("Window turns", final.avg_turns),
                ("Seeker return", final.seeker_return),
                ("Provider return", final.provider_return),
            ]
        rows.append(("Training time", logger.elapsed_time()))
        logger.summary("Training complete!", rows)
        logger.outputs([*result.policy_paths.values(), result.output_dir / CURVE_FILENAME])

    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user (resume with --resume)", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_error(e, verbose))
