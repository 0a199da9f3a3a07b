"""
Evaluate command: frozen policies played against each other.
"""

import sys
from pathlib import Path
from typing import Optional, Tuple

import click
from rich.console import Console
from rich.table import Table

from parley.cli.adapters.experiment_runner import CLIExperimentRunner
from parley.cli.commands.options import experiment_options
from parley.cli.config_manager import load_config
from parley.cli.models.report import MetricsReport
from parley.cli.utils.errors import EXIT_INTERRUPTED, handle_error
from parley.cli.utils.logging import create_logger
from parley.cli.utils.validation import resolve_policy_sources
from parley.src.config import REPORT_FILENAME


def render_report(report: MetricsReport) -> Table:
    table = Table(title="Evaluation", show_lines=False)
    table.add_column("Repetition", justify="right")
    table.add_column("Seed", justify="right")
    table.add_column("Success", justify="right")
    table.add_column("Seeker return", justify="right")
    table.add_column("Provider return", justify="right")
    table.add_column("Turns", justify="right")
    for rep in report.repetitions:
        table.add_row(
            str(rep.repetition),
            str(rep.seed),
            f"{rep.success_rate:.2%}",
            f"{rep.avg_return.seeker:.2f}",
            f"{rep.avg_return.provider:.2f}",
            f"{rep.avg_turns:.2f}",
        )
    table.add_section()
    table.add_row(
        "mean ± std",
        "",
        f"{report.success_rate:.2%} ± {report.spread['success_rate']:.2%}",
        f"{report.avg_return.seeker:.2f} ± {report.spread['seeker_return']:.2f}",
        f"{report.avg_return.provider:.2f} ± {report.spread['provider_return']:.2f}",
        f"{report.avg_turns:.2f} ± {report.spread['avg_turns']:.2f}",
    )
    return table


@click.command(name="evaluate")
@experiment_options
@click.option(
    "--policies",
    "-p",
    multiple=True,
    type=click.Path(exists=True),
    help="Training run directory or policy file (repeatable)",
)
@click.option(
    "--seeker-policy",
    type=str,
    help="Seeker policy file, or 'agenda' / 'handcrafted' for the handcrafted seeker",
)
@click.option(
    "--provider-policy",
    type=str,
    help="Provider policy file, or 'rule' / 'handcrafted' for the handcrafted provider",
)
@click.option("--dialogues", "-n", type=int, help="Override n_eval_dialogues")
@click.option("--repetitions", "-r", type=int, help="Override n_repetitions")
@click.option("--workers", type=int, help="Override eval_workers")
@click.option("--no-transcripts", is_flag=True, help="Do not write evaluation transcripts")
def evaluate_command(
    config_path: Optional[str],
    seed: Optional[int],
    out: Optional[str],
    mode: Optional[str],
    verbose: bool,
    policies: Tuple[str, ...],
    seeker_policy: Optional[str],
    provider_policy: Optional[str],
    dialogues: Optional[int],
    repetitions: Optional[int],
    workers: Optional[int],
    no_transcripts: bool,
):
    """
    Evaluate a seeker/provider pairing with learning switched off.

    Each repetition draws goals and noise from its own derived seed. A role
    without a policy plays its handcrafted policy, so trained agents can be
    paired with each other or with the agenda seeker / rule provider.

    Examples:

    \b
    # Evaluate the two policies of a training run
    $ parley evaluate --policies runs/wolf --out runs/wolf/eval

    \b
    # Cross-pair a WoLF provider with a Q-learning seeker
    $ parley evaluate -p runs/wolf/provider_policy.json.gz -p runs/q/seeker_policy.json.gz

    \b
    # Trained provider against the agenda seeker
    $ parley evaluate --provider-policy runs/wolf/provider_policy.json.gz --seeker-policy agenda
    """
    logger = create_logger(verbose=verbose)

    try:
        logger.step("Loading configuration and policies...", 1, 2)
        cfg = load_config(
            Path(config_path) if config_path else None,
            seed=seed,
            output_dir=Path(out) if out else None,
            mode=mode,
            n_eval_dialogues=dialogues,
            n_repetitions=repetitions,
            eval_workers=workers,
            save_transcripts=False if no_transcripts else None,
        )
        sources = resolve_policy_sources(policies, seeker_policy, provider_policy)
        for role, source in sources.items():
            logger.debug(f"{role.value}: {source or 'handcrafted'}")

        logger.step(
            f"Evaluating {cfg.n_repetitions} x {cfg.n_eval_dialogues} dialogues "
            f"({cfg.episode.channel_mode.value} channel)...",
            2,
            2,
        )
        runner = CLIExperimentRunner(cfg, verbose=verbose)
        report, transcripts = runner.evaluate(sources)

        click.echo()
        Console().print(render_report(report))
        logger.summary(
            "Evaluation complete!",
            [
                ("Seeker", report.pairing["seeker"]),
                ("Provider", report.pairing["provider"]),
                ("Time", logger.elapsed_time()),
            ],
        )
        logger.outputs([runner.output_dir / REPORT_FILENAME, *transcripts])

    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_error(e, verbose))
