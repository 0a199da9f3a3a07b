"""
Metric commands: template BLEU (nlg-eval) and rule NLU F1 (nlu-eval).
"""

import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from parley.cli.adapters.experiment_runner import CLIExperimentRunner
from parley.cli.config_manager import load_config
from parley.cli.utils.errors import EXIT_INTERRUPTED, handle_error
from parley.cli.utils.logging import create_logger
from parley.src.config import NLG_REPORT_FILENAME, NLU_REPORT_FILENAME
from parley.src.core.acts.models import Role

ROLES = [role.value for role in Role]


@click.command(name="nlg-eval")
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config YAML (selects the template directory)",
)
@click.option("--out", "-o", type=click.Path(file_okay=False), help="Output directory")
@click.option(
    "--role",
    type=click.Choice(ROLES),
    default="provider",
    show_default=True,
    help="Whose templates serve as references",
)
@click.option(
    "--candidates",
    type=click.Path(exists=True, dir_okay=False),
    help="TSV of 'mr<TAB>delexicalized candidate' rows; omitted scores templates leave-one-out",
)
@click.option("--verbose", "-v", is_flag=True, help="Show per-candidate scores")
def nlg_eval_command(
    config_path: Optional[str],
    out: Optional[str],
    role: str,
    candidates: Optional[str],
    verbose: bool,
):
    """
    Max-reference BLEU of delexicalized candidates against the template corpus.

    Each candidate is scored against every template of its MR and the best
    score kept. Without --candidates every template is scored against its
    siblings, which measures how varied the corpus is.

    Examples:

    \b
    # Template diversity of the provider corpus
    $ parley nlg-eval

    \b
    # Score generated candidates
    $ parley nlg-eval --role seeker --candidates generated.tsv
    """
    logger = create_logger(verbose=verbose)

    try:
        cfg = load_config(Path(config_path) if config_path else None, output_dir=Path(out) if out else None)
        runner = CLIExperimentRunner(cfg, verbose=verbose)
        mean, scores = runner.nlg_eval(Role(role), Path(candidates) if candidates else None)

        for score in scores:
            logger.debug(f"{score.bleu:.4f}  {score.mr}  |  {score.candidate}")
        logger.summary(
            f"Mean BLEU {mean:.4f}",
            [("Role", role), ("Candidates", len(scores)), ("Source", candidates or "leave-one-out")],
        )
        logger.outputs([runner.output_dir / NLG_REPORT_FILENAME])

    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_error(e, verbose))


@click.command(name="nlu-eval")
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config YAML",
)
@click.option("--seed", type=int, help="Override the root seed")
@click.option("--out", "-o", type=click.Path(file_okay=False), help="Output directory")
@click.option("--rows", "-n", type=int, default=1000, show_default=True, help="Corpus size per role")
@click.option("--noisy", is_flag=True, help="Corrupt frames with the configured channel noise")
@click.option("--verbose", "-v", is_flag=True, help="Show detailed progress and debug information")
def nlu_eval_command(
    config_path: Optional[str],
    seed: Optional[int],
    out: Optional[str],
    rows: int,
    noisy: bool,
    verbose: bool,
):
    """
    Intent, slot and frame F1 of the rule NLU for each role.

    Utterances are generated from the frames each role can produce; gold
    annotations are the clean frames, so --noisy shows what channel noise
    costs the listener.

    Examples:

    \b
    # Clean corpus
    $ parley nlu-eval --rows 2000

    \b
    # With the configured noise
    $ parley nlu-eval --config configs/experiment.yaml --noisy
    """
    logger = create_logger(verbose=verbose)

    try:
        cfg = load_config(
            Path(config_path) if config_path else None,
            seed=seed,
            output_dir=Path(out) if out else None,
        )
        runner = CLIExperimentRunner(cfg, verbose=verbose)
        scores = runner.nlu_eval(rows, noisy=noisy)

        table = Table(title=f"Rule NLU ({'noisy' if noisy else 'clean'}, {rows} rows per role)")
        table.add_column("Speaker")
        table.add_column("Intent F1", justify="right")
        table.add_column("Slot F1", justify="right")
        table.add_column("Frame F1", justify="right")
        for role, values in scores.items():
            table.add_row(
                role.value,
                f"{values['intent_f1']:.4f}",
                f"{values['slot_f1']:.4f}",
                f"{values['frame_f1']:.4f}",
            )
        click.echo()
        Console().print(table)
        logger.outputs([runner.output_dir / NLU_REPORT_FILENAME])

    except KeyboardInterrupt:
        click.echo("\n\nInterrupted by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        sys.exit(handle_error(e, verbose))
