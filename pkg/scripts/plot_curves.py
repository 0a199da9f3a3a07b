"""
Plot learning curves of one or more training runs.

Needs the `plot` extra (pip install -e ".[plot]").

    python scripts/plot_curves.py runs/wolf runs/phc --out curves.png
"""

import sys
from pathlib import Path
from typing import Tuple

import click
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from parley.src.config import CURVE_FILENAME
from parley.src.core.experiment.curves import read_curve


@click.command()
@click.argument("runs", nargs=-1, required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "-o", type=click.Path(dir_okay=False), default="learning_curves.png", show_default=True)
@click.option("--title", type=str, default=None)
def main(runs: Tuple[str, ...], out: str, title: str):
    """Success rate, returns and dialogue length against training dialogues."""
    fig, axes = plt.subplots(1, 3, figsize=(16, 4.5))

    for run in runs:
        curve_path = Path(run) / CURVE_FILENAME
        if not curve_path.exists():
            click.secho(f"✗ No {CURVE_FILENAME} in {run}", fg="red", err=True)
            sys.exit(1)
        rows = read_curve(curve_path)
        x = [row.dialogues for row in rows]
        label = Path(run).name

        axes[0].plot(x, [row.success_rate for row in rows], label=label)
        seeker = axes[1].plot(x, [row.seeker_return for row in rows], label=f"{label} seeker")[0]
        axes[1].plot(
            x,
            [row.provider_return for row in rows],
            linestyle="--",
            color=seeker.get_color(),
            label=f"{label} provider",
        )
        axes[2].plot(x, [row.avg_turns for row in rows], label=label)

    for ax, ylabel in zip(axes, ("success rate", "average return", "turns")):
        ax.set_xlabel("training dialogues")
        ax.set_ylabel(ylabel)
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
    axes[0].set_ylim(0.0, 1.0)
    if title:
        fig.suptitle(title)

    fig.tight_layout()
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    click.secho(f"✓ Wrote {out}", fg="green")


if __name__ == "__main__":
    main()
