"""
Progress indicators for long simulation runs.
"""

from typing import Optional

import click


class DialogueProgressBar:
    """
    Progress over a fixed number of dialogues.

    In verbose mode the bar is replaced by a line every `report_every`
    dialogues, so it does not fight with backend log output.
    """

    def __init__(
        self,
        total: int,
        label: str = "Dialogues",
        verbose: bool = False,
        start: int = 0,
        report_every: Optional[int] = None,
    ):
        self.total = total
        self.done = start
        self.verbose = verbose
        self.report_every = report_every or max(1, total // 10)
        self.bar = None

        if not verbose:
            self.bar = click.progressbar(
                length=total,
                label=label,
                show_eta=True,
                show_percent=True,
            )
            self.bar.__enter__()
            if start:
                self.bar.update(start)

    def update(self, done: int, success_rate: Optional[float] = None):
        """Move to `done` dialogues completed."""
        step = done - self.done
        self.done = done
        if self.bar is not None:
            self.bar.update(step)
        elif done % self.report_every == 0 or done == self.total:
            suffix = f" (window success {success_rate:.3f})" if success_rate is not None else ""
            click.echo(f"  [{done}/{self.total}] dialogues{suffix}")

    def finish(self):
        if self.bar is not None:
            self.bar.__exit__(None, None, None)
            self.bar = None

    def __enter__(self) -> "DialogueProgressBar":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.finish()
