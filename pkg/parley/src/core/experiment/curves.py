"""
Learning curves: windowed success, return and turn averages per checkpoint.
"""

import csv
from collections import deque
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Deque, List, Tuple, Union

import numpy as np

from parley.src.core.game.episode import EpisodeOutcome

CURVE_COLUMNS = ["dialogues", "success_rate", "seeker_return", "provider_return", "avg_turns"]
PRECISION = 6

# success, seeker return, provider return, turns
Sample = Tuple[float, float, float, float]


@dataclass(frozen=True)
class CurveRow:
    dialogues: int
    success_rate: float
    seeker_return: float
    provider_return: float
    avg_turns: float

    def to_dict(self) -> dict:
        return asdict(self)

    def formatted(self) -> dict:
        """Fixed-precision strings, so equal runs give byte-identical files."""
        return {
            "dialogues": str(self.dialogues),
            **{
                name: f"{getattr(self, name):.{PRECISION}f}"
                for name in CURVE_COLUMNS[1:]
            },
        }


class MetricsWindow:
    """Moving window over the most recent episodes."""

    def __init__(self, size: int):
        self.size = size
        self.samples: Deque[Sample] = deque(maxlen=size)

    def __len__(self) -> int:
        return len(self.samples)

    def add(self, outcome: EpisodeOutcome) -> None:
        self.samples.append(
            (
                float(outcome.objective_success),
                outcome.seeker_return,
                outcome.provider_return,
                float(outcome.turns),
            )
        )

    def row(self, dialogues: int) -> CurveRow:
        if not self.samples:
            return CurveRow(dialogues, 0.0, 0.0, 0.0, 0.0)
        means = np.asarray(self.samples, dtype=float).mean(axis=0)
        return CurveRow(dialogues, *(float(v) for v in means))

    def to_list(self) -> List[List[float]]:
        return [list(sample) for sample in self.samples]

    @classmethod
    def from_list(cls, size: int, samples: List[List[float]]) -> "MetricsWindow":
        window = cls(size)
        for sample in samples:
            window.samples.append(tuple(float(v) for v in sample))
        return window


def write_curve(path: Union[str, Path], rows: List[CurveRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CURVE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.formatted())


def read_curve(path: Union[str, Path]) -> List[CurveRow]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return [
            CurveRow(
                int(record["dialogues"]),
                float(record["success_rate"]),
                float(record["seeker_return"]),
                float(record["provider_return"]),
                float(record["avg_turns"]),
            )
            for record in csv.DictReader(handle)
        ]
