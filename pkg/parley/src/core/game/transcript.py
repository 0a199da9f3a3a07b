"""
JSON-lines dialogue transcripts.

One line per turn, then one outcome line per episode. Several episodes may
share a file; every line carries its episode index and the format version.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Tuple, Union

from parley.src.core.errors import ParleyError
from parley.src.core.game.episode import EpisodeOutcome, TurnRecord
from parley.src.core.ontology.models import Goal
from parley.src.utils import file_manager

TRANSCRIPT_VERSION = 1
TURN = "turn"
OUTCOME = "outcome"


@dataclass
class LoggedEpisode:
    episode: int
    goal: Goal
    turns: List[TurnRecord]
    outcome: dict


def transcript_lines(outcome: EpisodeOutcome, episode: int = 0) -> List[dict]:
    header = {"format_version": TRANSCRIPT_VERSION, "episode": episode}
    lines = [{**header, "type": TURN, **record.to_dict()} for record in outcome.transcript]
    lines.append({**header, "type": OUTCOME, **outcome.to_dict()})
    return lines


def write_transcripts(
    path: Union[str, Path], outcomes: Iterable[Tuple[int, EpisodeOutcome]]
) -> None:
    """Write (episode index, outcome) pairs to one JSON-lines file (.gz compresses)."""
    lines = [line for episode, outcome in outcomes for line in transcript_lines(outcome, episode)]
    file_manager.save_jsonl(lines, str(path))


def write_transcript(path: Union[str, Path], outcome: EpisodeOutcome) -> None:
    write_transcripts(path, [(0, outcome)])


def read_transcripts(path: Union[str, Path]) -> List[LoggedEpisode]:
    episodes: List[LoggedEpisode] = []
    turns: List[TurnRecord] = []
    for number, line in enumerate(file_manager.load_jsonl(str(path)), start=1):
        version = line.get("format_version")
        if version != TRANSCRIPT_VERSION:
            raise ParleyError(f"{path}:{number}: unsupported transcript version {version}")
        if line["type"] == TURN:
            turns.append(TurnRecord.from_dict(line))
        elif line["type"] == OUTCOME:
            episodes.append(
                LoggedEpisode(line["episode"], Goal.from_dict(line["goal"]), turns, line)
            )
            turns = []
        else:
            raise ParleyError(f"{path}:{number}: unknown line type {line['type']}")
    if turns:
        raise ParleyError(f"{path}: transcript ends without an outcome line")
    return episodes
