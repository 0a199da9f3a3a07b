"""
CLI adapter for the experiment engine.

Wraps training, evaluation, validation and the metric runs of
parley.src.core with progress reporting and report files.
"""

import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from parley.cli.models.report import MetricsReport, ValidationReport
from parley.cli.utils.errors import ConfigurationError
from parley.cli.utils.fs import prepare_output_dir, write_json_report
from parley.cli.utils.progress import DialogueProgressBar
from parley.src.config import (
    CHAT_TRANSCRIPT_FILENAME,
    CURVE_FILENAME,
    NLG_REPORT_FILENAME,
    NLU_REPORT_FILENAME,
    REPORT_FILENAME,
    TRANSCRIPTS_FILENAME,
    VALIDATION_FILENAME,
    ExperimentConfig,
)
from parley.src.core.acts.models import Role
from parley.src.core.errors import CheckpointMismatchError
from parley.src.core.experiment.curves import CurveRow, read_curve
from parley.src.core.experiment.evaluator import PolicySources, build_agent, evaluate
from parley.src.core.experiment.nlu_corpus import nlu_report
from parley.src.core.experiment.resources import Resources, build_resources
from parley.src.core.experiment.trainer import Trainer, TrainingResult, goal_for_episode
from parley.src.core.game.chat import ChatSession
from parley.src.core.game.episode import EpisodeOutcome, EpisodeStreams
from parley.src.core.game.transcript import write_transcripts
from parley.src.core.language.metrics import bleu_max, leave_one_out_bleu
from parley.src.core.marl.matrix_games import validate_matrix_games
from parley.src.core.utils.logging_config import ColoredFormatter


@dataclass
class NLGScore:
    mr: str
    candidate: str
    bleu: float


class CLIExperimentRunner:
    """
    CLI adapter around the core experiment engine.

    Args:
        cfg: Validated experiment config
        verbose: Show backend INFO logs instead of progress bars
    """

    def __init__(self, cfg: ExperimentConfig, verbose: bool = False):
        self.cfg = cfg
        self.verbose = verbose
        self.output_dir = Path(cfg.output_dir)
        self._resources: Optional[Resources] = None
        self._configure_backend_logging()

    def _configure_backend_logging(self):
        """Route parley.src.core logs to the console with colored output."""
        backend_logger = logging.getLogger("parley.src.core")
        backend_logger.handlers.clear()

        if self.verbose:
            backend_logger.setLevel(logging.INFO)
            console_handler = logging.StreamHandler(sys.stdout)
            console_handler.setLevel(logging.INFO)
        else:
            backend_logger.setLevel(logging.WARNING)
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(logging.WARNING)

        console_handler.setFormatter(ColoredFormatter())
        backend_logger.addHandler(console_handler)
        backend_logger.propagate = False

    @property
    def resources(self) -> Resources:
        if self._resources is None:
            self._resources = build_resources(self.cfg)
        return self._resources

    def train(self, resume: bool = False) -> TrainingResult:
        prepare_output_dir(self.output_dir)
        trainer = Trainer(self.cfg, self.output_dir, self.resources)
        bar = DialogueProgressBar(self.cfg.n_train_dialogues, "Training", self.verbose)
        trainer.on_episode = lambda done, outcome: bar.update(done)
        try:
            result = trainer.train(resume=resume)
        except CheckpointMismatchError as e:
            raise ConfigurationError(f"Cannot resume: {e.message}") from e
        finally:
            bar.finish()
        return result

    def evaluate(self, sources: PolicySources) -> Tuple[MetricsReport, List[Path]]:
        """
        Evaluate a pairing and write report.json plus one transcript file per repetition.

        Returns:
            The report and the written transcript paths
        """
        prepare_output_dir(self.output_dir)
        report, kept = evaluate(self.cfg, sources, self.resources)
        metrics = MetricsReport.from_evaluation(report, self.cfg.seed, self._curve_for(sources))
        write_json_report(self.output_dir / REPORT_FILENAME, metrics.to_json())

        transcript_paths = []
        for repetition, outcomes in kept.items():
            path = self.output_dir / TRANSCRIPTS_FILENAME.format(repetition=repetition)
            write_transcripts(path, enumerate(outcomes))
            transcript_paths.append(path)
        return metrics, transcript_paths

    def _curve_for(self, sources: PolicySources) -> Optional[List[CurveRow]]:
        """The training curve next to the policies, when both come from one run."""
        parents = {path.parent for path in sources.values() if path is not None}
        if len(parents) != 1:
            return None
        curve_path = parents.pop() / CURVE_FILENAME
        return read_curve(curve_path) if curve_path.exists() else None

    def validate(self) -> ValidationReport:
        prepare_output_dir(self.output_dir)
        checks = validate_matrix_games(self.cfg.matrix, self.cfg.seed)
        report = ValidationReport.from_checks(checks, self.cfg.seed, self.cfg.matrix.steps)
        write_json_report(self.output_dir / VALIDATION_FILENAME, report.to_json())
        return report

    def nlg_eval(self, role: Role, candidates: Optional[Path] = None) -> Tuple[float, List[NLGScore]]:
        """
        Max-reference BLEU of delexicalized candidates against the role's templates.

        Without a candidates file every template is scored against its MR
        siblings with itself held out.

        Returns:
            Mean score and the per-candidate scores
        """
        store = self.resources.stores[role]
        if candidates is None:
            scores = [NLGScore(mr, text, value) for mr, text, value in leave_one_out_bleu(store)]
        else:
            scores = [
                NLGScore(mr, text, bleu_max(text, mr, store)) for mr, text in read_candidates(candidates)
            ]
        mean = float(np.mean([s.bleu for s in scores])) if scores else 0.0

        prepare_output_dir(self.output_dir)
        document = {
            "role": role.value,
            "source": str(candidates) if candidates else "leave-one-out",
            "mean_bleu": mean,
            "n_candidates": len(scores),
            "scores": [s.__dict__ for s in scores],
        }
        write_json_report(self.output_dir / NLG_REPORT_FILENAME, document)
        return mean, scores

    def nlu_eval(self, n_rows: int, noisy: bool = False) -> Dict[Role, dict]:
        noise = self.cfg.episode.noise if noisy else None
        report = nlu_report(self.resources, n_rows, self.cfg.seed, noise)
        scores = {role: s.to_dict() for role, s in report.items()}
        prepare_output_dir(self.output_dir)
        document = {"n_rows": n_rows, "noisy": noisy, "scores": {r.value: s for r, s in scores.items()}}
        write_json_report(self.output_dir / NLU_REPORT_FILENAME, document)
        return scores

    def chat_session(self, agent_role: Role, policy: Optional[Path]) -> ChatSession:
        resources = self.resources
        agent = build_agent(agent_role, policy, resources)
        return ChatSession(
            game=resources.game(),
            agent=agent,
            goal=goal_for_episode(resources, self.cfg.seed, 0),
            streams=EpisodeStreams.derive(self.cfg.seed, 0),
        )

    def save_chat(self, session: ChatSession) -> Tuple[Path, EpisodeOutcome]:
        """Close the session and write its transcript."""
        prepare_output_dir(self.output_dir)
        path = self.output_dir / CHAT_TRANSCRIPT_FILENAME
        outcome = session.close()
        write_transcripts(path, [(0, outcome)])
        return path, outcome


def read_candidates(path: Path) -> List[Tuple[str, str]]:
    """
    (mr, delexicalized candidate) rows from a two-column TSV; '#' lines are comments.

    Raises:
        ConfigurationError: If a row does not have exactly two columns
    """
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for number, record in enumerate(csv.reader(handle, delimiter="\t"), start=1):
            if not record or record[0].startswith("#"):
                continue
            if len(record) != 2:
                raise ConfigurationError(f"{path}:{number}: expected 'mr<TAB>candidate'")
            rows.append((record[0].strip(), record[1].strip()))
    return rows
