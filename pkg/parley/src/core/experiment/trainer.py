"""
Self-play training of a seeker and a provider learner.

Both agents learn concurrently over n_train_dialogues episodes. Every
checkpoint_every dialogues a learning-curve row (windowed metrics) is
appended and a checkpoint is written; an interrupted run resumes from the
last checkpoint and produces the same files as an uninterrupted one.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

import yaml

from parley.src.config import (
    CHECKPOINT_DIR,
    CHECKPOINT_STATE_FILENAME,
    CURVE_FILENAME,
    EFFECTIVE_CONFIG_FILENAME,
    ExperimentConfig,
    policy_filename,
)
from parley.src.core.acts.models import Role
from parley.src.core.errors import CheckpointMismatchError
from parley.src.core.experiment.curves import CurveRow, MetricsWindow, write_curve
from parley.src.core.experiment.resources import Resources, build_resources
from parley.src.core.game.agents import LearningAgent
from parley.src.core.game.episode import EpisodeOutcome, EpisodeStreams, run_episode
from parley.src.core.marl.learner import TabularLearner
from parley.src.core.marl.persistence import load_policy, save_policy
from parley.src.core.ontology.goals import sample_goal
from parley.src.core.utils.seeding import GOAL, derive_rng
from parley.src.utils import file_manager

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 2

# settings that do not change what training does
EVALUATION_ONLY = {"output_dir", "n_eval_dialogues", "n_repetitions", "eval_workers", "save_transcripts"}


@dataclass
class TrainingResult:
    output_dir: Path
    rows: List[CurveRow]
    policy_paths: Dict[Role, Path]
    dialogues: int
    resumed_from: int = 0

    @property
    def final_row(self) -> Optional[CurveRow]:
        return self.rows[-1] if self.rows else None


def write_effective_config(cfg: ExperimentConfig, path: Path) -> None:
    document = cfg.model_dump(mode="json")
    file_manager.save_text(yaml.safe_dump(document, sort_keys=False), str(path))


def training_config(cfg: ExperimentConfig) -> dict:
    """The part of the config a checkpoint must agree with to be resumed."""
    return cfg.model_dump(mode="json", exclude=EVALUATION_ONLY)


def goal_for_episode(resources: Resources, seed: int, index: int):
    return sample_goal(resources.domain, resources.db, derive_rng(seed, GOAL, index), resources.cfg.goal)


@dataclass
class Trainer:
    """
    Args:
        cfg: Experiment settings
        output_dir: Run directory; defaults to cfg.output_dir
        resources: Pre-built resources (built from cfg when omitted)
        on_episode: Called with (dialogues done, outcome) after every episode
    """
    cfg: ExperimentConfig
    output_dir: Optional[Path] = None
    resources: Optional[Resources] = None
    on_episode: Optional[Callable[[int, EpisodeOutcome], None]] = None
    learners: Dict[Role, TabularLearner] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.output_dir = Path(self.output_dir or self.cfg.output_dir)
        if self.resources is None:
            self.resources = build_resources(self.cfg)
        for role in Role:
            self.learners[role] = TabularLearner(
                len(self.resources.spaces[role]),
                self.cfg.learner(role.value),
                total_steps=self.cfg.n_train_dialogues,
            )

    @property
    def checkpoint_dir(self) -> Path:
        return self.output_dir / CHECKPOINT_DIR

    def train(self, resume: bool = False) -> TrainingResult:
        cfg = self.cfg
        window = MetricsWindow(cfg.curve_window)
        rows: List[CurveRow] = []
        start = 0
        if resume:
            start, rows, window = self._restore()

        file_manager.ensure_directory(str(self.output_dir))
        write_effective_config(cfg, self.output_dir / EFFECTIVE_CONFIG_FILENAME)

        game = self.resources.game()
        agents = {
            role: LearningAgent(role, self.resources.spaces[role], self.learners[role], train=True)
            for role in Role
        }
        logger.info(
            f"Training {cfg.seeker.algorithm.value} seeker vs {cfg.provider.algorithm.value} provider "
            f"for {cfg.n_train_dialogues} dialogues ({cfg.episode.channel_mode.value} channel)"
        )

        for index in range(start, cfg.n_train_dialogues):
            goal = goal_for_episode(self.resources, cfg.seed, index)
            outcome = run_episode(
                game,
                agents[Role.SEEKER],
                agents[Role.PROVIDER],
                goal,
                EpisodeStreams.derive(cfg.seed, index),
                learning=True,
            )
            window.add(outcome)
            done = index + 1
            if self.on_episode is not None:
                self.on_episode(done, outcome)
            if done % cfg.checkpoint_every == 0 or done == cfg.n_train_dialogues:
                row = window.row(done)
                rows.append(row)
                logger.debug(
                    f"{done} dialogues: success {row.success_rate:.3f}, turns {row.avg_turns:.2f}"
                )
                self._checkpoint(done, rows, window)

        policy_paths = self._save_policies(self.output_dir)
        write_curve(self.output_dir / CURVE_FILENAME, rows)
        return TrainingResult(self.output_dir, rows, policy_paths, cfg.n_train_dialogues, start)

    def _save_policies(self, directory: Path) -> Dict[Role, Path]:
        paths = {}
        for role in Role:
            space = self.resources.spaces[role]
            path = directory / policy_filename(role.value)
            save_policy(
                path,
                self.learners[role].table,
                self.learners[role].cfg,
                role.value,
                space.fingerprint,
                space.tokens,
            )
            paths[role] = path
        return paths

    def _checkpoint(self, done: int, rows: List[CurveRow], window: MetricsWindow) -> None:
        file_manager.ensure_directory(str(self.checkpoint_dir))
        self._save_policies(self.checkpoint_dir)
        write_curve(self.output_dir / CURVE_FILENAME, rows)
        state = {
            "version": CHECKPOINT_VERSION,
            "seed": self.cfg.seed,
            "config": training_config(self.cfg),
            "dialogues": done,
            "rows": [row.to_dict() for row in rows],
            "window": window.to_list(),
        }
        file_manager.save_json(state, str(self.checkpoint_dir / CHECKPOINT_STATE_FILENAME), indent=None)

    def _restore(self):
        state = file_manager.load_json(str(self.checkpoint_dir / CHECKPOINT_STATE_FILENAME))
        if state is None:
            logger.warning(f"No checkpoint in {self.checkpoint_dir}, starting from scratch")
            return 0, [], MetricsWindow(self.cfg.curve_window)
        if state.get("version") != CHECKPOINT_VERSION or state.get("seed") != self.cfg.seed:
            raise CheckpointMismatchError(f"checkpoint in {self.checkpoint_dir} belongs to a different run")
        stored, current = state.get("config") or {}, training_config(self.cfg)
        changed = sorted(key for key in stored.keys() | current.keys() if stored.get(key) != current.get(key))
        if changed:
            raise CheckpointMismatchError(
                f"checkpoint in {self.checkpoint_dir} was written under different settings: {', '.join(changed)}",
                changed,
            )

        done = int(state["dialogues"])
        for role in Role:
            space = self.resources.spaces[role]
            policy = load_policy(
                self.checkpoint_dir / policy_filename(role.value),
                expected_fingerprint=space.fingerprint,
                expected_role=role.value,
            )
            learner = TabularLearner(
                len(space), self.cfg.learner(role.value), policy.table, self.cfg.n_train_dialogues
            )
            learner.step = done
            self.learners[role] = learner
        rows = [CurveRow(**row) for row in state["rows"]]
        window = MetricsWindow.from_list(self.cfg.curve_window, state["window"])
        logger.info(f"Resuming from checkpoint at {done} dialogues")
        return done, rows, window


def train(cfg: ExperimentConfig, output_dir: Optional[Path] = None, resume: bool = False) -> TrainingResult:
    return Trainer(cfg, output_dir).train(resume=resume)
