"""
Evaluation of trained (or handcrafted) agent pairs.

Learning is off and exploration is zero. Each repetition draws goals and
channel noise from its own derived seed; episodes may be spread over worker
processes, and results are always reduced in episode order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from parley.src.config import ExperimentConfig
from parley.src.core.acts.models import Role
from parley.src.core.experiment.resources import Resources, build_resources
from parley.src.core.experiment.trainer import goal_for_episode
from parley.src.core.game.agents import DialogueAgent, LearningAgent
from parley.src.core.game.config import EpisodeConfig
from parley.src.core.game.episode import EpisodeOutcome, EpisodeStreams, run_episode
from parley.src.core.game.policies import handcrafted_agent
from parley.src.core.marl.learner import TabularLearner
from parley.src.core.marl.persistence import load_policy
from parley.src.core.utils.seeding import EVAL, derive_seed

logger = logging.getLogger(__name__)

HANDCRAFTED = "handcrafted"

# role -> policy file, or None for the handcrafted policy of that role
PolicySources = Mapping[Role, Optional[Path]]


@dataclass(frozen=True)
class EpisodeSummary:
    success: bool
    seeker_return: float
    provider_return: float
    turns: int

    @classmethod
    def of(cls, outcome: EpisodeOutcome) -> "EpisodeSummary":
        return cls(outcome.objective_success, outcome.seeker_return, outcome.provider_return, outcome.turns)


@dataclass
class RepetitionReport:
    repetition: int
    seed: int
    n_dialogues: int
    success_rate: float
    seeker_return: float
    provider_return: float
    avg_turns: float

    @classmethod
    def from_summaries(cls, repetition: int, seed: int, summaries: List[EpisodeSummary]) -> "RepetitionReport":
        values = np.asarray(
            [(s.success, s.seeker_return, s.provider_return, s.turns) for s in summaries], dtype=float
        )
        means = values.mean(axis=0)
        return cls(repetition, seed, len(summaries), *(float(v) for v in means))


@dataclass
class EvaluationReport:
    """Per-repetition metrics plus their mean and standard deviation."""
    pairing: Dict[str, str]
    repetitions: List[RepetitionReport] = field(default_factory=list)

    METRICS = ("success_rate", "seeker_return", "provider_return", "avg_turns")

    def mean(self, metric: str) -> float:
        return float(np.mean([getattr(r, metric) for r in self.repetitions]))

    def std(self, metric: str) -> float:
        return float(np.std([getattr(r, metric) for r in self.repetitions]))

    def to_dict(self) -> dict:
        return {
            "pairing": dict(self.pairing),
            "mean": {metric: self.mean(metric) for metric in self.METRICS},
            "std": {metric: self.std(metric) for metric in self.METRICS},
            "repetitions": [asdict(r) for r in self.repetitions],
        }


def build_agent(role: Role, source: Optional[Path], resources: Resources) -> DialogueAgent:
    """
    Evaluation agent for a role.

    Raises:
        PolicyMismatchError: If the policy file was trained on a different action space or role
    """
    space = resources.spaces[role]
    if source is None:
        return handcrafted_agent(role, space, resources.domain)
    policy = load_policy(source, expected_fingerprint=space.fingerprint, expected_role=role.value)
    learner = TabularLearner(len(space), policy.config, policy.table)
    return LearningAgent(role, space, learner, train=False)


def describe_sources(sources: PolicySources) -> Dict[str, str]:
    return {role.value: str(sources.get(role) or HANDCRAFTED) for role in Role}


def run_episodes(
    resources: Resources,
    sources: PolicySources,
    eval_seed: int,
    indices: range,
    keep_outcomes: bool = False,
    episode: Optional[EpisodeConfig] = None,
) -> Tuple[List[EpisodeSummary], List[EpisodeOutcome]]:
    game = resources.game(episode)
    agents = {role: build_agent(role, sources.get(role), resources) for role in Role}
    summaries: List[EpisodeSummary] = []
    outcomes: List[EpisodeOutcome] = []
    for index in indices:
        goal = goal_for_episode(resources, eval_seed, index)
        outcome = run_episode(
            game,
            agents[Role.SEEKER],
            agents[Role.PROVIDER],
            goal,
            EpisodeStreams.derive(eval_seed, index),
            learning=False,
        )
        summaries.append(EpisodeSummary.of(outcome))
        if keep_outcomes:
            outcomes.append(outcome)
    return summaries, outcomes


def _run_chunk(task: Tuple[ExperimentConfig, Dict[Role, Optional[Path]], int, int, int, bool]):
    cfg, sources, eval_seed, start, stop, keep = task
    return run_episodes(build_resources(cfg), sources, eval_seed, range(start, stop), keep, cfg.episode)


def _chunks(n: int, workers: int) -> List[Tuple[int, int]]:
    bounds = np.linspace(0, n, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def evaluate(
    cfg: ExperimentConfig,
    sources: PolicySources,
    resources: Optional[Resources] = None,
    on_repetition: Optional[Callable[[RepetitionReport], None]] = None,
) -> Tuple[EvaluationReport, Dict[int, List[EpisodeOutcome]]]:
    """
    Evaluate a seeker/provider pairing.

    Args:
        cfg: Experiment settings (n_eval_dialogues, n_repetitions, eval_workers)
        sources: Policy file per role; a missing or None entry uses the handcrafted policy
        resources: Pre-built resources (built from cfg when omitted)
        on_repetition: Called with each finished RepetitionReport

    Returns:
        The report and, when cfg.save_transcripts, the outcomes per repetition
    """
    resources = resources or build_resources(cfg)
    sources = dict(sources)
    report = EvaluationReport(pairing=describe_sources(sources))
    kept: Dict[int, List[EpisodeOutcome]] = {}

    # fail before spawning workers if a policy does not fit
    for role in Role:
        build_agent(role, sources.get(role), resources)

    for repetition in range(cfg.n_repetitions):
        eval_seed = derive_seed(cfg.seed, EVAL, repetition)
        if cfg.eval_workers > 1:
            tasks = [
                (cfg, sources, eval_seed, start, stop, cfg.save_transcripts)
                for start, stop in _chunks(cfg.n_eval_dialogues, cfg.eval_workers)
            ]
            summaries, outcomes = [], []
            with ProcessPoolExecutor(max_workers=cfg.eval_workers) as executor:
                for chunk_summaries, chunk_outcomes in executor.map(_run_chunk, tasks):
                    summaries.extend(chunk_summaries)
                    outcomes.extend(chunk_outcomes)
        else:
            summaries, outcomes = run_episodes(
                resources,
                sources,
                eval_seed,
                range(cfg.n_eval_dialogues),
                cfg.save_transcripts,
                cfg.episode,
            )

        repetition_report = RepetitionReport.from_summaries(repetition, eval_seed, summaries)
        report.repetitions.append(repetition_report)
        if cfg.save_transcripts:
            kept[repetition] = outcomes
        logger.info(
            f"Repetition {repetition + 1}/{cfg.n_repetitions}: "
            f"success {repetition_report.success_rate:.3f}, turns {repetition_report.avg_turns:.2f}"
        )
        if on_repetition is not None:
            on_repetition(repetition_report)
    return report, kept
