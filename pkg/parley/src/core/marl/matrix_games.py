"""
Repeated matrix games used to validate the learners.

Matching pennies and rock-paper-scissors are zero-sum with a unique uniform
mixed Nash equilibrium: WoLF-PHC's average policy should settle there while
plain PHC keeps cycling.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from parley.src.core.marl.config import Algorithm, LearnerConfig, MatrixGameConfig
from parley.src.core.marl.learner import TabularLearner
from parley.src.core.marl.stochastic_game import StochasticGame, Transition
from parley.src.core.utils.seeding import MATRIX, derive_rng

logger = logging.getLogger(__name__)

STATE = 0


class MatrixGame(StochasticGame[int]):
    """
    Two-player single-state game; `payoffs[a, b]` is the row player's reward,
    the column player receives its negation.
    """

    def __init__(self, name: str, payoffs: Sequence[Sequence[float]]):
        self.name = name
        self.payoffs = np.asarray(payoffs, dtype=float)

    @property
    def n_agents(self) -> int:
        return 2

    def action_sizes(self) -> Tuple[int, ...]:
        return self.payoffs.shape

    def reset(self, rng: np.random.Generator) -> int:
        return STATE

    def step(self, state: int, actions: Sequence[Optional[int]], rng: np.random.Generator) -> Transition[int]:
        reward = float(self.payoffs[actions[0], actions[1]])
        return Transition(STATE, (reward, -reward), False)

    def scaled(self, factor: float) -> "MatrixGame":
        return MatrixGame(f"{self.name}x{factor:g}", self.payoffs * factor)

    @property
    def equilibrium(self) -> np.ndarray:
        return np.full(self.payoffs.shape[0], 1.0 / self.payoffs.shape[0])


MATCHING_PENNIES = MatrixGame("matching_pennies", [[1, -1], [-1, 1]])
ROCK_PAPER_SCISSORS = MatrixGame("rps", [[0, -1, 1], [1, 0, -1], [-1, 1, 0]])

GAMES = {game.name: game for game in (MATCHING_PENNIES, ROCK_PAPER_SCISSORS)}


@dataclass
class PolicySnapshot:
    step: int
    pi: Tuple[Tuple[float, ...], ...]
    pi_avg: Tuple[Tuple[float, ...], ...]


@dataclass
class MatrixGameTrajectory:
    game: str
    algorithms: Tuple[str, str]
    snapshots: List[PolicySnapshot] = field(default_factory=list)

    @property
    def final_average(self) -> Tuple[Tuple[float, ...], ...]:
        return self.snapshots[-1].pi_avg

    def final_average_deviation(self, target: np.ndarray) -> float:
        """Largest |pi_avg - target| over both agents at the last snapshot."""
        return max(float(np.max(np.abs(np.asarray(p) - target))) for p in self.final_average)

    def tail_policy_deviation(self, target: np.ndarray, fraction: float = 0.1) -> float:
        """Largest |pi - target| over the last `fraction` of snapshots."""
        start = self.snapshots[-1].step * (1.0 - fraction)
        tail = [snap for snap in self.snapshots if snap.step >= start]
        return max(
            float(np.max(np.abs(np.asarray(p) - target))) for snap in tail for p in snap.pi
        )


def run_matrix_game(
    game: MatrixGame,
    row_cfg: LearnerConfig,
    col_cfg: LearnerConfig,
    steps: int,
    seed: int,
    snapshot_every: int = 1000,
) -> MatrixGameTrajectory:
    """
    Self-play a repeated matrix game.

    Returns:
        Snapshots of both agents' current and average policies every
        `snapshot_every` steps and after the last step
    """
    sizes = game.action_sizes()
    learners = [
        TabularLearner(sizes[0], row_cfg, total_steps=steps),
        TabularLearner(sizes[1], col_cfg, total_steps=steps),
    ]
    rngs = [derive_rng(seed, MATRIX, game.payoffs.shape[0], agent) for agent in range(2)]
    env_rng = derive_rng(seed, MATRIX, game.payoffs.shape[0], 2)

    trajectory = MatrixGameTrajectory(game.name, (row_cfg.algorithm.value, col_cfg.algorithm.value))
    state = game.reset(env_rng)
    for t in range(1, steps + 1):
        actions = [learner.act(state, rng) for learner, rng in zip(learners, rngs)]
        transition = game.step(state, actions, env_rng)
        for agent, learner in enumerate(learners):
            learner.learn(state, actions[agent], transition.rewards[agent], transition.state, False)
            learner.advance()
        state = transition.state
        if t % snapshot_every == 0 or t == steps:
            trajectory.snapshots.append(
                PolicySnapshot(
                    step=t,
                    pi=tuple(tuple(float(x) for x in l.table.policy(state)) for l in learners),
                    pi_avg=tuple(
                        tuple(float(x) for x in l.table.average_policy(state)) for l in learners
                    ),
                )
            )
    return trajectory


def validate_matrix_games(cfg: Optional[MatrixGameConfig] = None, seed: int = 0) -> Dict[str, dict]:
    """
    Run the convergence suite.

    Checks: WoLF-PHC average policies within tolerance of the uniform
    equilibrium (matching pennies, rock-paper-scissors), invariance of that
    result to scaling the payoffs, and a larger late-run policy deviation
    for plain PHC than for WoLF-PHC on matching pennies.
    """
    cfg = cfg or MatrixGameConfig()
    wolf = cfg.learner.model_copy(update={"algorithm": Algorithm.WOLF_PHC})
    phc = cfg.learner.model_copy(update={"algorithm": Algorithm.PHC})
    checks: Dict[str, dict] = {}

    def run(game: MatrixGame, learner_cfg: LearnerConfig) -> MatrixGameTrajectory:
        logger.info(f"Running {game.name} with {learner_cfg.algorithm.value} for {cfg.steps} steps")
        return run_matrix_game(game, learner_cfg, learner_cfg, cfg.steps, seed, cfg.snapshot_every)

    pennies_wolf = run(MATCHING_PENNIES, wolf)
    deviation = pennies_wolf.final_average_deviation(MATCHING_PENNIES.equilibrium)
    checks["matching_pennies_wolf_phc"] = {
        "passed": deviation <= cfg.tolerance,
        "final_average_policy": [list(p) for p in pennies_wolf.final_average],
        "deviation": deviation,
        "tolerance": cfg.tolerance,
    }

    scaled = MATCHING_PENNIES.scaled(2.0)
    scaled_wolf = run(scaled, wolf)
    scaled_deviation = scaled_wolf.final_average_deviation(scaled.equilibrium)
    checks["matching_pennies_scaled_wolf_phc"] = {
        "passed": scaled_deviation <= cfg.tolerance,
        "final_average_policy": [list(p) for p in scaled_wolf.final_average],
        "deviation": scaled_deviation,
        "tolerance": cfg.tolerance,
    }

    pennies_phc = run(MATCHING_PENNIES, phc)
    wolf_tail = pennies_wolf.tail_policy_deviation(MATCHING_PENNIES.equilibrium, cfg.tail_fraction)
    phc_tail = pennies_phc.tail_policy_deviation(MATCHING_PENNIES.equilibrium, cfg.tail_fraction)
    checks["matching_pennies_phc_contrast"] = {
        "passed": phc_tail > wolf_tail,
        "phc_tail_deviation": phc_tail,
        "wolf_phc_tail_deviation": wolf_tail,
    }

    rps_wolf = run(ROCK_PAPER_SCISSORS, wolf)
    rps_deviation = rps_wolf.final_average_deviation(ROCK_PAPER_SCISSORS.equilibrium)
    checks["rps_wolf_phc"] = {
        "passed": rps_deviation <= cfg.tolerance,
        "final_average_policy": [list(p) for p in rps_wolf.final_average],
        "deviation": rps_deviation,
        "tolerance": cfg.tolerance,
    }
    return checks
