from parley.src.core.marl.config import Algorithm, LearnerConfig, MatrixGameConfig
from parley.src.core.marl.learner import TabularLearner
from parley.src.core.marl.matrix_games import (
    MATCHING_PENNIES,
    ROCK_PAPER_SCISSORS,
    MatrixGame,
    run_matrix_game,
    validate_matrix_games,
)
from parley.src.core.marl.persistence import PolicyFile, load_policy, save_policy
from parley.src.core.marl.stochastic_game import StochasticGame, Transition
from parley.src.core.marl.table import LearnerTable
from parley.src.core.marl.updates import (
    avg_policy_update,
    greedy_policy_update,
    phc_policy_update,
    q_update,
    select_action,
    wolf_phc_policy_update,
)

__all__ = [
    "Algorithm",
    "LearnerConfig",
    "LearnerTable",
    "MATCHING_PENNIES",
    "MatrixGame",
    "MatrixGameConfig",
    "PolicyFile",
    "ROCK_PAPER_SCISSORS",
    "StochasticGame",
    "TabularLearner",
    "Transition",
    "avg_policy_update",
    "greedy_policy_update",
    "load_policy",
    "phc_policy_update",
    "q_update",
    "run_matrix_game",
    "save_policy",
    "select_action",
    "validate_matrix_games",
    "wolf_phc_policy_update",
]
