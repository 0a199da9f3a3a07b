from typing import Hashable, Optional

import numpy as np

from parley.src.core.marl.config import LearnerConfig
from parley.src.core.marl.table import LearnerTable
from parley.src.core.marl.updates import (
    avg_policy_update,
    policy_update,
    q_update,
    select_action,
    visit,
)


class TabularLearner:
    """
    One agent's learning state: its table, hyperparameters and exploration schedule.

    Args:
        n_actions: Size of the agent's action space
        cfg: Learner hyperparameters
        table: Existing table to continue from
        total_steps: Run length used when cfg.epsilon_decay_steps is unset
    """

    def __init__(
        self,
        n_actions: int,
        cfg: LearnerConfig,
        table: Optional[LearnerTable] = None,
        total_steps: Optional[int] = None,
    ):
        self.cfg = cfg
        self.table = table if table is not None else LearnerTable(n_actions)
        if self.table.n_actions != n_actions:
            raise ValueError(
                f"table has {self.table.n_actions} actions, expected {n_actions}"
            )
        self.total_steps = total_steps
        self.step = 0

    @property
    def n_actions(self) -> int:
        return self.table.n_actions

    @property
    def epsilon(self) -> float:
        return self.cfg.epsilon_at(self.step, self.total_steps)

    def act(self, s: Hashable, rng: np.random.Generator, epsilon: Optional[float] = None) -> int:
        return select_action(self.table, s, self.epsilon if epsilon is None else epsilon, rng)

    def learn(
        self, s: Hashable, a: int, r: float, s_next: Optional[Hashable], terminal: bool
    ) -> None:
        """Q update, visit count, average policy, then policy improvement."""
        q_update(self.table, s, a, r, s_next, terminal, self.cfg)
        visit(self.table, s)
        avg_policy_update(self.table, s)
        policy_update(self.table, s, self.cfg)

    def advance(self, steps: int = 1) -> None:
        """Advance the exploration schedule (one step per training dialogue or game round)."""
        self.step += steps
