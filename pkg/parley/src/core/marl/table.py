from typing import Dict, Hashable, Iterator

import numpy as np


class LearnerTable:
    """
    Per-state Q-values, current policy, average policy and visit counts.

    Unvisited states read as zero Q and uniform policies; `ensure` materialises them.
    """

    def __init__(self, n_actions: int):
        if n_actions < 1:
            raise ValueError("n_actions must be >= 1")
        self.n_actions = n_actions
        self.q: Dict[Hashable, np.ndarray] = {}
        self.pi: Dict[Hashable, np.ndarray] = {}
        self.pi_avg: Dict[Hashable, np.ndarray] = {}
        self.visits: Dict[Hashable, int] = {}

    def uniform(self) -> np.ndarray:
        return np.full(self.n_actions, 1.0 / self.n_actions)

    def ensure(self, s: Hashable) -> None:
        if s not in self.q:
            self.q[s] = np.zeros(self.n_actions)
            self.pi[s] = self.uniform()
            self.pi_avg[s] = self.uniform()
            self.visits[s] = 0

    def q_values(self, s: Hashable) -> np.ndarray:
        values = self.q.get(s)
        return values if values is not None else np.zeros(self.n_actions)

    def policy(self, s: Hashable) -> np.ndarray:
        values = self.pi.get(s)
        return values if values is not None else self.uniform()

    def average_policy(self, s: Hashable) -> np.ndarray:
        values = self.pi_avg.get(s)
        return values if values is not None else self.uniform()

    def states(self) -> Iterator[Hashable]:
        return iter(self.q)

    def __len__(self) -> int:
        return len(self.q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LearnerTable):
            return NotImplemented
        if self.n_actions != other.n_actions or self.visits != other.visits:
            return False
        return all(
            np.array_equal(mine[s], theirs[s])
            for mine, theirs in ((self.q, other.q), (self.pi, other.pi), (self.pi_avg, other.pi_avg))
            for s in self.visits
        )

    def copy(self) -> "LearnerTable":
        table = LearnerTable(self.n_actions)
        table.q = {s: v.copy() for s, v in self.q.items()}
        table.pi = {s: v.copy() for s, v in self.pi.items()}
        table.pi_avg = {s: v.copy() for s, v in self.pi_avg.items()}
        table.visits = dict(self.visits)
        return table
