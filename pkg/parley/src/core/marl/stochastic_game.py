"""
Stochastic game interface: (n, S, A_1..n, T, R_1..n).

Both the repeated matrix games and the two-player dialogue game implement it.
In turn-based games only the agents listed by `to_move` act in a step; the
others' entries in the joint action are ignored.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Generic, Hashable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

StateT = TypeVar("StateT")


@dataclass(frozen=True)
class Transition(Generic[StateT]):
    state: StateT
    rewards: Tuple[float, ...]
    terminal: bool


class StochasticGame(ABC, Generic[StateT]):
    @property
    @abstractmethod
    def n_agents(self) -> int:
        """Number of players."""

    @abstractmethod
    def action_sizes(self) -> Tuple[int, ...]:
        """Size of each agent's action set."""

    @abstractmethod
    def reset(self, rng: np.random.Generator) -> StateT:
        """Initial state."""

    @abstractmethod
    def step(
        self, state: StateT, actions: Sequence[Optional[int]], rng: np.random.Generator
    ) -> Transition[StateT]:
        """Sample the next state and per-agent rewards for a joint action."""

    def to_move(self, state: StateT) -> List[int]:
        """Agents acting in `state`; simultaneous-move games return everyone."""
        return list(range(self.n_agents))

    def observation(self, state: StateT, agent: int) -> Hashable:
        """Discrete state id the agent learns on."""
        return 0
