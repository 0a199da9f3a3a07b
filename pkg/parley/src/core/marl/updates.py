"""
Tabular update rules: Q-learning, average policy, PHC / WoLF-PHC hill climbing.
"""

from typing import Hashable, Optional

import numpy as np

from parley.src.core.marl.config import Algorithm, LearnerConfig
from parley.src.core.marl.table import LearnerTable


def q_update(
    table: LearnerTable,
    s: Hashable,
    a: int,
    r: float,
    s_next: Optional[Hashable],
    terminal: bool,
    cfg: LearnerConfig,
    alpha: Optional[float] = None,
) -> LearnerTable:
    """
    Q(s,a) <- (1 - alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a')).

    Terminal transitions bootstrap from 0. `alpha` overrides the schedule.
    """
    table.ensure(s)
    if alpha is None:
        alpha = cfg.alpha_at(table.visits[s])
    bootstrap = 0.0 if terminal or s_next is None else float(np.max(table.q_values(s_next)))
    target = r + cfg.gamma * bootstrap
    table.q[s][a] = (1.0 - alpha) * table.q[s][a] + alpha * target
    return table


def visit(table: LearnerTable, s: Hashable) -> LearnerTable:
    table.ensure(s)
    table.visits[s] += 1
    return table


def avg_policy_update(table: LearnerTable, s: Hashable) -> LearnerTable:
    """pi_avg(s) <- pi_avg(s) + (pi(s) - pi_avg(s)) / C(s); C(s) must already count this visit."""
    table.ensure(s)
    count = table.visits[s]
    if count < 1:
        raise ValueError("average policy update before the state was visited")
    table.pi_avg[s] = table.pi_avg[s] + (table.pi[s] - table.pi_avg[s]) / count
    return table


def is_winning(table: LearnerTable, s: Hashable) -> bool:
    """Strictly better expected value under pi than under pi_avg; equality loses."""
    q = table.q_values(s)
    return float(np.dot(table.policy(s), q)) > float(np.dot(table.average_policy(s), q))


def hill_climb(table: LearnerTable, s: Hashable, delta: float) -> LearnerTable:
    """
    Move up to `delta` probability mass onto the greedy action.

    Each other action gives min(pi(s,a), delta / (|A| - 1)); the greedy action
    (lowest index on ties) receives the total.
    """
    table.ensure(s)
    if table.n_actions == 1:
        return table
    pi = table.pi[s].copy()
    best = int(np.argmax(table.q[s]))
    step = delta / (table.n_actions - 1)
    losses = np.minimum(pi, step)
    losses[best] = 0.0
    pi -= losses
    pi[best] += losses.sum()
    table.pi[s] = pi
    return table


def wolf_phc_policy_update(table: LearnerTable, s: Hashable, cfg: LearnerConfig) -> LearnerTable:
    delta = cfg.delta_w if is_winning(table, s) else cfg.delta_l
    return hill_climb(table, s, delta)


def phc_policy_update(table: LearnerTable, s: Hashable, cfg: LearnerConfig) -> LearnerTable:
    return hill_climb(table, s, cfg.delta_l)


def greedy_policy_update(table: LearnerTable, s: Hashable) -> LearnerTable:
    table.ensure(s)
    pi = np.zeros(table.n_actions)
    pi[int(np.argmax(table.q[s]))] = 1.0
    table.pi[s] = pi
    return table


def policy_update(table: LearnerTable, s: Hashable, cfg: LearnerConfig) -> LearnerTable:
    if cfg.algorithm is Algorithm.WOLF_PHC:
        return wolf_phc_policy_update(table, s, cfg)
    if cfg.algorithm is Algorithm.PHC:
        return phc_policy_update(table, s, cfg)
    return greedy_policy_update(table, s)


def select_action(
    table: LearnerTable, s: Hashable, epsilon: float, rng: np.random.Generator
) -> int:
    """With probability epsilon a uniform action, otherwise a draw from pi(s)."""
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(table.n_actions))
    cumulative = np.cumsum(table.policy(s))
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(index, table.n_actions - 1)
