"""
Seeker goal sampling.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from parley.src.core.ontology.database import Database
from parley.src.core.ontology.models import Domain, Goal, GoalConfig, ordered_subset

logger = logging.getLogger(__name__)


def _pick(rng: np.random.Generator, items: List[str], k: int) -> List[str]:
    if k >= len(items):
        return list(items)
    chosen = rng.choice(len(items), size=k, replace=False)
    return [items[i] for i in sorted(int(c) for c in chosen)]


def _request_pool(domain: Domain, cfg: GoalConfig, constrained: List[str]) -> List[str]:
    base = cfg.request_pool if cfg.request_pool is not None else domain.requestable_slots
    return [
        slot for slot in base
        if slot in domain.requestable_slots
        and slot not in constrained
        and slot != domain.primary_key
    ]


def _satisfiable_constraints(
    domain: Domain, db: Database, rng: np.random.Generator, slots: List[str], cfg: GoalConfig
) -> Dict[str, str]:
    item = db.items[int(rng.integers(len(db)))]
    constraints = {}
    for slot in slots:
        if cfg.p_dontcare > 0.0 and rng.random() < cfg.p_dontcare:
            constraints[slot] = domain.dontcare_token
        else:
            constraints[slot] = item[slot]
    return constraints


def _unsatisfiable_constraints(
    domain: Domain, db: Database, rng: np.random.Generator, slots: List[str], cfg: GoalConfig
) -> Optional[Dict[str, str]]:
    for _ in range(cfg.max_unsatisfiable_attempts):
        constraints = {
            slot: domain.values(slot)[int(rng.integers(len(domain.values(slot))))]
            for slot in slots
        }
        if db.query(constraints).count == 0:
            return constraints
    return None


def sample_goal(
    domain: Domain, db: Database, rng: np.random.Generator, cfg: Optional[GoalConfig] = None
) -> Goal:
    """
    Sample a seeker goal.

    With probability cfg.p_satisfiable the constraints are read off a random
    database item, so the goal always has at least one match. Otherwise random
    value combinations are tried until one matches nothing; if none is found
    the sampler falls back to a satisfiable goal and logs a warning.

    Args:
        domain: Domain the goal is expressed over
        db: Item database used to check satisfiability
        rng: Goal random stream
        cfg: Sampler settings (defaults when omitted)

    Returns:
        A valid Goal with constraints in domain slot order
    """
    cfg = cfg or GoalConfig()
    informables = domain.informable_names
    n_constraints = int(rng.integers(cfg.min_constraints, cfg.max_constraints + 1))
    slots = _pick(rng, informables, min(n_constraints, len(informables)))

    satisfiable = cfg.p_satisfiable >= 1.0 or rng.random() < cfg.p_satisfiable
    constraints = None
    if not satisfiable:
        constraints = _unsatisfiable_constraints(domain, db, rng, slots, cfg)
        if constraints is None:
            logger.warning(
                f"Could not find an unsatisfiable combination for {slots} after "
                f"{cfg.max_unsatisfiable_attempts} attempts; using a satisfiable goal"
            )
    if constraints is None:
        constraints = _satisfiable_constraints(domain, db, rng, slots, cfg)

    pool = _request_pool(domain, cfg, slots)
    n_requests = int(rng.integers(cfg.min_requests, cfg.max_requests + 1))
    requests = _pick(rng, pool, min(n_requests, len(pool)))
    if not requests:
        requests = [domain.primary_key]

    ordered = {slot: constraints[slot] for slot in ordered_subset(informables, constraints)}
    return Goal(constraints=ordered, requests=tuple(requests))
