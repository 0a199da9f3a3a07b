from parley.src.core.ontology.database import (
    Database,
    bundled_database,
    bundled_domain,
    generate_database,
    load_database,
    load_domain,
    query,
    save_database,
    slot_entropy,
)
from parley.src.core.ontology.goals import sample_goal
from parley.src.core.ontology.models import Domain, Goal, GoalConfig, ItemRecord, QueryResult

__all__ = [
    "Database",
    "Domain",
    "Goal",
    "GoalConfig",
    "ItemRecord",
    "QueryResult",
    "bundled_database",
    "bundled_domain",
    "generate_database",
    "load_database",
    "load_domain",
    "query",
    "sample_goal",
    "save_database",
    "slot_entropy",
]
