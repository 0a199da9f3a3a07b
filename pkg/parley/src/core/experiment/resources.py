"""
Builds the domain, database, template stores and action spaces an
experiment runs on.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

from parley.src.config import ExperimentConfig
from parley.src.core.acts.action_space import ActionSpace, build_action_space
from parley.src.core.acts.models import Role
from parley.src.core.game.agents import realizable_mrs
from parley.src.core.game.config import EpisodeConfig
from parley.src.core.game.episode import DialogueGame
from parley.src.core.language.templates import TemplateStore, load_templates
from parley.src.core.ontology.database import (
    Database,
    bundled_database,
    bundled_domain,
    generate_database,
    load_database,
    load_domain,
)
from parley.src.core.ontology.models import Domain
from parley.src.core.utils.seeding import derive_seed

logger = logging.getLogger(__name__)

DATABASE_STREAM = "database"


@dataclass
class Resources:
    domain: Domain
    db: Database
    stores: Dict[Role, TemplateStore]
    spaces: Dict[Role, ActionSpace]
    cfg: ExperimentConfig

    def game(self, episode: Optional[EpisodeConfig] = None) -> DialogueGame:
        return DialogueGame(self.db, episode or self.cfg.episode, self.stores, self.spaces, self.cfg.goal)


def build_resources(cfg: ExperimentConfig) -> Resources:
    domain = load_domain(cfg.domain_path) if cfg.domain_path is not None else bundled_domain()

    if cfg.generated_items is not None:
        db = generate_database(domain, cfg.generated_items, derive_seed(cfg.seed, DATABASE_STREAM))
    elif cfg.database_path is not None:
        db = load_database(cfg.database_path, domain)
    else:
        db = bundled_database(domain)

    stores = {role: load_templates(role, cfg.templates_dir) for role in Role}
    spaces = {role: build_action_space(domain, role, cfg.action_space) for role in Role}

    for role in Role:
        missing = stores[role].missing(realizable_mrs(role, spaces[role], domain))
        if missing:
            logger.warning(
                f"{role.value} templates do not cover {len(missing)} realisable MRs "
                f"(generic rendering will be used): {', '.join(missing[:5])}"
            )
    logger.info(f"Domain '{domain.name}': {len(db)} items, action spaces "
                f"{len(spaces[Role.SEEKER])}/{len(spaces[Role.PROVIDER])}")
    return Resources(domain, db, stores, spaces, cfg)
