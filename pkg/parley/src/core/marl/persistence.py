"""
Policy files.

A policy file is a versioned JSON document (optionally .gz) holding the
learner config, the action-space fingerprint and tokens, and the four
tables. Loading against a different action space is refused.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import ValidationError

from parley.src.core.errors import PolicyMismatchError
from parley.src.core.marl.config import LearnerConfig
from parley.src.core.marl.table import LearnerTable
from parley.src.utils import file_manager

logger = logging.getLogger(__name__)

POLICY_FORMAT = "parley-policy"
POLICY_VERSION = 1


@dataclass
class PolicyFile:
    role: str
    table: LearnerTable
    config: LearnerConfig
    fingerprint: str
    actions: List[str]


def table_to_dict(table: LearnerTable) -> dict:
    return {
        "n_actions": table.n_actions,
        "states": {
            str(s): {
                "q": [float(x) for x in table.q[s]],
                "pi": [float(x) for x in table.pi[s]],
                "pi_avg": [float(x) for x in table.pi_avg[s]],
                "visits": int(table.visits[s]),
            }
            for s in sorted(table.q)
        },
    }


def table_from_dict(data: dict) -> LearnerTable:
    table = LearnerTable(int(data["n_actions"]))
    for key, entry in data["states"].items():
        s = int(key)
        table.q[s] = np.asarray(entry["q"], dtype=float)
        table.pi[s] = np.asarray(entry["pi"], dtype=float)
        table.pi_avg[s] = np.asarray(entry["pi_avg"], dtype=float)
        table.visits[s] = int(entry["visits"])
    return table


def save_policy(
    path: Union[str, Path],
    table: LearnerTable,
    config: LearnerConfig,
    role: str,
    fingerprint: str,
    actions: List[str],
) -> None:
    document = {
        "format": POLICY_FORMAT,
        "version": POLICY_VERSION,
        "role": role,
        "fingerprint": fingerprint,
        "actions": list(actions),
        "config": config.model_dump(mode="json"),
        "table": table_to_dict(table),
    }
    file_manager.save_json(document, str(path), indent=None)
    logger.debug(f"Saved {role} policy with {len(table)} states to {path}")


def load_policy(
    path: Union[str, Path],
    expected_fingerprint: Optional[str] = None,
    expected_role: Optional[str] = None,
) -> PolicyFile:
    """
    Load a policy file.

    Raises:
        PolicyMismatchError: Unknown format or version, missing file, or a
            role / action-space fingerprint different from the expected one
    """
    document = file_manager.load_json(str(path))
    if document is None:
        raise PolicyMismatchError(f"policy file not found: {path}")
    if document.get("format") != POLICY_FORMAT or document.get("version") != POLICY_VERSION:
        raise PolicyMismatchError(
            f"{path}: unsupported policy format {document.get('format')} v{document.get('version')}"
        )
    if expected_role is not None and document["role"] != expected_role:
        raise PolicyMismatchError(
            f"{path}: policy is for role '{document['role']}', expected '{expected_role}'"
        )
    if expected_fingerprint is not None and document["fingerprint"] != expected_fingerprint:
        raise PolicyMismatchError(
            f"{path}: action-space fingerprint {document['fingerprint'][:12]} does not match "
            f"the running action space {expected_fingerprint[:12]}"
        )
    try:
        config = LearnerConfig.model_validate(document["config"])
    except ValidationError as e:
        raise PolicyMismatchError(f"{path}: invalid learner config: {e}")
    return PolicyFile(
        role=document["role"],
        table=table_from_dict(document["table"]),
        config=config,
        fingerprint=document["fingerprint"],
        actions=list(document["actions"]),
    )
