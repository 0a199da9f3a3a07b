"""
Validation utilities for CLI inputs.
"""

from pathlib import Path
from typing import Dict, Iterable, Optional

from parley.cli.utils.errors import ConfigurationError
from parley.src.config import policy_filename
from parley.src.core.acts.models import Role
from parley.src.core.errors import PolicyMismatchError
from parley.src.core.marl.persistence import load_policy

# names that select the handcrafted policy of a role instead of a policy file
HANDCRAFTED_NAMES = {
    Role.SEEKER: {"handcrafted", "agenda"},
    Role.PROVIDER: {"handcrafted", "rule"},
}


def policy_role(path: Path) -> Role:
    """Role a policy file was trained for."""
    try:
        return Role(load_policy(path).role)
    except PolicyMismatchError as e:
        raise ConfigurationError(e.message)


def resolve_policy_sources(
    policies: Iterable[str] = (),
    seeker_policy: Optional[str] = None,
    provider_policy: Optional[str] = None,
) -> Dict[Role, Optional[Path]]:
    """
    Work out where each role's evaluation policy comes from.

    `policies` entries are training run directories (both role files are
    taken from them) or single policy files (their role is read from the
    file). `seeker_policy` / `provider_policy` take a file or a handcrafted
    name and win over `policies`. Roles left unset use the handcrafted policy.

    Returns:
        Role -> policy path, or None for the handcrafted policy

    Raises:
        ConfigurationError: On missing paths, unknown names or two files for one role
    """
    sources: Dict[Role, Optional[Path]] = {}
    for entry in policies:
        path = Path(entry).expanduser()
        if path.is_dir():
            for role in Role:
                candidate = path / policy_filename(role.value)
                if not candidate.exists():
                    raise ConfigurationError(f"No {role.value} policy in {path} (expected {candidate.name})")
                _assign(sources, role, candidate)
        elif path.is_file():
            _assign(sources, policy_role(path), path)
        else:
            raise ConfigurationError(f"Policy path does not exist: {path}")

    for role, value in ((Role.SEEKER, seeker_policy), (Role.PROVIDER, provider_policy)):
        if value is None:
            continue
        if value in HANDCRAFTED_NAMES[role]:
            sources[role] = None
            continue
        path = Path(value).expanduser()
        if not path.is_file():
            names = ", ".join(sorted(HANDCRAFTED_NAMES[role]))
            raise ConfigurationError(f"--{role.value}-policy must be a policy file or one of: {names}")
        sources[role] = path

    return {role: sources.get(role) for role in Role}


def _assign(sources: Dict[Role, Optional[Path]], role: Role, path: Path) -> None:
    if sources.get(role) is not None and sources[role] != path:
        raise ConfigurationError(f"Two {role.value} policies given: {sources[role]} and {path}")
    sources[role] = path
