"""
Per-role discrete action spaces.

One act per turn and one slot argument per act; slot values are filled in
from the tracked dialogue state when an action is realised.
"""

import hashlib
import re
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from parley.src.core.acts.models import THIS_SLOT, Intent, PolicyAction, Role
from parley.src.core.errors import ActionSpaceSizeError
from parley.src.core.ontology.models import Domain

SEEKER_SLOTLESS = [
    Intent.HELLO, Intent.ACK, Intent.AFFIRM, Intent.NEGATE, Intent.THANKYOU, Intent.BYE,
    Intent.REQALTS, Intent.REQMORE, Intent.REPEAT, Intent.RESTART, Intent.DENY, Intent.CONFIRM,
]
PROVIDER_SLOTLESS = [
    Intent.WELCOMEMSG, Intent.OFFER, Intent.BYE, Intent.REPEAT, Intent.REQMORE, Intent.CANTHELP,
]

_ACTION_TOKEN = re.compile(r"^act_([a-z_]+)(?:\(([a-z_]+)\))?$")


class ActionSpaceConfig(BaseModel):
    """
    Action-space settings.

    Attributes:
        expected_size: Size every role's space must have; None disables the check
        seeker_actions: Explicit token list ('act_inform(food)') replacing the default seeker space
        provider_actions: Explicit token list replacing the default provider space
    """
    expected_size: Optional[int] = Field(default=23, ge=1)
    seeker_actions: Optional[List[str]] = None
    provider_actions: Optional[List[str]] = None


def parse_action(token: str) -> PolicyAction:
    match = _ACTION_TOKEN.match(token.strip())
    if not match:
        raise ValueError(f"malformed action token: {token}")
    return PolicyAction(Intent(match.group(1)), match.group(2))


def _default_seeker(domain: Domain) -> List[PolicyAction]:
    actions = [PolicyAction(intent) for intent in SEEKER_SLOTLESS]
    actions += [PolicyAction(Intent.INFORM, slot) for slot in domain.informable_names]
    actions.append(PolicyAction(Intent.INFORM, THIS_SLOT))
    actions += [PolicyAction(Intent.REQUEST, slot) for slot in domain.requestable_slots]
    return actions


def _default_provider(domain: Domain) -> List[PolicyAction]:
    informables = domain.informable_names
    actions = [PolicyAction(intent) for intent in PROVIDER_SLOTLESS]
    actions += [PolicyAction(Intent.INFORM, slot) for slot in domain.requestable_slots]
    actions += [PolicyAction(Intent.REQUEST, slot) for slot in informables]
    actions += [PolicyAction(Intent.EXPL_CONF, slot) for slot in informables]
    actions += [PolicyAction(Intent.SELECT, slot) for slot in informables]
    actions.append(PolicyAction(Intent.ACK))
    return actions


class ActionSpace:
    """Ordered, duplicate-free list of a role's PolicyActions."""

    def __init__(self, role: Role, actions: Sequence[PolicyAction]):
        if len(set(actions)) != len(actions):
            raise ValueError(f"{role.value} action space contains duplicates")
        self.role = role
        self._actions: Tuple[PolicyAction, ...] = tuple(actions)
        self._index = {action: i for i, action in enumerate(self._actions)}

    def __len__(self) -> int:
        return len(self._actions)

    def __getitem__(self, index: int) -> PolicyAction:
        return self._actions[index]

    def __iter__(self) -> Iterator[PolicyAction]:
        return iter(self._actions)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ActionSpace):
            return NotImplemented
        return self.role == other.role and self._actions == other._actions

    @property
    def actions(self) -> Tuple[PolicyAction, ...]:
        return self._actions

    @property
    def tokens(self) -> List[str]:
        return [action.token for action in self._actions]

    def index(self, action: PolicyAction) -> int:
        return self._index[action]

    def contains_index(self, index: int) -> bool:
        return 0 <= index < len(self._actions)

    @property
    def fingerprint(self) -> str:
        """sha256 over role and ordered action tokens."""
        payload = "\n".join([self.role.value, *self.tokens]).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()


def build_action_space(
    domain: Domain, role: Role, cfg: Optional[ActionSpaceConfig] = None
) -> ActionSpace:
    """
    Build the ordered action space of a role.

    Raises:
        ActionSpaceSizeError: If the space does not have cfg.expected_size actions
    """
    cfg = cfg or ActionSpaceConfig()
    explicit = cfg.seeker_actions if role is Role.SEEKER else cfg.provider_actions
    if explicit is not None:
        actions = [parse_action(token) for token in explicit]
    elif role is Role.SEEKER:
        actions = _default_seeker(domain)
    else:
        actions = _default_provider(domain)

    if cfg.expected_size is not None and len(actions) != cfg.expected_size:
        raise ActionSpaceSizeError(cfg.expected_size, [action.token for action in actions])
    return ActionSpace(role, actions)
