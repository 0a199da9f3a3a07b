from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

ACT_PREFIX = "act_"
REQUESTED_ARG = "requested"
THIS_SLOT = "this"


class Intent(str, Enum):
    HELLO = "hello"
    WELCOMEMSG = "welcomemsg"
    INFORM = "inform"
    REQUEST = "request"
    OFFER = "offer"
    CONFIRM = "confirm"
    EXPL_CONF = "expl_conf"
    DENY = "deny"
    NEGATE = "negate"
    AFFIRM = "affirm"
    ACK = "ack"
    THANKYOU = "thankyou"
    BYE = "bye"
    REQALTS = "reqalts"
    REQMORE = "reqmore"
    REPEAT = "repeat"
    RESTART = "restart"
    CANTHELP = "canthelp"
    SELECT = "select"

    @property
    def token(self) -> str:
        """MR token, e.g. 'act_inform'."""
        return f"{ACT_PREFIX}{self.value}"

    @classmethod
    def from_token(cls, token: str) -> "Intent":
        if not token.startswith(ACT_PREFIX):
            raise ValueError(f"not an act token: {token}")
        return cls(token[len(ACT_PREFIX):])


@dataclass(frozen=True)
class Frame:
    """
    One semantic frame: an intent with ordered (slot, value) arguments.

    Request frames carry the asked-for slot name as the value of the
    'requested' argument. Delexicalized frames carry None values.
    """
    intent: Intent
    args: Tuple[Tuple[str, Optional[str]], ...] = field(default_factory=tuple)

    @classmethod
    def request(cls, slot: str) -> "Frame":
        return cls(Intent.REQUEST, ((REQUESTED_ARG, slot),))

    @classmethod
    def of(cls, intent: Intent, **values: Optional[str]) -> "Frame":
        return cls(intent, tuple(values.items()))

    @property
    def slots(self) -> Tuple[str, ...]:
        """Slot tags this frame contributes to an MR."""
        if self.intent is Intent.REQUEST:
            return tuple(value for _, value in self.args if value is not None)
        return tuple(slot for slot, _ in self.args)

    @property
    def requested_slot(self) -> Optional[str]:
        if self.intent is not Intent.REQUEST or not self.args:
            return None
        return self.args[0][1]

    def value(self, slot: str) -> Optional[str]:
        for name, value in self.args:
            if name == slot:
                return value
        return None

    def delexicalize(self) -> "Frame":
        if self.intent is Intent.REQUEST:
            return self
        return Frame(self.intent, tuple((slot, None) for slot, _ in self.args))

    def __str__(self) -> str:
        if self.intent is Intent.REQUEST:
            inner = ", ".join(self.slots)
        else:
            inner = ", ".join(
                slot if value is None else f"{slot}={value}" for slot, value in self.args
            )
        return f"{self.intent.value}({inner})"

    def to_dict(self) -> dict:
        return {"intent": self.intent.value, "args": [list(pair) for pair in self.args]}

    @classmethod
    def from_dict(cls, data: dict) -> "Frame":
        return cls(Intent(data["intent"]), tuple((slot, value) for slot, value in data["args"]))


@dataclass(frozen=True)
class PolicyAction:
    """A policy-level action: intent plus at most one slot, no value."""
    intent: Intent
    slot: Optional[str] = None

    @property
    def token(self) -> str:
        return self.intent.token if self.slot is None else f"{self.intent.token}({self.slot})"

    def __str__(self) -> str:
        return self.token


class Role(str, Enum):
    SEEKER = "seeker"
    PROVIDER = "provider"

    @property
    def partner(self) -> "Role":
        return Role.PROVIDER if self is Role.SEEKER else Role.SEEKER
