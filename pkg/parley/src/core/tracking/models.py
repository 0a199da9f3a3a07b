from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, Optional, Sequence, Tuple

from parley.src.core.acts.models import Frame, Intent
from parley.src.core.ontology.models import Goal, ItemRecord

UNEXPRESSED = "unexpressed"
EXPRESSED = "expressed"

UNREQUESTED = "unrequested"
REQUESTED = "requested"
ANSWERED = "answered"

COUNT_BUCKETS = ("0", "1", "2-4", "5+")


class IntentClass(IntEnum):
    """Bucketed intent of the partner's most recent turn."""
    NONE = 0
    QUESTION = 1
    INFORMATION = 2
    NEGATIVE = 3
    CLOSING = 4
    OTHER = 5


_INTENT_CLASSES = {
    Intent.REQUEST: IntentClass.QUESTION,
    Intent.SELECT: IntentClass.QUESTION,
    Intent.EXPL_CONF: IntentClass.QUESTION,
    Intent.CONFIRM: IntentClass.QUESTION,
    Intent.INFORM: IntentClass.INFORMATION,
    Intent.OFFER: IntentClass.INFORMATION,
    Intent.DENY: IntentClass.NEGATIVE,
    Intent.NEGATE: IntentClass.NEGATIVE,
    Intent.CANTHELP: IntentClass.NEGATIVE,
    Intent.REQALTS: IntentClass.NEGATIVE,
    Intent.BYE: IntentClass.CLOSING,
    Intent.THANKYOU: IntentClass.CLOSING,
}


def intent_class(frames: Sequence[Frame]) -> IntentClass:
    """Class of the last frame's intent; NONE for a null turn."""
    if not frames:
        return IntentClass.NONE
    return _INTENT_CLASSES.get(frames[-1].intent, IntentClass.OTHER)


def count_bucket(count: int) -> str:
    if count <= 0:
        return "0"
    if count == 1:
        return "1"
    if count <= 4:
        return "2-4"
    return "5+"


@dataclass
class SeekerState:
    """
    What the seeker knows: its goal and what the provider has told it.

    Attributes:
        constraint_status: goal constraint slot -> unexpressed | expressed
        request_status: goal request slot -> unrequested | requested | answered
        received: slot -> value heard from the provider
        offer_on_table: name of the item currently offered
        provider_asked: slot the provider last asked about (request, select, expl_conf)
    """
    goal: Goal
    constraint_status: Dict[str, str]
    request_status: Dict[str, str]
    received: Dict[str, str] = field(default_factory=dict)
    last_provider_frames: Tuple[Frame, ...] = ()
    offer_on_table: Optional[str] = None
    provider_asked: Optional[str] = None
    turn: int = 0

    @classmethod
    def initial(cls, goal: Goal) -> "SeekerState":
        return cls(
            goal=goal,
            constraint_status={slot: UNEXPRESSED for slot in goal.constraints},
            request_status={slot: UNREQUESTED for slot in goal.requests},
        )

    def copy(self) -> "SeekerState":
        return SeekerState(
            goal=self.goal,
            constraint_status=dict(self.constraint_status),
            request_status=dict(self.request_status),
            received=dict(self.received),
            last_provider_frames=self.last_provider_frames,
            offer_on_table=self.offer_on_table,
            provider_asked=self.provider_asked,
            turn=self.turn,
        )

    def to_dict(self) -> dict:
        return {
            "constraint_status": dict(self.constraint_status),
            "request_status": dict(self.request_status),
            "received": dict(self.received),
            "offer_on_table": self.offer_on_table,
            "provider_asked": self.provider_asked,
            "last_intent_class": int(intent_class(self.last_provider_frames)),
            "turn": self.turn,
        }


@dataclass
class ProviderState:
    """
    What the provider knows: the seeker's expressed constraints and requests
    plus the current database view.

    Attributes:
        expressed_constraints: slot -> value or dontcare
        requested_slots: slot -> answered flag
        matches: items of the last query, in database order
        focus_index: position of the item in focus within `matches`
        offered_item: item behind the provider's most recent offer
        last_requested_slot: slot the provider last asked about
    """
    expressed_constraints: Dict[str, str] = field(default_factory=dict)
    requested_slots: Dict[str, bool] = field(default_factory=dict)
    matches: Tuple[ItemRecord, ...] = ()
    focus_index: int = 0
    db_count_bucket: str = "0"
    high_entropy_slot: Optional[str] = None
    offered_item: Optional[ItemRecord] = None
    last_requested_slot: Optional[str] = None
    last_seeker_frames: Tuple[Frame, ...] = ()
    turn: int = 0

    @property
    def item_in_focus(self) -> Optional[ItemRecord]:
        if not self.matches:
            return None
        return self.matches[self.focus_index]

    def copy(self) -> "ProviderState":
        return ProviderState(
            expressed_constraints=dict(self.expressed_constraints),
            requested_slots=dict(self.requested_slots),
            matches=self.matches,
            focus_index=self.focus_index,
            db_count_bucket=self.db_count_bucket,
            high_entropy_slot=self.high_entropy_slot,
            offered_item=self.offered_item,
            last_requested_slot=self.last_requested_slot,
            last_seeker_frames=self.last_seeker_frames,
            turn=self.turn,
        )

    def to_dict(self, primary_key: str = "name") -> dict:
        focus = self.item_in_focus
        return {
            "expressed_constraints": dict(self.expressed_constraints),
            "requested_slots": dict(self.requested_slots),
            "db_count_bucket": self.db_count_bucket,
            "high_entropy_slot": self.high_entropy_slot,
            "item_in_focus": focus[primary_key] if focus is not None else None,
            "offered_item": self.offered_item[primary_key] if self.offered_item is not None else None,
            "last_intent_class": int(intent_class(self.last_seeker_frames)),
            "turn": self.turn,
        }
