"""
Seeker-side tracker.
"""

import logging
from typing import Optional, Sequence

from parley.src.core.acts.models import THIS_SLOT, Frame, Intent
from parley.src.core.ontology.models import Domain
from parley.src.core.tracking.models import (
    ANSWERED,
    EXPRESSED,
    REQUESTED,
    UNEXPRESSED,
    UNREQUESTED,
    SeekerState,
)

logger = logging.getLogger(__name__)

PRIMARY_KEY = "name"


def _take_offer(state: SeekerState, name: str, primary_key: str) -> None:
    previous = state.received.get(primary_key)
    if previous is not None and previous != name:
        for slot, status in state.request_status.items():
            if status == ANSWERED:
                state.request_status[slot] = REQUESTED
        state.received = {
            slot: value for slot, value in state.received.items() if slot == primary_key
        }
    state.offer_on_table = name
    state.received[primary_key] = name
    if state.request_status.get(primary_key) == REQUESTED:
        state.request_status[primary_key] = ANSWERED


def update_seeker(
    state: SeekerState, frames: Sequence[Frame], domain: Optional[Domain] = None
) -> SeekerState:
    """
    Fold the provider's understood frames into the seeker state.

    Offers (and informs of the item name) are applied before other informs so
    that values arriving with a new offer belong to it. An inform answers a
    request only when that request was made.
    """
    new = state.copy()
    primary_key = domain.primary_key if domain is not None else PRIMARY_KEY

    for frame in frames:
        if frame.intent in (Intent.OFFER, Intent.INFORM):
            name = frame.value(primary_key)
            if name is not None:
                _take_offer(new, name, primary_key)

    for frame in frames:
        if frame.intent is Intent.INFORM:
            for slot, value in frame.args:
                if slot == primary_key or value is None:
                    continue
                if domain is not None and not domain.has_slot(slot):
                    logger.warning(f"Seeker tracker ignoring unknown slot '{slot}'")
                    continue
                new.received[slot] = value
                if new.request_status.get(slot) == REQUESTED:
                    new.request_status[slot] = ANSWERED
        elif frame.intent is Intent.REQUEST:
            new.provider_asked = frame.requested_slot
        elif frame.intent in (Intent.SELECT, Intent.EXPL_CONF) and frame.args:
            new.provider_asked = frame.args[0][0]

    new.last_provider_frames = tuple(frames)
    new.turn += 1
    return new


def note_seeker_frames(state: SeekerState, frames: Sequence[Frame]) -> SeekerState:
    """
    Record what the seeker itself said (before any channel noise).

    A constraint counts as expressed only when the value said is the goal's
    value; 'inform(this)' on a slot the goal constrains takes it back.
    """
    new = state.copy()
    for frame in frames:
        if frame.intent is Intent.INFORM:
            for slot, value in frame.args:
                if slot == THIS_SLOT:
                    slot = new.provider_asked
                if slot in new.constraint_status:
                    said_goal_value = value == new.goal.constraints[slot]
                    new.constraint_status[slot] = EXPRESSED if said_goal_value else UNEXPRESSED
                    new.offer_on_table = None
        elif frame.intent is Intent.REQUEST:
            slot = frame.requested_slot
            if new.request_status.get(slot) == UNREQUESTED:
                new.request_status[slot] = REQUESTED
        elif frame.intent in (Intent.REQALTS, Intent.DENY):
            new.offer_on_table = None
        elif frame.intent is Intent.RESTART:
            new.constraint_status = {slot: UNEXPRESSED for slot in new.constraint_status}
            new.request_status = {slot: UNREQUESTED for slot in new.request_status}
            new.received = {}
            new.offer_on_table = None
    return new
