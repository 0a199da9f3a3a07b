"""
Provider-side tracker.
"""

import logging
from typing import Sequence

from parley.src.core.acts.models import THIS_SLOT, Frame, Intent
from parley.src.core.ontology.database import Database
from parley.src.core.tracking.models import ProviderState, count_bucket

logger = logging.getLogger(__name__)


def refresh_query(state: ProviderState, db: Database) -> None:
    """Re-run the query for the expressed constraints and reset the focus to the first match."""
    result = db.query(state.expressed_constraints)
    previous = state.item_in_focus
    state.matches = tuple(result.items)
    state.focus_index = 0
    state.db_count_bucket = count_bucket(result.count)
    state.high_entropy_slot = result.highest_entropy_slot()
    if state.item_in_focus != previous:
        _reset_answers(state)


def _reset_answers(state: ProviderState) -> None:
    state.requested_slots = {slot: False for slot in state.requested_slots}


def _advance_focus(state: ProviderState) -> None:
    if len(state.matches) > 1:
        state.focus_index = (state.focus_index + 1) % len(state.matches)
        _reset_answers(state)


def initial_provider_state(db: Database) -> ProviderState:
    state = ProviderState()
    refresh_query(state, db)
    return state


def update_provider(state: ProviderState, frames: Sequence[Frame], db: Database) -> ProviderState:
    """
    Fold the seeker's understood frames into the provider state.

    Constraint changes trigger a fresh query; the first match becomes the
    item in focus and stays there until constraints change or the seeker
    asks for alternatives.
    """
    new = state.copy()
    domain = db.domain
    changed = False

    for frame in frames:
        if frame.intent is Intent.RESTART:
            new.expressed_constraints = {}
            new.requested_slots = {}
            new.offered_item = None
            changed = True
        elif frame.intent is Intent.INFORM:
            for slot, value in frame.args:
                if slot == THIS_SLOT:
                    # nothing asked yet: 'this' refers to no slot
                    if new.last_requested_slot is None:
                        continue
                    slot = new.last_requested_slot
                    value = domain.dontcare_token
                if not domain.is_informable(slot) or value is None:
                    logger.debug(f"Provider tracker ignoring inform of '{slot}'")
                    continue
                if new.expressed_constraints.get(slot) != value:
                    new.expressed_constraints[slot] = value
                    changed = True
        elif frame.intent is Intent.REQUEST:
            slot = frame.requested_slot
            if slot is None or slot not in domain.requestable_slots:
                logger.warning(f"Provider tracker ignoring request of '{slot}'")
                continue
            new.requested_slots[slot] = False

    if changed:
        refresh_query(new, db)

    if any(frame.intent in (Intent.REQALTS, Intent.DENY) for frame in frames):
        _advance_focus(new)

    new.last_seeker_frames = tuple(frames)
    new.turn += 1
    return new


def note_provider_frames(
    state: ProviderState, frames: Sequence[Frame], primary_key: str = "name"
) -> ProviderState:
    """Record what the provider itself said: offers made, requests answered, slots asked."""
    new = state.copy()
    focus = new.item_in_focus
    for frame in frames:
        if frame.intent is Intent.OFFER or (
            frame.intent is Intent.INFORM and frame.value(primary_key) is not None
        ):
            new.offered_item = focus
        if frame.intent in (Intent.INFORM, Intent.OFFER):
            for slot, _ in frame.args:
                if slot in new.requested_slots:
                    new.requested_slots[slot] = True
        elif frame.intent is Intent.REQUEST:
            new.last_requested_slot = frame.requested_slot
        elif frame.intent in (Intent.SELECT, Intent.EXPL_CONF) and frame.args:
            new.last_requested_slot = frame.args[0][0]
    return new
