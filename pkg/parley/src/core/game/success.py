"""
Objective and subjective dialogue success.
"""

from dataclasses import asdict, dataclass
from typing import Mapping, Optional

from parley.src.core.ontology.models import Goal, ItemRecord
from parley.src.core.tracking.models import ANSWERED, EXPRESSED, ProviderState, SeekerState


@dataclass(frozen=True)
class SuccessResult:
    objective: bool
    seeker_subjective: bool
    provider_subjective: bool

    def to_dict(self) -> dict:
        return asdict(self)


def item_satisfies(item: ItemRecord, constraints: Mapping[str, str], dontcare: str) -> bool:
    return all(value == dontcare or item.get(slot) == value for slot, value in constraints.items())


def evaluate_success(
    goal: Goal,
    seeker_state: SeekerState,
    provider_state: ProviderState,
    offered_item: Optional[ItemRecord],
    dontcare: str = "dontcare",
) -> SuccessResult:
    """
    Args:
        goal: The seeker's goal
        seeker_state: Final seeker tracker state
        provider_state: Final provider tracker state
        offered_item: Database record behind the provider's last offer (ground truth)
        dontcare: Domain dontcare token

    Returns:
        objective: an item was offered, it satisfies every goal constraint, and
            the seeker received every requested value exactly as the item holds it
        provider_subjective: the offer satisfies what the seeker expressed and
            every request the provider heard was answered
        seeker_subjective: every goal constraint expressed and every goal
            request made and answered
    """
    objective = (
        offered_item is not None
        and item_satisfies(offered_item, goal.constraints, dontcare)
        and all(seeker_state.received.get(slot) == offered_item.get(slot) for slot in goal.requests)
    )
    provider_subjective = (
        offered_item is not None
        and item_satisfies(offered_item, provider_state.expressed_constraints, dontcare)
        and all(provider_state.requested_slots.values())
    )
    seeker_subjective = all(
        status == EXPRESSED for status in seeker_state.constraint_status.values()
    ) and all(status == ANSWERED for status in seeker_state.request_status.values())
    return SuccessResult(bool(objective), bool(seeker_subjective), bool(provider_subjective))
