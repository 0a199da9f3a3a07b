from parley.src.core.tracking.encoding import ProviderEncoder, SeekerEncoder, StateId, encode
from parley.src.core.tracking.models import (
    IntentClass,
    ProviderState,
    SeekerState,
    count_bucket,
    intent_class,
)
from parley.src.core.tracking.provider import (
    initial_provider_state,
    note_provider_frames,
    update_provider,
)
from parley.src.core.tracking.seeker import note_seeker_frames, update_seeker

__all__ = [
    "IntentClass",
    "ProviderEncoder",
    "ProviderState",
    "SeekerEncoder",
    "SeekerState",
    "StateId",
    "count_bucket",
    "encode",
    "initial_provider_state",
    "intent_class",
    "note_provider_frames",
    "note_seeker_frames",
    "update_provider",
    "update_seeker",
]
