"""
Discrete state ids for tabular learning.

Feature tuples are mapped to integers with a fixed mixed-radix layout, so
ids are stable across processes and the id space is the product of the
feature cardinalities.

Features describe what is left to do, not which goal produced it: a slot
outside the seeker's goal reads the same as one the seeker has dealt with,
and a request the provider answered reads the same as one never made. Goals
that leave the same work open therefore share table rows.

Seeker features:
    per informable slot: settled | unexpressed
    per requestable slot: settled | unrequested | requested
    offer on table: no | yes
    provider's last intent class

Provider features:
    per informable slot: unexpressed | expressed
    per requestable slot: nothing owed | answer owed
    database count bucket: 0 | 1 | 2-4 | 5+
    item in focus: no | yes
    seeker's last intent class
"""

from typing import Tuple, Union

import numpy as np

from parley.src.core.ontology.models import Domain
from parley.src.core.tracking.models import (
    COUNT_BUCKETS,
    REQUESTED,
    UNEXPRESSED,
    UNREQUESTED,
    IntentClass,
    ProviderState,
    SeekerState,
    intent_class,
)

StateId = int

SETTLED = 0
_SEEKER_CONSTRAINT = {UNEXPRESSED: 1}
_SEEKER_REQUEST = {UNREQUESTED: 1, REQUESTED: 2}
_N_CLASSES = len(IntentClass)


def _ravel(features: Tuple[int, ...], dims: Tuple[int, ...]) -> StateId:
    state_id = 0
    for value, size in zip(features, dims):
        state_id = state_id * size + value
    return state_id


class SeekerEncoder:
    def __init__(self, domain: Domain):
        self.domain = domain
        self.dims: Tuple[int, ...] = (
            (2,) * len(domain.informable_slots)
            + (3,) * len(domain.requestable_slots)
            + (2, _N_CLASSES)
        )

    @property
    def cardinality(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def features(self, state: SeekerState) -> Tuple[int, ...]:
        constraints = [
            _SEEKER_CONSTRAINT.get(state.constraint_status.get(slot), SETTLED)
            for slot in self.domain.informable_slots
        ]
        requests = [
            _SEEKER_REQUEST.get(state.request_status.get(slot), SETTLED)
            for slot in self.domain.requestable_slots
        ]
        offer = 1 if state.offer_on_table is not None else 0
        return tuple(constraints + requests + [offer, int(intent_class(state.last_provider_frames))])

    def encode(self, state: SeekerState) -> StateId:
        return _ravel(self.features(state), self.dims)

    def decode(self, state_id: StateId) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.unravel_index(state_id, self.dims))


class ProviderEncoder:
    def __init__(self, domain: Domain):
        self.domain = domain
        self.dims: Tuple[int, ...] = (
            (2,) * len(domain.informable_slots)
            + (2,) * len(domain.requestable_slots)
            + (len(COUNT_BUCKETS), 2, _N_CLASSES)
        )

    @property
    def cardinality(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def features(self, state: ProviderState) -> Tuple[int, ...]:
        expressed = [
            1 if slot in state.expressed_constraints else 0
            for slot in self.domain.informable_slots
        ]
        owed = [
            1 if state.requested_slots.get(slot) is False else 0
            for slot in self.domain.requestable_slots
        ]
        return tuple(
            expressed
            + owed
            + [
                COUNT_BUCKETS.index(state.db_count_bucket),
                1 if state.item_in_focus is not None else 0,
                int(intent_class(state.last_seeker_frames)),
            ]
        )

    def encode(self, state: ProviderState) -> StateId:
        return _ravel(self.features(state), self.dims)

    def decode(self, state_id: StateId) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.unravel_index(state_id, self.dims))


def encode(state: Union[SeekerState, ProviderState], domain: Domain) -> StateId:
    if isinstance(state, SeekerState):
        return SeekerEncoder(domain).encode(state)
    return ProviderEncoder(domain).encode(state)
