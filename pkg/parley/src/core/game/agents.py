"""
Dialogue agents and action realisation.

Policies choose slot-level actions; realisation fills in values from the
tracked state (goal values for the seeker, the item in focus for the
provider) and turns each action into the frames sent over the channel.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, List, Optional, Sequence, Union

import numpy as np

from parley.src.core.acts.action_space import ActionSpace
from parley.src.core.acts.models import THIS_SLOT, Frame, Intent, PolicyAction, Role
from parley.src.core.acts.mr import frames_to_mr
from parley.src.core.marl.learner import TabularLearner
from parley.src.core.ontology.models import Domain
from parley.src.core.tracking.models import ProviderState, SeekerState

AgentState = Union[SeekerState, ProviderState]


def realize_seeker(action: PolicyAction, state: SeekerState, domain: Domain) -> List[Frame]:
    intent = action.intent
    if intent is Intent.INFORM:
        if action.slot == THIS_SLOT:
            return [Frame(Intent.INFORM, ((THIS_SLOT, domain.dontcare_token),))]
        value = state.goal.constraints.get(action.slot, domain.dontcare_token)
        return [Frame(Intent.INFORM, ((action.slot, value),))]
    if intent is Intent.REQUEST:
        return [Frame.request(action.slot)]
    if intent in (Intent.DENY, Intent.CONFIRM) and state.offer_on_table is not None:
        return [Frame(intent, ((domain.primary_key, state.offer_on_table),))]
    return [Frame(intent)]


def _canthelp() -> List[Frame]:
    return [Frame(Intent.CANTHELP)]


def realize_provider(action: PolicyAction, state: ProviderState, domain: Domain) -> List[Frame]:
    intent = action.intent
    focus = state.item_in_focus
    key = domain.primary_key

    if intent is Intent.OFFER:
        if focus is None:
            return _canthelp()
        informs = [
            Frame(Intent.INFORM, ((slot, focus[slot]),))
            for slot in domain.informable_names
            if state.expressed_constraints.get(slot, domain.dontcare_token) != domain.dontcare_token
        ]
        return informs + [Frame(Intent.OFFER, ((key, focus[key]),))]

    if intent is Intent.INFORM:
        if focus is None:
            return _canthelp()
        inform = Frame(Intent.INFORM, ((action.slot, focus[action.slot]),))
        if action.slot == key or state.offered_item == focus:
            return [inform]
        return [Frame(Intent.OFFER, ((key, focus[key]),)), inform]

    if intent is Intent.SELECT:
        if focus is None:
            return _canthelp()
        options: List[str] = []
        for item in state.matches:
            if item[action.slot] not in options:
                options.append(item[action.slot])
            if len(options) == 2:
                return [Frame(Intent.SELECT, tuple((action.slot, value) for value in options))]
        return [Frame.request(action.slot)]

    if intent is Intent.EXPL_CONF:
        value = state.expressed_constraints.get(action.slot, domain.dontcare_token)
        return [Frame(Intent.EXPL_CONF, ((action.slot, value),))]

    if intent is Intent.REQUEST:
        return [Frame.request(action.slot)]
    return [Frame(intent)]


def realize(action: PolicyAction, role: Role, state: AgentState, domain: Domain) -> List[Frame]:
    if role is Role.SEEKER:
        return realize_seeker(action, state, domain)
    return realize_provider(action, state, domain)


def realizable_mrs(role: Role, space: ActionSpace, domain: Domain) -> List[str]:
    """Every MR the role's realisation can produce from its action space."""
    key = domain.primary_key
    mrs: List[str] = []

    def add(frames: Sequence[Frame]) -> None:
        mr = frames_to_mr(frames)
        if mr not in mrs:
            mrs.append(mr)

    for action in space:
        slot = action.slot
        if role is Role.SEEKER:
            if action.intent is Intent.REQUEST:
                add([Frame.request(slot)])
            elif action.intent is Intent.INFORM:
                add([Frame(Intent.INFORM, ((slot, None),))])
            elif action.intent in (Intent.DENY, Intent.CONFIRM):
                add([Frame(action.intent)])
                add([Frame(action.intent, ((key, None),))])
            else:
                add([Frame(action.intent)])
            continue

        if action.intent is Intent.OFFER:
            informables = domain.informable_names
            for size in range(len(informables) + 1):
                for subset in combinations(informables, size):
                    frames = [Frame(Intent.INFORM, ((s, None),)) for s in subset]
                    add(frames + [Frame(Intent.OFFER, ((key, None),))])
            add(_canthelp())
        elif action.intent is Intent.INFORM:
            add([Frame(Intent.INFORM, ((slot, None),))])
            if slot != key:
                add([Frame(Intent.OFFER, ((key, None),)), Frame(Intent.INFORM, ((slot, None),))])
            add(_canthelp())
        elif action.intent is Intent.SELECT:
            add([Frame(Intent.SELECT, ((slot, None), (slot, None)))])
            add([Frame.request(slot)])
            add(_canthelp())
        elif action.intent is Intent.EXPL_CONF:
            add([Frame(Intent.EXPL_CONF, ((slot, None),))])
        elif action.intent is Intent.REQUEST:
            add([Frame.request(slot)])
        else:
            add([Frame(action.intent)])
    return mrs


@dataclass(frozen=True)
class Observation:
    state_id: Hashable
    state: AgentState


class DialogueAgent(ABC):
    """A player of the dialogue game."""

    def __init__(self, role: Role, space: ActionSpace):
        self.role = role
        self.space = space

    @property
    def learning(self) -> bool:
        return False

    @abstractmethod
    def select_action(self, observation: Observation, rng: np.random.Generator) -> Optional[int]:
        """Action index into the role's space; None means the agent stays silent."""

    def learn(self, s: Hashable, a: int, r: float, s_next: Optional[Hashable], terminal: bool) -> None:
        return None

    def end_episode(self) -> None:
        return None


class LearningAgent(DialogueAgent):
    """
    Tabular learner acting on state ids.

    Args:
        learner: Table, config and exploration schedule
        train: Update the table and explore; when False acts with epsilon 0 and never learns
    """

    def __init__(self, role: Role, space: ActionSpace, learner: TabularLearner, train: bool = True):
        super().__init__(role, space)
        if learner.n_actions != len(space):
            raise ValueError(f"learner has {learner.n_actions} actions, space has {len(space)}")
        self.learner = learner
        self.train = train

    @property
    def learning(self) -> bool:
        return self.train

    def select_action(self, observation: Observation, rng: np.random.Generator) -> Optional[int]:
        epsilon = None if self.train else 0.0
        return self.learner.act(observation.state_id, rng, epsilon)

    def learn(self, s: Hashable, a: int, r: float, s_next: Optional[Hashable], terminal: bool) -> None:
        if self.train:
            self.learner.learn(s, a, r, s_next, terminal)

    def end_episode(self) -> None:
        if self.train:
            self.learner.advance()
