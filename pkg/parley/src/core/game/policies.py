"""
Handcrafted dialogue policies.

RuleProvider and AgendaSeeker play a complete, cooperative dialogue over the
tracked state. They act as the scripted oracle pair, as fixed opponents for
act-level evaluation, and as cross-pairing partners for trained agents.
ScriptedAgent replays a fixed action sequence (fixture dialogues).
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from parley.src.core.acts.action_space import ActionSpace, parse_action
from parley.src.core.acts.models import Intent, PolicyAction, Role
from parley.src.core.errors import ContractViolationError
from parley.src.core.game.agents import DialogueAgent, Observation
from parley.src.core.ontology.models import Domain
from parley.src.core.tracking.models import ANSWERED, UNEXPRESSED, ProviderState, SeekerState

logger = logging.getLogger(__name__)

_QUESTIONS = (Intent.REQUEST, Intent.SELECT, Intent.EXPL_CONF)


class HandcraftedAgent(DialogueAgent):
    """Base for rule policies: picks actions by (intent, slot) from its space."""

    def __init__(self, role: Role, space: ActionSpace, domain: Domain):
        super().__init__(role, space)
        self.domain = domain

    def _pick(self, intent: Intent, slot: Optional[str] = None) -> int:
        action = PolicyAction(intent, slot)
        try:
            return self.space.index(action)
        except KeyError:
            raise ContractViolationError(
                f"{type(self).__name__} needs '{action.token}' but the {self.role.value} "
                "action space does not contain it"
            ) from None


class RuleProvider(HandcraftedAgent):
    """
    Greets, answers open requests, asks for unexpressed constraints, then offers.

    Rules, first match wins:
      1. first turn: welcomemsg
      2. seeker said bye: bye
      3. nothing understood: repeat
      4. a heard request is unanswered: inform(slot), canthelp without a match
      5. no matching item: canthelp
      6. an informable slot was never expressed: request(slot)
      7. the item in focus has not been offered: offer
      8. otherwise: reqmore
    """

    def __init__(self, space: ActionSpace, domain: Domain):
        super().__init__(Role.PROVIDER, space, domain)

    def select_action(self, observation: Observation, rng: np.random.Generator) -> Optional[int]:
        state: ProviderState = observation.state
        heard = state.last_seeker_frames

        if state.turn == 0:
            return self._pick(Intent.WELCOMEMSG)
        if any(frame.intent is Intent.BYE for frame in heard):
            return self._pick(Intent.BYE)
        if not heard:
            return self._pick(Intent.REPEAT)

        open_requests = [slot for slot, answered in state.requested_slots.items() if not answered]
        if open_requests:
            if state.item_in_focus is None:
                return self._pick(Intent.CANTHELP)
            return self._pick(Intent.INFORM, open_requests[0])

        if state.item_in_focus is None:
            return self._pick(Intent.CANTHELP)

        for slot in self.domain.informable_names:
            if slot not in state.expressed_constraints:
                return self._pick(Intent.REQUEST, slot)

        if state.offered_item != state.item_in_focus:
            return self._pick(Intent.OFFER)
        return self._pick(Intent.REQMORE)


class AgendaSeeker(HandcraftedAgent):
    """
    Works through its goal: constraints first, then requests about the offer.

    Rules, first match wins:
      1. provider said bye: bye
      2. nothing understood: repeat
      3. provider asked about a slot: affirm a correct explicit confirmation,
         otherwise inform the slot (dontcare when the goal leaves it open)
      4. provider cannot help and everything is expressed: bye
      5. a goal constraint is unexpressed: inform it
      6. the offer contradicts the goal: reqalts
      7. an offer is on the table and a request is unanswered: request it
      8. an offer is on the table and everything is answered: bye
      9. otherwise: ack
    """

    def __init__(self, space: ActionSpace, domain: Domain):
        super().__init__(Role.SEEKER, space, domain)

    def select_action(self, observation: Observation, rng: np.random.Generator) -> Optional[int]:
        state: SeekerState = observation.state
        heard = state.last_provider_frames
        goal = state.goal
        dontcare = self.domain.dontcare_token

        if any(frame.intent is Intent.BYE for frame in heard):
            return self._pick(Intent.BYE)
        if not heard:
            return self._pick(Intent.REPEAT)

        question = next((frame for frame in heard if frame.intent in _QUESTIONS), None)
        if question is not None and state.provider_asked is not None:
            slot = state.provider_asked
            if self.domain.is_informable(slot):
                wanted = goal.constraints.get(slot, dontcare)
                if question.intent is Intent.EXPL_CONF and question.value(slot) == wanted:
                    return self._pick(Intent.AFFIRM)
                return self._pick(Intent.INFORM, slot)

        unexpressed = [slot for slot, status in state.constraint_status.items() if status == UNEXPRESSED]
        if any(frame.intent is Intent.CANTHELP for frame in heard) and not unexpressed:
            return self._pick(Intent.BYE)
        if unexpressed:
            ordered = [slot for slot in self.domain.informable_names if slot in unexpressed]
            return self._pick(Intent.INFORM, ordered[0])

        if state.offer_on_table is not None:
            conflicting = any(
                value != dontcare and state.received.get(slot, value) != value
                for slot, value in goal.constraints.items()
            )
            if conflicting:
                return self._pick(Intent.REQALTS)
            for slot in goal.requests:
                if state.request_status[slot] != ANSWERED:
                    return self._pick(Intent.REQUEST, slot)
            return self._pick(Intent.BYE)
        return self._pick(Intent.ACK)


ScriptStep = Union[str, int, None]


class ScriptedAgent(DialogueAgent):
    """
    Replays a fixed action sequence, then says bye.

    Steps are action tokens ('act_inform(food)'), indices, or None for a
    silent turn.
    """

    def __init__(self, role: Role, space: ActionSpace, script: Sequence[ScriptStep]):
        super().__init__(role, space)
        self.script = [self._resolve(step) for step in script]
        self.position = 0

    def _resolve(self, step: ScriptStep) -> Optional[int]:
        if step is None or isinstance(step, int):
            return step
        return self.space.index(parse_action(step))

    def select_action(self, observation: Observation, rng: np.random.Generator) -> Optional[int]:
        if self.position >= len(self.script):
            return self.space.index(PolicyAction(Intent.BYE))
        step = self.script[self.position]
        self.position += 1
        return step

    def end_episode(self) -> None:
        self.position = 0


class FixedActionAgent(DialogueAgent):
    """Always plays the same action."""

    def __init__(self, role: Role, space: ActionSpace, token: str):
        super().__init__(role, space)
        self.index = space.index(parse_action(token))

    def select_action(self, observation: Observation, rng: np.random.Generator) -> Optional[int]:
        return self.index


def handcrafted_agent(role: Role, space: ActionSpace, domain: Domain) -> HandcraftedAgent:
    if role is Role.SEEKER:
        return AgendaSeeker(space, domain)
    return RuleProvider(space, domain)
