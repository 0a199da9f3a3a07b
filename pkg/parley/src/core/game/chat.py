"""
A dialogue between a person and a trained (or handcrafted) agent.

The person's typed text goes through the agent's rule NLU exactly as a
partner utterance would; whatever the NLU extracts is also what the person's
side of the dialogue is tracked as having said. Text the NLU cannot parse
arrives as no frames at all and counts as a null turn.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from parley.src.core.errors import ContractViolationError
from parley.src.core.game.agents import DialogueAgent, Observation
from parley.src.core.game.episode import (
    AGENTS,
    DialogueGame,
    DialogueState,
    EpisodeOutcome,
    EpisodeStreams,
    TurnRecord,
)
from parley.src.core.language.channel import Delivery
from parley.src.core.language.nlg import Utterance
from parley.src.core.ontology.models import Goal

logger = logging.getLogger(__name__)

QUIT_COMMAND = "/quit"


@dataclass
class ChatSession:
    """
    Args:
        game: Dialogue game supplying channel, trackers and rewards
        agent: The machine side; its role is the partner of `human_role`
        goal: Seeker goal for the session
        streams: Random streams for the agent's turns
    """
    game: DialogueGame
    agent: DialogueAgent
    goal: Goal
    streams: EpisodeStreams
    transcript: List[TurnRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.human_role = self.agent.role.partner
        self.state: DialogueState = self.game.new_episode(self.goal, self.streams)

    @property
    def finished(self) -> bool:
        return self.state.finished

    @property
    def agent_to_move(self) -> bool:
        return not self.state.finished and self.state.speaker is self.agent.role

    def agent_turn(self) -> TurnRecord:
        if not self.agent_to_move:
            raise ContractViolationError(f"it is not the {self.agent.role.value}'s turn")
        role = self.agent.role
        state_id = self.game.state_id(self.state, role)
        index = self.agent.select_action(
            Observation(state_id, self.state.tracker(role)), self.streams.explore[role]
        )
        actions: List[Optional[int]] = [None, None]
        actions[AGENTS.index(role)] = index
        return self._advance(self.game.step(self.state, actions, self.streams.noise).state)

    def human_turn(self, text: str) -> TurnRecord:
        """Fold one typed utterance; an empty understood list means it was not understood."""
        if self.state.finished or self.state.speaker is not self.human_role:
            raise ContractViolationError(f"it is not the {self.human_role.value}'s turn")
        understood = self.game.channel.understand(text, listener=self.agent.role)
        if not understood:
            logger.info(f"Not understood: '{text}'")
        delivery = Delivery(
            list(understood),
            list(understood),
            Utterance(text, self.human_role, self.state.turn),
            list(understood),
        )
        return self._advance(self.game.fold_turn(self.state, None, delivery).state)

    def close(self) -> EpisodeOutcome:
        """Settle the dialogue, ending it early if it is still running."""
        self.state = self.game.close(self.state)
        self.agent.end_episode()
        return self.game.outcome(self.state, self.transcript)

    def _advance(self, state: DialogueState) -> TurnRecord:
        self.state = state
        self.transcript.append(state.last_record)
        return state.last_record
