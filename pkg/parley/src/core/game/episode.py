"""
The two-player dialogue game and its episode loop.

The provider opens; seeker and provider then alternate. On every turn the
speaker's policy picks an action from its state id, the action is realised
into frames, the frames cross the channel, and the listener's tracker folds
in what it understood. An agent's transition runs from one of its own turns
to the next, collecting every turn penalty in between; the terminal reward
closes both agents' last transitions.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from parley.src.core.acts.action_space import ActionSpace
from parley.src.core.acts.models import Frame, Intent, Role
from parley.src.core.errors import ContractViolationError
from parley.src.core.game.agents import DialogueAgent, Observation, realize
from parley.src.core.game.config import EpisodeConfig, TurnPenaltyScope
from parley.src.core.game.rewards import RewardBreakdown, RewardInputs, compute_rewards
from parley.src.core.game.success import SuccessResult, evaluate_success
from parley.src.core.language.channel import Channel, Delivery
from parley.src.core.language.nlg import Utterance
from parley.src.core.language.templates import TemplateStore
from parley.src.core.marl.stochastic_game import StochasticGame, Transition
from parley.src.core.ontology.database import Database
from parley.src.core.ontology.goals import sample_goal
from parley.src.core.ontology.models import Goal, GoalConfig
from parley.src.core.tracking.encoding import ProviderEncoder, SeekerEncoder, StateId
from parley.src.core.tracking.models import UNREQUESTED, ProviderState, SeekerState
from parley.src.core.tracking.provider import (
    initial_provider_state,
    note_provider_frames,
    update_provider,
)
from parley.src.core.tracking.seeker import note_seeker_frames, update_seeker
from parley.src.core.utils.seeding import NOISE, TEMPLATE, derive_rng, explore_stream

logger = logging.getLogger(__name__)

# joint-action and reward tuple order
AGENTS: Tuple[Role, Role] = (Role.SEEKER, Role.PROVIDER)


@dataclass
class EpisodeStreams:
    """Random streams one episode draws from."""
    noise: np.random.Generator
    template: np.random.Generator
    explore: Dict[Role, np.random.Generator]

    @classmethod
    def derive(cls, root_seed: int, episode_index: int) -> "EpisodeStreams":
        return cls(
            noise=derive_rng(root_seed, NOISE, episode_index),
            template=derive_rng(root_seed, TEMPLATE, episode_index),
            explore={
                role: derive_rng(root_seed, explore_stream(role.value), episode_index)
                for role in AGENTS
            },
        )

    @classmethod
    def spawn(cls, rng: np.random.Generator) -> "EpisodeStreams":
        noise, template, seeker, provider = rng.spawn(4)
        return cls(noise, template, {Role.SEEKER: seeker, Role.PROVIDER: provider})


@dataclass(frozen=True)
class TurnRecord:
    """One logged turn."""
    index: int
    speaker: Role
    action_index: Optional[int]
    action_token: Optional[str]
    state_id: StateId
    state: dict
    emitted: Tuple[Frame, ...]
    after_noise: Tuple[Frame, ...]
    understood: Tuple[Frame, ...]
    utterance: str
    rewards: Tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "speaker": self.speaker.value,
            "action_index": self.action_index,
            "action_token": self.action_token,
            "state_id": self.state_id,
            "state": self.state,
            "emitted": [frame.to_dict() for frame in self.emitted],
            "after_noise": [frame.to_dict() for frame in self.after_noise],
            "understood": [frame.to_dict() for frame in self.understood],
            "utterance": self.utterance,
            "rewards": {role.value: reward for role, reward in zip(AGENTS, self.rewards)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TurnRecord":
        return cls(
            index=data["index"],
            speaker=Role(data["speaker"]),
            action_index=data["action_index"],
            action_token=data["action_token"],
            state_id=data["state_id"],
            state=data["state"],
            emitted=tuple(Frame.from_dict(f) for f in data["emitted"]),
            after_noise=tuple(Frame.from_dict(f) for f in data["after_noise"]),
            understood=tuple(Frame.from_dict(f) for f in data["understood"]),
            utterance=data["utterance"],
            rewards=tuple(data["rewards"][role.value] for role in AGENTS),
        )


@dataclass
class DialogueState:
    """Full game state: both trackers plus turn bookkeeping."""
    goal: Goal
    seeker: SeekerState
    provider: ProviderState
    streams: Optional[EpisodeStreams] = None
    turn: int = 0
    turns_by_role: Dict[Role, int] = field(default_factory=lambda: {role: 0 for role in AGENTS})
    null_run: int = 0
    previous_bye: bool = False
    finished: bool = False
    last_record: Optional[TurnRecord] = None
    success: Optional[SuccessResult] = None
    breakdown: Optional[RewardBreakdown] = None

    @property
    def speaker(self) -> Role:
        return Role.PROVIDER if self.turn % 2 == 0 else Role.SEEKER

    def tracker(self, role: Role):
        return self.seeker if role is Role.SEEKER else self.provider


@dataclass
class EpisodeOutcome:
    goal: Goal
    success: SuccessResult
    breakdown: RewardBreakdown
    turns: int
    offered_name: Optional[str]
    transcript: List[TurnRecord]

    @property
    def objective_success(self) -> bool:
        return self.success.objective

    @property
    def seeker_success(self) -> bool:
        return self.success.seeker_subjective

    @property
    def provider_success(self) -> bool:
        return self.success.provider_subjective

    @property
    def seeker_return(self) -> float:
        return self.breakdown.seeker_terminal + sum(r.rewards[0] for r in self.transcript)

    @property
    def provider_return(self) -> float:
        return self.breakdown.provider_terminal + sum(r.rewards[1] for r in self.transcript)

    def to_dict(self) -> dict:
        return {
            "goal": self.goal.to_dict(),
            "objective_success": self.objective_success,
            "seeker_success": self.seeker_success,
            "provider_success": self.provider_success,
            "turns": self.turns,
            "offered_name": self.offered_name,
            "terminal_rewards": {
                Role.SEEKER.value: self.breakdown.seeker_terminal,
                Role.PROVIDER.value: self.breakdown.provider_terminal,
            },
            "returns": {
                Role.SEEKER.value: self.seeker_return,
                Role.PROVIDER.value: self.provider_return,
            },
        }


class DialogueGame(StochasticGame[DialogueState]):
    """
    Turn-based two-player stochastic game over the dialogue channel.

    Agent 0 is the seeker and agent 1 the provider. Episode randomness lives
    in the state's EpisodeStreams; the `rng` argument of `step` is not used.

    Args:
        db: Provider's item database (its domain is the game's domain)
        cfg: Episode settings
        stores: Template store per speaking role
        spaces: Action space per role
        goal_cfg: Goal sampler settings for `reset`
    """

    def __init__(
        self,
        db: Database,
        cfg: EpisodeConfig,
        stores: Mapping[Role, TemplateStore],
        spaces: Mapping[Role, ActionSpace],
        goal_cfg: Optional[GoalConfig] = None,
    ):
        self.db = db
        self.domain = db.domain
        self.cfg = cfg
        self.spaces = dict(spaces)
        self.goal_cfg = goal_cfg
        self.channel = Channel(
            cfg.channel_mode,
            stores,
            cfg.noise,
            acts_noise=cfg.acts_noise,
            domain=self.domain,
            vocabulary=db.vocabulary(),
            noise_overrides=cfg.noise_overrides,
        )
        self.encoders = {Role.SEEKER: SeekerEncoder(self.domain), Role.PROVIDER: ProviderEncoder(self.domain)}

    @property
    def n_agents(self) -> int:
        return 2

    def action_sizes(self) -> Tuple[int, ...]:
        return tuple(len(self.spaces[role]) for role in AGENTS)

    def new_episode(self, goal: Goal, streams: Optional[EpisodeStreams] = None) -> DialogueState:
        return DialogueState(
            goal=goal,
            seeker=SeekerState.initial(goal),
            provider=initial_provider_state(self.db),
            streams=streams,
        )

    def reset(self, rng: np.random.Generator) -> DialogueState:
        goal = sample_goal(self.domain, self.db, rng, self.goal_cfg)
        return self.new_episode(goal, EpisodeStreams.spawn(rng))

    def to_move(self, state: DialogueState) -> List[int]:
        return [] if state.finished else [AGENTS.index(state.speaker)]

    def observation(self, state: DialogueState, agent: int) -> StateId:
        role = AGENTS[agent]
        return self.state_id(state, role)

    def state_id(self, state: DialogueState, role: Role) -> StateId:
        return self.encoders[role].encode(state.tracker(role))

    def step(
        self, state: DialogueState, actions: Sequence[Optional[int]], rng: np.random.Generator
    ) -> Transition[DialogueState]:
        speaker = state.speaker
        index = actions[AGENTS.index(speaker)]
        space = self.spaces[speaker]
        if index is not None and not space.contains_index(index):
            raise ContractViolationError(
                f"{speaker.value} chose action {index}, space has {len(space)} actions"
            )

        if index is None:
            emitted: List[Frame] = []
        else:
            emitted = realize(space[index], speaker, state.tracker(speaker), self.domain)
        streams = state.streams
        if streams is None:
            raise ContractViolationError("episode state has no random streams")
        delivery = self.channel.deliver(
            emitted, speaker, streams.noise, streams.template, turn_index=state.turn
        )
        return self.fold_turn(state, index, delivery)

    def fold_turn(
        self, state: DialogueState, index: Optional[int], delivery: Delivery
    ) -> Transition[DialogueState]:
        """Apply one delivered turn to both trackers and decide termination."""
        speaker = state.speaker
        pk = self.domain.primary_key
        state_id = self.state_id(state, speaker)
        speaker_state = state.tracker(speaker)
        record_state = (
            speaker_state.to_dict() if speaker is Role.SEEKER else speaker_state.to_dict(pk)
        )

        seeker, provider = state.seeker, state.provider
        if speaker is Role.SEEKER:
            seeker = note_seeker_frames(seeker, delivery.emitted)
            provider = update_provider(provider, delivery.understood, self.db)
        else:
            provider = note_provider_frames(provider, delivery.emitted, pk)
            seeker = update_seeker(seeker, delivery.understood, self.domain)

        rewards = self._turn_rewards(speaker)
        record = TurnRecord(
            index=state.turn,
            speaker=speaker,
            action_index=index,
            action_token=None if index is None else self.spaces[speaker][index].token,
            state_id=state_id,
            state=record_state,
            emitted=tuple(delivery.emitted),
            after_noise=tuple(delivery.after_noise),
            understood=tuple(delivery.understood),
            utterance=delivery.utterance.text,
            rewards=rewards,
        )
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"turn {state.turn} {speaker.value}: {record.action_token} -> '{record.utterance}'")

        said_bye = any(frame.intent is Intent.BYE for frame in delivery.emitted)
        turns_by_role = dict(state.turns_by_role)
        turns_by_role[speaker] += 1
        null_run = state.null_run + 1 if delivery.is_null else 0
        turn = state.turn + 1
        finished = (said_bye and state.previous_bye) or null_run >= 2 or turn >= self.cfg.max_turns

        new = replace(
            state,
            seeker=seeker,
            provider=provider,
            turn=turn,
            turns_by_role=turns_by_role,
            null_run=null_run,
            previous_bye=said_bye,
            finished=finished,
            last_record=record,
        )
        if not finished:
            return Transition(new, rewards, False)

        new.success, new.breakdown = self._settle(new)
        terminal = (new.breakdown.seeker_terminal, new.breakdown.provider_terminal)
        return Transition(new, (rewards[0] + terminal[0], rewards[1] + terminal[1]), True)

    def _turn_rewards(self, speaker: Role) -> Tuple[float, float]:
        penalty = self.cfg.reward.turn_penalty
        if self.cfg.reward.turn_penalty_scope is TurnPenaltyScope.OWN:
            return tuple(penalty if role is speaker else 0.0 for role in AGENTS)
        return (penalty, penalty)

    def _settle(self, state: DialogueState) -> Tuple[SuccessResult, RewardBreakdown]:
        success = evaluate_success(
            state.goal,
            state.seeker,
            state.provider,
            state.provider.offered_item,
            self.domain.dontcare_token,
        )
        inputs = RewardInputs(
            turns=state.turn,
            seeker_turns=state.turns_by_role[Role.SEEKER],
            provider_turns=state.turns_by_role[Role.PROVIDER],
            success=success,
            unexpressed_requests=sum(
                1 for status in state.seeker.request_status.values() if status == UNREQUESTED
            ),
            unanswered_requests=sum(
                1 for answered in state.provider.requested_slots.values() if not answered
            ),
        )
        return success, compute_rewards(inputs, self.cfg.reward, self.cfg.subjective_rewards)

    def close(self, state: DialogueState) -> DialogueState:
        """End a dialogue before it terminated on its own and settle success and rewards."""
        if state.finished:
            return state
        closed = replace(state, finished=True)
        closed.success, closed.breakdown = self._settle(closed)
        return closed

    def outcome(self, state: DialogueState, transcript: List[TurnRecord]) -> EpisodeOutcome:
        if state.success is None or state.breakdown is None:
            raise ContractViolationError("episode has not terminated")
        offered = state.provider.offered_item
        return EpisodeOutcome(
            goal=state.goal,
            success=state.success,
            breakdown=state.breakdown,
            turns=state.turn,
            offered_name=offered[self.domain.primary_key] if offered is not None else None,
            transcript=transcript,
        )


def run_episode(
    game: DialogueGame,
    seeker: DialogueAgent,
    provider: DialogueAgent,
    goal: Goal,
    streams: EpisodeStreams,
    learning: bool = True,
) -> EpisodeOutcome:
    """
    Play one dialogue to termination.

    Args:
        game: The dialogue game (database, channel, action spaces)
        seeker: Seeker agent
        provider: Provider agent
        goal: The seeker's goal for this episode
        streams: Episode random streams
        learning: Run the agents' learning updates after each own transition

    Returns:
        EpisodeOutcome with the full transcript

    Raises:
        ContractViolationError: If an agent returns an index outside its action space
    """
    agents = {Role.SEEKER: seeker, Role.PROVIDER: provider}
    pending: Dict[Role, Optional[Tuple[StateId, int]]] = {role: None for role in AGENTS}
    collected: Dict[Role, float] = {role: 0.0 for role in AGENTS}
    transcript: List[TurnRecord] = []

    state = game.new_episode(goal, streams)
    while not state.finished:
        speaker = state.speaker
        agent = agents[speaker]
        state_id = game.state_id(state, speaker)

        if learning and pending[speaker] is not None:
            s, a = pending[speaker]
            agent.learn(s, a, collected[speaker], state_id, False)

        index = agent.select_action(Observation(state_id, state.tracker(speaker)), streams.explore[speaker])
        pending[speaker] = None if index is None else (state_id, index)
        collected[speaker] = 0.0

        actions: List[Optional[int]] = [None, None]
        actions[AGENTS.index(speaker)] = index
        transition = game.step(state, actions, streams.noise)
        for position, role in enumerate(AGENTS):
            collected[role] += transition.rewards[position]
        state = transition.state
        transcript.append(state.last_record)

    for role in AGENTS:
        if learning and pending[role] is not None:
            s, a = pending[role]
            agents[role].learn(s, a, collected[role], None, True)
        agents[role].end_episode()

    outcome = game.outcome(state, transcript)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            f"episode over after {outcome.turns} turns: success={outcome.objective_success} "
            f"goal={goal.describe()}"
        )
    return outcome


def replay_transcript(game: DialogueGame, goal: Goal, records: Sequence[TurnRecord]) -> EpisodeOutcome:
    """
    Re-fold logged turns through fresh trackers, without policies or randomness.

    Recomputes state ids, per-turn and terminal rewards and success from the
    logged emitted and understood frames.
    """
    state = game.new_episode(goal)
    transcript: List[TurnRecord] = []
    for record in records:
        if state.finished:
            raise ContractViolationError(f"transcript continues after termination at turn {record.index}")
        if record.speaker is not state.speaker:
            raise ContractViolationError(f"turn {record.index} logged for {record.speaker.value} out of order")
        delivery = Delivery(
            list(record.emitted),
            list(record.after_noise),
            Utterance(record.utterance, record.speaker, record.index),
            list(record.understood),
        )
        state = game.fold_turn(state, record.action_index, delivery).state
        transcript.append(state.last_record)
    return game.outcome(state, transcript)
