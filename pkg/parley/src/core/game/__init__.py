from parley.src.core.game.agents import (
    DialogueAgent,
    LearningAgent,
    Observation,
    realizable_mrs,
    realize,
)
from parley.src.core.game.chat import QUIT_COMMAND, ChatSession
from parley.src.core.game.config import EpisodeConfig, RewardConfig, TurnPenaltyScope
from parley.src.core.game.episode import (
    AGENTS,
    DialogueGame,
    DialogueState,
    EpisodeOutcome,
    EpisodeStreams,
    TurnRecord,
    replay_transcript,
    run_episode,
)
from parley.src.core.game.policies import (
    AgendaSeeker,
    FixedActionAgent,
    RuleProvider,
    ScriptedAgent,
    handcrafted_agent,
)
from parley.src.core.game.rewards import RewardBreakdown, RewardInputs, compute_rewards
from parley.src.core.game.success import SuccessResult, evaluate_success
from parley.src.core.game.transcript import LoggedEpisode, read_transcripts, write_transcripts

__all__ = [
    "AGENTS",
    "AgendaSeeker",
    "ChatSession",
    "DialogueAgent",
    "DialogueGame",
    "DialogueState",
    "EpisodeConfig",
    "EpisodeOutcome",
    "EpisodeStreams",
    "FixedActionAgent",
    "LearningAgent",
    "LoggedEpisode",
    "Observation",
    "RewardBreakdown",
    "RewardConfig",
    "RewardInputs",
    "RuleProvider",
    "QUIT_COMMAND",
    "ScriptedAgent",
    "SuccessResult",
    "TurnPenaltyScope",
    "TurnRecord",
    "compute_rewards",
    "evaluate_success",
    "handcrafted_agent",
    "read_transcripts",
    "realizable_mrs",
    "realize",
    "replay_transcript",
    "run_episode",
    "write_transcripts",
]
