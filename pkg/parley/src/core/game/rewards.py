from dataclasses import dataclass

from parley.src.core.game.config import RewardConfig, TurnPenaltyScope
from parley.src.core.game.success import SuccessResult


@dataclass(frozen=True)
class RewardInputs:
    """Episode facts the terminal rewards depend on."""
    turns: int
    seeker_turns: int
    provider_turns: int
    success: SuccessResult
    unexpressed_requests: int
    unanswered_requests: int


@dataclass(frozen=True)
class RewardBreakdown:
    seeker_terminal: float
    provider_terminal: float
    seeker_turn_penalty: float
    provider_turn_penalty: float

    @property
    def seeker_return(self) -> float:
        return self.seeker_terminal + self.seeker_turn_penalty

    @property
    def provider_return(self) -> float:
        return self.provider_terminal + self.provider_turn_penalty


def turn_penalties(inputs: RewardInputs, cfg: RewardConfig) -> tuple:
    if cfg.turn_penalty_scope is TurnPenaltyScope.OWN:
        return cfg.turn_penalty * inputs.seeker_turns, cfg.turn_penalty * inputs.provider_turns
    return cfg.turn_penalty * inputs.turns, cfg.turn_penalty * inputs.turns


def compute_rewards(inputs: RewardInputs, cfg: RewardConfig, subjective: bool = False) -> RewardBreakdown:
    """
    Terminal rewards plus accumulated turn penalties per agent.

    Each agent gets success_reward or failure_reward (objective success, or
    its own subjective success when `subjective`), plus the per-slot
    penalties: the seeker for goal requests it never made, the provider for
    requests it heard and left unanswered.
    """
    if subjective:
        seeker_ok, provider_ok = inputs.success.seeker_subjective, inputs.success.provider_subjective
    else:
        seeker_ok = provider_ok = inputs.success.objective

    seeker_terminal = (cfg.success_reward if seeker_ok else cfg.failure_reward) + (
        cfg.unexpressed_request_penalty * inputs.unexpressed_requests
    )
    provider_terminal = (cfg.success_reward if provider_ok else cfg.failure_reward) + (
        cfg.unanswered_request_penalty * inputs.unanswered_requests
    )
    seeker_penalty, provider_penalty = turn_penalties(inputs, cfg)
    return RewardBreakdown(seeker_terminal, provider_terminal, seeker_penalty, provider_penalty)
