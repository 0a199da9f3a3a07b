from enum import Enum
from typing import Dict

from pydantic import BaseModel, Field, model_validator

from parley.src.core.acts.models import Role
from parley.src.core.language.channel import ChannelMode
from parley.src.core.language.noise import NoiseConfig


class TurnPenaltyScope(str, Enum):
    DIALOGUE = "dialogue"
    OWN = "own"


class RewardConfig(BaseModel):
    """
    Attributes:
        success_reward: Terminal reward on success
        failure_reward: Terminal reward otherwise
        turn_penalty: Added per turn
        unexpressed_request_penalty: Seeker, per goal request never made
        unanswered_request_penalty: Provider, per received request left unanswered
        turn_penalty_scope: 'dialogue' charges every agent for every turn,
            'own' charges an agent for its own turns only
    """
    success_reward: float = 20.0
    failure_reward: float = -10.0
    turn_penalty: float = -1.0
    unexpressed_request_penalty: float = Field(default=-2.0, le=0.0)
    unanswered_request_penalty: float = Field(default=-2.0, le=0.0)
    turn_penalty_scope: TurnPenaltyScope = TurnPenaltyScope.DIALOGUE

    @model_validator(mode="after")
    def _check_signs(self) -> "RewardConfig":
        if not self.success_reward > 0 > self.turn_penalty:
            raise ValueError("rewards need success_reward > 0 > turn_penalty")
        return self


class EpisodeConfig(BaseModel):
    """
    Attributes:
        max_turns: Hard turn limit
        channel_mode: 'acts' delivers frames directly, 'language' goes through NLG and NLU
        noise: Frame noise applied before NLG in language mode
        acts_noise: Frame noise applied in acts mode
        noise_overrides: Per-speaker replacement for the active noise config
        reward: Reward settings
        subjective_rewards: Reward each agent on its own perceived success
    """
    max_turns: int = Field(default=30, ge=2)
    channel_mode: ChannelMode = ChannelMode.LANGUAGE
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    acts_noise: NoiseConfig = Field(default_factory=NoiseConfig.lossless)
    noise_overrides: Dict[Role, NoiseConfig] = Field(default_factory=dict)
    reward: RewardConfig = Field(default_factory=RewardConfig)
    subjective_rewards: bool = False

    def active_noise(self) -> NoiseConfig:
        return self.noise if self.channel_mode is ChannelMode.LANGUAGE else self.acts_noise
