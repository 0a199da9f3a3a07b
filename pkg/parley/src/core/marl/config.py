from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class Algorithm(str, Enum):
    QLEARNING = "qlearning"
    PHC = "phc"
    WOLF_PHC = "wolf_phc"


class LearnerConfig(BaseModel):
    """
    Tabular learner hyperparameters.

    Attributes:
        algorithm: qlearning, phc or wolf_phc
        alpha: Initial Q learning rate
        alpha_decay_visits: alpha(s) = alpha / (1 + C(s) / alpha_decay_visits); None keeps alpha fixed
        gamma: Discount factor
        delta_w: Hill-climbing step while winning
        delta_l: Hill-climbing step while losing (also the PHC step)
        epsilon_start: Exploration rate at step 0
        epsilon_end: Exploration floor
        epsilon_decay_steps: Steps over which epsilon decays exponentially to epsilon_end;
            None means the length of the run
    """
    algorithm: Algorithm = Algorithm.WOLF_PHC
    alpha: float = Field(default=0.25, gt=0.0, le=1.0)
    alpha_decay_visits: Optional[float] = Field(default=1000.0, gt=0.0)
    gamma: float = Field(default=0.95, ge=0.0, le=1.0)
    delta_w: float = Field(default=0.01, gt=0.0)
    delta_l: float = Field(default=0.04, gt=0.0)
    epsilon_start: float = Field(default=0.95, ge=0.0, le=1.0)
    epsilon_end: float = Field(default=0.05, ge=0.0, le=1.0)
    epsilon_decay_steps: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_rates(self) -> "LearnerConfig":
        if not self.delta_w < self.delta_l:
            raise ValueError("delta_w must be smaller than delta_l")
        if self.epsilon_end > self.epsilon_start:
            raise ValueError("epsilon_end exceeds epsilon_start")
        return self

    def alpha_at(self, visits: int) -> float:
        if self.alpha_decay_visits is None:
            return self.alpha
        return self.alpha / (1.0 + visits / self.alpha_decay_visits)

    def epsilon_at(self, step: int, total_steps: Optional[int] = None) -> float:
        """Exponential interpolation from epsilon_start to epsilon_end, flat afterwards."""
        horizon = self.epsilon_decay_steps or total_steps
        if not horizon or self.epsilon_start == self.epsilon_end:
            return self.epsilon_start
        if step >= horizon:
            return self.epsilon_end
        if self.epsilon_end == 0.0:
            return self.epsilon_start * (1.0 - step / horizon)
        return self.epsilon_start * (self.epsilon_end / self.epsilon_start) ** (step / horizon)


class MatrixGameConfig(BaseModel):
    """Settings for the repeated matrix-game validation runs."""
    steps: int = Field(default=500_000, ge=1)
    snapshot_every: int = Field(default=1000, ge=1)
    tolerance: float = Field(default=0.05, gt=0.0)
    tail_fraction: float = Field(default=0.1, gt=0.0, le=1.0)
    learner: LearnerConfig = Field(
        default_factory=lambda: LearnerConfig(
            alpha=0.1,
            alpha_decay_visits=None,
            gamma=0.0,
            delta_w=0.001,
            delta_l=0.004,
            epsilon_start=0.95,
            epsilon_end=0.05,
        )
    )
