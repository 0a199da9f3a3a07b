from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from parley.src.core.acts.action_space import ActionSpaceConfig
from parley.src.core.game.config import EpisodeConfig
from parley.src.core.marl.config import LearnerConfig, MatrixGameConfig
from parley.src.core.ontology.models import GoalConfig

load_dotenv()

# Constants
OUTPUT_BASE_DIR = "output"
CURVE_FILENAME = "learning_curve.csv"
REPORT_FILENAME = "report.json"
VALIDATION_FILENAME = "validation.json"
NLG_REPORT_FILENAME = "nlg_eval.json"
NLU_REPORT_FILENAME = "nlu_eval.json"
CHAT_TRANSCRIPT_FILENAME = "chat_transcript.jsonl"
TRANSCRIPTS_FILENAME = "transcripts_rep{repetition}.jsonl"
CHECKPOINT_DIR = "checkpoint"
CHECKPOINT_STATE_FILENAME = "state.json"
EFFECTIVE_CONFIG_FILENAME = "config.yaml"
POLICY_FILENAME = "{role}_policy.json.gz"
DEFAULT_CHECKPOINT_EVERY = 200
DEFAULT_CURVE_WINDOW = 200


def policy_filename(role: str) -> str:
    return POLICY_FILENAME.format(role=role)


class ExperimentConfig(BaseModel):
    """
    One experiment: what to train, how to evaluate, where things live.

    Attributes:
        seed: Root seed every random stream derives from
        n_train_dialogues: Training dialogues per run
        n_eval_dialogues: Evaluation dialogues per repetition
        n_repetitions: Evaluation repetitions with distinct derived seeds
        checkpoint_every: Dialogues between learning-curve rows and checkpoints
        curve_window: Moving window the curve metrics are averaged over
        eval_workers: Worker processes for evaluation (1 runs in-process)
        seeker: Seeker learner settings
        provider: Provider learner settings
        episode: Channel, noise, turn limit and rewards
        goal: Goal sampler settings
        action_space: Action space settings
        matrix: Matrix-game validation settings
        domain_path: Domain YAML; None uses the bundled restaurant domain
        database_path: Item CSV; None uses the bundled database
        generated_items: Generate a synthetic database of this size instead of loading one
        templates_dir: Directory with seeker.tsv and provider.tsv; None uses the bundled ones
        save_transcripts: Write evaluation transcripts
        output_dir: Where runs write their files
    """
    seed: int = 0
    n_train_dialogues: int = Field(default=20_000, ge=1)
    n_eval_dialogues: int = Field(default=1_000, ge=1)
    n_repetitions: int = Field(default=3, ge=1)
    checkpoint_every: int = Field(default=DEFAULT_CHECKPOINT_EVERY, ge=1)
    curve_window: int = Field(default=DEFAULT_CURVE_WINDOW, ge=1)
    eval_workers: int = Field(default=1, ge=1)
    seeker: LearnerConfig = Field(default_factory=LearnerConfig)
    provider: LearnerConfig = Field(default_factory=LearnerConfig)
    episode: EpisodeConfig = Field(default_factory=EpisodeConfig)
    goal: GoalConfig = Field(default_factory=GoalConfig)
    action_space: ActionSpaceConfig = Field(default_factory=ActionSpaceConfig)
    matrix: MatrixGameConfig = Field(default_factory=MatrixGameConfig)
    domain_path: Optional[Path] = None
    database_path: Optional[Path] = None
    generated_items: Optional[int] = Field(default=None, ge=1)
    templates_dir: Optional[Path] = None
    save_transcripts: bool = True
    output_dir: Path = Path(OUTPUT_BASE_DIR)

    @model_validator(mode="after")
    def _check_paths(self) -> "ExperimentConfig":
        for name in ("domain_path", "database_path", "templates_dir"):
            path = getattr(self, name)
            if path is not None and not path.exists():
                raise ValueError(f"{name} does not exist: {path}")
        if self.database_path is not None and self.generated_items is not None:
            raise ValueError("set either database_path or generated_items, not both")
        return self

    def learner(self, role: str) -> LearnerConfig:
        return self.seeker if role == "seeker" else self.provider


class RuntimeSettings(BaseSettings):
    """Environment overrides (PARLEY_OUTPUT_DIR, PARLEY_LOG_LEVEL), also read from .env."""
    model_config = SettingsConfigDict(env_prefix="PARLEY_", env_file=".env", extra="ignore")

    output_dir: Optional[Path] = None
    log_level: str = "INFO"
