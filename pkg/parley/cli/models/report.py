"""
Report models written by the CLI commands.
"""

from datetime import datetime
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from parley.src.core.experiment.curves import CurveRow
from parley.src.core.experiment.evaluator import EvaluationReport


class RoleReturns(BaseModel):
    seeker: float
    provider: float


class CurvePoint(BaseModel):
    dialogues: int = Field(ge=1)
    success_rate: float = Field(ge=0.0, le=1.0)
    seeker_return: float
    provider_return: float
    avg_turns: float = Field(ge=0.0)


class RepetitionMetrics(BaseModel):
    repetition: int
    seed: int
    n_dialogues: int
    success_rate: float = Field(ge=0.0, le=1.0)
    avg_return: RoleReturns
    avg_turns: float


class MetricsReport(BaseModel):
    """
    Evaluation metrics of one seeker/provider pairing.

    Attributes:
        pairing: role -> policy file or 'handcrafted'
        success_rate: Mean objective success over repetitions
        avg_return: Mean cumulative return per role
        avg_turns: Mean dialogue length
        spread: Standard deviation over repetitions of each metric
        repetitions: Per-repetition metrics
        learning_curve: Training curve rows, when the policies came with one
    """
    pairing: Dict[str, str]
    success_rate: float = Field(ge=0.0, le=1.0)
    avg_return: RoleReturns
    avg_turns: float
    spread: Dict[str, float]
    repetitions: List[RepetitionMetrics]
    learning_curve: List[CurvePoint] = Field(default_factory=list)
    seed: int
    created_at: str = Field(default_factory=lambda: datetime.now().isoformat(timespec="seconds"))

    @model_validator(mode="after")
    def _check_curve(self) -> "MetricsReport":
        indices = [row.dialogues for row in self.learning_curve]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("learning curve rows must increase in dialogue index")
        return self

    @classmethod
    def from_evaluation(
        cls, report: EvaluationReport, seed: int, curve: Optional[List[CurveRow]] = None
    ) -> "MetricsReport":
        return cls(
            pairing=report.pairing,
            success_rate=report.mean("success_rate"),
            avg_return=RoleReturns(
                seeker=report.mean("seeker_return"), provider=report.mean("provider_return")
            ),
            avg_turns=report.mean("avg_turns"),
            spread={metric: report.std(metric) for metric in report.METRICS},
            repetitions=[
                RepetitionMetrics(
                    repetition=r.repetition,
                    seed=r.seed,
                    n_dialogues=r.n_dialogues,
                    success_rate=r.success_rate,
                    avg_return=RoleReturns(seeker=r.seeker_return, provider=r.provider_return),
                    avg_turns=r.avg_turns,
                )
                for r in report.repetitions
            ],
            learning_curve=[CurvePoint(**row.to_dict()) for row in curve or []],
            seed=seed,
        )

    def to_json(self, include_timestamp: bool = False) -> str:
        """Report as JSON; the timestamp is left out by default so reruns compare byte for byte."""
        exclude = None if include_timestamp else {"created_at"}
        return self.model_dump_json(indent=2, exclude=exclude)


class ValidationCheck(BaseModel):
    name: str
    passed: bool
    details: Dict[str, object]


class ValidationReport(BaseModel):
    """Matrix-game convergence suite results."""
    seed: int
    steps: int
    checks: List[ValidationCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @classmethod
    def from_checks(cls, checks: Dict[str, dict], seed: int, steps: int) -> "ValidationReport":
        return cls(
            seed=seed,
            steps=steps,
            checks=[
                ValidationCheck(
                    name=name,
                    passed=bool(result["passed"]),
                    details={k: v for k, v in result.items() if k != "passed"},
                )
                for name, result in checks.items()
            ],
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
