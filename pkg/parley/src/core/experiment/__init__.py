from parley.src.core.experiment.curves import CurveRow, MetricsWindow, read_curve, write_curve
from parley.src.core.experiment.evaluator import (
    EvaluationReport,
    RepetitionReport,
    build_agent,
    evaluate,
)
from parley.src.core.experiment.nlu_corpus import build_nlu_corpus, nlu_report
from parley.src.core.experiment.resources import Resources, build_resources
from parley.src.core.experiment.trainer import Trainer, TrainingResult, train

__all__ = [
    "CurveRow",
    "EvaluationReport",
    "MetricsWindow",
    "RepetitionReport",
    "Resources",
    "Trainer",
    "TrainingResult",
    "build_agent",
    "build_nlu_corpus",
    "build_resources",
    "evaluate",
    "nlu_report",
    "read_curve",
    "train",
    "write_curve",
]
