from parley.src.core.language.channel import Channel, ChannelMode, Delivery
from parley.src.core.language.metrics import (
    NLUScores,
    bleu,
    bleu_max,
    evaluate_nlu,
    frames_to_tags,
    leave_one_out_bleu,
    score_predictions,
)
from parley.src.core.language.nlg import Utterance, generate, lexicalize
from parley.src.core.language.noise import NoiseConfig, NoiseModel, apply_noise
from parley.src.core.language.nlu import RuleNLU, understand
from parley.src.core.language.templates import TemplateStore, load_templates, normalize_text

__all__ = [
    "Channel",
    "ChannelMode",
    "Delivery",
    "NLUScores",
    "NoiseConfig",
    "NoiseModel",
    "RuleNLU",
    "TemplateStore",
    "Utterance",
    "apply_noise",
    "bleu",
    "bleu_max",
    "evaluate_nlu",
    "frames_to_tags",
    "generate",
    "leave_one_out_bleu",
    "lexicalize",
    "load_templates",
    "normalize_text",
    "score_predictions",
    "understand",
]
