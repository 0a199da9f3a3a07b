"""
Parametric channel noise over frames.

Four error classes: whole frames dropped, a slot replaced by another slot of
its confusion group (a phone request answered as a post code), a value
replaced by a different in-vocabulary value, and a multi-token value cut
to its first token ("01223 356555" heard as "01223").

Draws are made per frame (drop) and then per argument (confusion,
corruption, truncation, in that order). A probability of zero consumes no
random draws, so a lossless config leaves the random stream untouched.
"""

from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from parley.src.core.acts.models import REQUESTED_ARG, Frame, Intent
from parley.src.core.ontology.models import Domain

DEFAULT_NOISE = 0.05


class NoiseConfig(BaseModel):
    p_frame_drop: float = Field(default=DEFAULT_NOISE, ge=0.0, le=1.0)
    p_slot_confusion: float = Field(default=DEFAULT_NOISE, ge=0.0, le=1.0)
    p_value_corruption: float = Field(default=DEFAULT_NOISE, ge=0.0, le=1.0)
    p_value_truncation: float = Field(default=DEFAULT_NOISE, ge=0.0, le=1.0)
    slot_confusions: Optional[Dict[str, List[str]]] = None

    @classmethod
    def lossless(cls) -> "NoiseConfig":
        return cls.uniform(0.0)

    @classmethod
    def uniform(cls, level: float) -> "NoiseConfig":
        """Same probability for all four error classes."""
        return cls(
            p_frame_drop=level,
            p_slot_confusion=level,
            p_value_corruption=level,
            p_value_truncation=level,
        )

    @property
    def is_lossless(self) -> bool:
        return (
            self.p_frame_drop == 0.0
            and self.p_slot_confusion == 0.0
            and self.p_value_corruption == 0.0
            and self.p_value_truncation == 0.0
        )


def default_confusion_groups(domain: Domain) -> Dict[str, List[str]]:
    """Informable slots confuse among themselves; so do non-key, non-informable requestables."""
    informables = domain.informable_names
    others = [
        slot for slot in domain.requestable_slots
        if slot != domain.primary_key and slot not in domain.informable_slots
    ]
    groups: Dict[str, List[str]] = {}
    for group in (informables, others):
        for slot in group:
            groups[slot] = [other for other in group if other != slot]
    return groups


class NoiseModel:
    """
    Applies NoiseConfig to frame lists.

    Args:
        cfg: Error probabilities
        vocabulary: slot -> known values, used for value corruption
        domain: When given, supplies default slot confusion groups
    """

    def __init__(
        self,
        cfg: NoiseConfig,
        vocabulary: Optional[Mapping[str, Sequence[str]]] = None,
        domain: Optional[Domain] = None,
    ):
        self.cfg = cfg
        self.vocabulary = {slot: list(values) for slot, values in (vocabulary or {}).items()}
        groups = default_confusion_groups(domain) if domain is not None else {}
        if cfg.slot_confusions:
            groups.update({slot: list(targets) for slot, targets in cfg.slot_confusions.items()})
        self.confusions = groups

    def apply(self, frames: Sequence[Frame], rng: np.random.Generator) -> List[Frame]:
        if self.cfg.is_lossless:
            return list(frames)

        noisy = []
        for frame in frames:
            if self.cfg.p_frame_drop > 0.0 and rng.random() < self.cfg.p_frame_drop:
                continue
            args = tuple(self._noisy_arg(frame.intent, slot, value, rng) for slot, value in frame.args)
            noisy.append(Frame(frame.intent, args))
        return noisy

    def _confuse(self, slot: str, rng: np.random.Generator) -> str:
        targets = self.confusions.get(slot)
        if not targets or self.cfg.p_slot_confusion <= 0.0:
            return slot
        if rng.random() < self.cfg.p_slot_confusion:
            return targets[int(rng.integers(len(targets)))]
        return slot

    def _noisy_arg(self, intent: Intent, slot: str, value, rng: np.random.Generator):
        if intent is Intent.REQUEST and slot == REQUESTED_ARG:
            return slot, self._confuse(value, rng)

        slot = self._confuse(slot, rng)
        if value is None:
            return slot, value

        if self.cfg.p_value_corruption > 0.0 and rng.random() < self.cfg.p_value_corruption:
            candidates = [v for v in self.vocabulary.get(slot, []) if v != value]
            if candidates:
                value = candidates[int(rng.integers(len(candidates)))]

        if self.cfg.p_value_truncation > 0.0 and rng.random() < self.cfg.p_value_truncation:
            tokens = value.split()
            if len(tokens) > 1:
                value = tokens[0]
        return slot, value


def apply_noise(
    frames: Sequence[Frame],
    cfg: NoiseConfig,
    rng: np.random.Generator,
    vocabulary: Optional[Mapping[str, Sequence[str]]] = None,
    domain: Optional[Domain] = None,
) -> List[Frame]:
    return NoiseModel(cfg, vocabulary, domain).apply(frames, rng)
