"""
The communication channel between the two agents.

language mode: frames -> noise -> template NLG -> utterance -> partner's rule NLU
acts mode:     frames -> optional frame-level noise -> partner
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from parley.src.core.acts.models import Frame, Role
from parley.src.core.language.nlg import DONTCARE, Utterance, generate, render_generic
from parley.src.core.language.noise import NoiseConfig, NoiseModel
from parley.src.core.language.nlu import RuleNLU
from parley.src.core.language.templates import TemplateStore
from parley.src.core.ontology.models import Domain


class ChannelMode(str, Enum):
    ACTS = "acts"
    LANGUAGE = "language"


@dataclass(frozen=True)
class Delivery:
    """What happened to one turn's frames on the way to the partner."""
    emitted: List[Frame]
    after_noise: List[Frame]
    utterance: Utterance
    understood: List[Frame] = field(default_factory=list)

    @property
    def is_null(self) -> bool:
        return not self.understood


class Channel:
    """
    Args:
        mode: acts or language
        stores: Role -> template store producing that role's utterances
        noise: Noise applied upstream of NLG in language mode
        acts_noise: Frame-level noise applied in acts mode
        noise_overrides: Speaker -> noise replacing the active config for that speaker
        domain: Supplies slot confusion groups and the dontcare token
        vocabulary: slot -> values for value corruption
    """

    def __init__(
        self,
        mode: ChannelMode,
        stores: Mapping[Role, TemplateStore],
        noise: NoiseConfig,
        acts_noise: Optional[NoiseConfig] = None,
        domain: Optional[Domain] = None,
        vocabulary: Optional[Mapping[str, Sequence[str]]] = None,
        noise_overrides: Optional[Mapping[Role, NoiseConfig]] = None,
    ):
        self.mode = ChannelMode(mode)
        self.stores: Dict[Role, TemplateStore] = dict(stores)
        self.dontcare = domain.dontcare_token if domain is not None else DONTCARE
        # a listener understands its partner's templates
        self.nlus: Dict[Role, RuleNLU] = {
            role.partner: RuleNLU(store, self.dontcare) for role, store in self.stores.items()
        }
        active = noise if self.mode is ChannelMode.LANGUAGE else (acts_noise or NoiseConfig.lossless())
        self.noise: Dict[Role, NoiseModel] = {}
        for role in Role:
            cfg = (noise_overrides or {}).get(role, active)
            self.noise[role] = NoiseModel(cfg, vocabulary, domain)

    def deliver(
        self,
        frames: Sequence[Frame],
        speaker: Role,
        noise_rng: np.random.Generator,
        template_rng: np.random.Generator,
        turn_index: int = 0,
    ) -> Delivery:
        emitted = list(frames)
        after_noise = self.noise[speaker].apply(emitted, noise_rng)

        if self.mode is ChannelMode.ACTS:
            text = render_generic(after_noise) if after_noise else ""
            return Delivery(emitted, after_noise, Utterance(text, speaker, turn_index), list(after_noise))

        utterance = generate(self.stores[speaker], after_noise, template_rng, turn_index, self.dontcare)
        understood = self.understand(utterance.text, listener=speaker.partner)
        return Delivery(emitted, after_noise, utterance, understood)

    def understand(self, text: str, listener: Role) -> List[Frame]:
        return self.nlus[listener].understand(text)
