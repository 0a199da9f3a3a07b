"""
Annotated utterance corpora for NLU scoring.

Rows come from the MRs each role can actually produce: the MR's frames are
filled with vocabulary values, optionally corrupted by channel noise, and
realised through the role's templates. The gold annotation is always the
clean frames, so noisy corpora measure how much the channel loses.
"""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from parley.src.core.acts.models import REQUESTED_ARG, THIS_SLOT, Frame, Intent, Role
from parley.src.core.acts.mr import mr_to_frames
from parley.src.core.experiment.resources import Resources
from parley.src.core.game.agents import realizable_mrs
from parley.src.core.language.metrics import NLUScores, evaluate_nlu
from parley.src.core.language.nlg import generate
from parley.src.core.language.noise import NoiseConfig, NoiseModel
from parley.src.core.language.nlu import RuleNLU
from parley.src.core.utils.seeding import NOISE, TEMPLATE, derive_rng

CORPUS_STREAM = "nlu-corpus"

CorpusRow = Tuple[str, List[Frame]]


def fill_frames(
    skeleton: Sequence[Frame],
    vocabulary: Mapping[str, Sequence[str]],
    dontcare: str,
    rng: np.random.Generator,
) -> List[Frame]:
    """Give every valueless argument a vocabulary value; repeated slots get distinct values."""
    filled = []
    for frame in skeleton:
        if frame.intent is Intent.REQUEST:
            filled.append(frame)
            continue
        used: Dict[str, List[str]] = {}
        args = []
        for slot, value in frame.args:
            if slot == THIS_SLOT:
                args.append((slot, dontcare))
                continue
            if slot == REQUESTED_ARG or value is not None:
                args.append((slot, value))
                continue
            options = [v for v in vocabulary[slot] if v not in used.get(slot, [])]
            choice = options[int(rng.integers(len(options)))]
            used.setdefault(slot, []).append(choice)
            args.append((slot, choice))
        filled.append(Frame(frame.intent, tuple(args)))
    return filled


def build_nlu_corpus(
    resources: Resources,
    role: Role,
    n_rows: int,
    seed: int,
    noise: Optional[NoiseConfig] = None,
) -> List[CorpusRow]:
    """
    Args:
        resources: Domain, database, templates and action spaces
        role: Speaker whose utterances the corpus holds
        n_rows: Corpus size
        seed: Root seed for value, noise and template draws
        noise: Channel noise applied before realisation; None for a clean corpus

    Returns:
        (utterance text, gold frames) rows
    """
    store = resources.stores[role]
    mrs = [mr for mr in realizable_mrs(role, resources.spaces[role], resources.domain) if mr in store]
    vocabulary = resources.db.vocabulary()
    dontcare = resources.domain.dontcare_token
    noise_model = NoiseModel(noise or NoiseConfig.lossless(), vocabulary, resources.domain)

    value_rng = derive_rng(seed, CORPUS_STREAM, len(mrs))
    noise_rng = derive_rng(seed, NOISE)
    template_rng = derive_rng(seed, TEMPLATE)

    rows: List[CorpusRow] = []
    for index in range(n_rows):
        mr = mrs[int(value_rng.integers(len(mrs)))]
        gold = fill_frames(mr_to_frames(mr), vocabulary, dontcare, value_rng)
        said = noise_model.apply(gold, noise_rng)
        utterance = generate(store, said, template_rng, index, dontcare)
        rows.append((utterance.text, gold))
    return rows


def nlu_report(
    resources: Resources, n_rows: int, seed: int, noise: Optional[NoiseConfig] = None
) -> Dict[Role, NLUScores]:
    """Intent, slot and frame F1 of each listener's rule NLU on its partner's utterances."""
    scores = {}
    for role in Role:
        corpus = build_nlu_corpus(resources, role, n_rows, seed, noise)
        nlu = RuleNLU(resources.stores[role], resources.domain.dontcare_token)
        scores[role] = evaluate_nlu(nlu, corpus)
    return scores
