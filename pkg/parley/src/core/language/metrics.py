"""
Language metrics: max-reference BLEU, NLU F1 suite and intent-prefixed IOB tags.
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from nltk.util import ngrams

from parley.src.core.acts.models import Frame, Intent
from parley.src.core.errors import MissingReferenceError, TaggingError, UndefinedMetricError
from parley.src.core.language.templates import TemplateStore, normalize_text

MAX_ORDER = 4
DONTCARE = "dontcare"


def bleu(candidate: Sequence[str], reference: Sequence[str]) -> float:
    """
    Sentence BLEU against a single reference.

    Uniform weights over n-gram orders 1..min(4, len(candidate)), clipped
    counts, brevity penalty, no smoothing: any zero precision gives 0.
    """
    if not candidate:
        return 0.0
    max_order = min(MAX_ORDER, len(candidate))
    log_precisions = []
    for n in range(1, max_order + 1):
        cand_counts = Counter(ngrams(candidate, n))
        ref_counts = Counter(ngrams(reference, n))
        clipped = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
        total = sum(cand_counts.values())
        if clipped == 0:
            return 0.0
        log_precisions.append(math.log(clipped / total) / max_order)

    c, r = len(candidate), len(reference)
    brevity = 1.0 if c > r else math.exp(1.0 - r / c)
    return brevity * math.exp(math.fsum(log_precisions))


def bleu_max(candidate: str, mr: str, references: TemplateStore) -> float:
    """
    BLEU of a delexicalized candidate, maximised over every reference template of its MR.

    Raises:
        MissingReferenceError: If the store has no template for `mr`
    """
    refs = references.templates(" ".join(mr.split()))
    if not refs:
        raise MissingReferenceError(f"no reference templates for MR '{mr}'")
    tokens = normalize_text(candidate).split()
    if not tokens:
        return 0.0
    return max(bleu(tokens, ref.split()) for ref in refs)


@dataclass(frozen=True)
class NLUScores:
    intent_f1: float
    slot_f1: float
    frame_f1: float
    n_rows: int

    def to_dict(self) -> dict:
        return {
            "intent_f1": self.intent_f1,
            "slot_f1": self.slot_f1,
            "frame_f1": self.frame_f1,
            "n_rows": self.n_rows,
        }


def f1_from_counts(tp: int, fp: int, fn: int) -> float:
    denominator = 2 * tp + fp + fn
    if denominator == 0:
        return 1.0
    return 2 * tp / denominator


def _slot_chunks(frames: Iterable[Frame]) -> Counter:
    chunks: Counter = Counter()
    for frame in frames:
        if frame.intent is Intent.REQUEST:
            for slot in frame.slots:
                chunks[(f"request_{slot}", None)] += 1
            continue
        for slot, value in frame.args:
            chunks[(f"{frame.intent.value}_{slot}", value)] += 1
    return chunks


def _counts(gold: Counter, predicted: Counter) -> Tuple[int, int, int]:
    tp = sum((gold & predicted).values())
    return tp, sum(predicted.values()) - tp, sum(gold.values()) - tp


def score_predictions(rows: Sequence[Tuple[Sequence[Frame], Sequence[Frame]]]) -> NLUScores:
    """
    Micro-averaged F1 over (gold, predicted) frame lists.

    Intents are scored as per-row label sets, slots as (intent_slot, value)
    chunks and frames as whole frames.

    Raises:
        UndefinedMetricError: On an empty corpus
    """
    if not rows:
        raise UndefinedMetricError("cannot compute F1 on an empty corpus")

    totals = {"intent": [0, 0, 0], "slot": [0, 0, 0], "frame": [0, 0, 0]}
    for gold, predicted in rows:
        pairs = {
            "intent": (
                Counter({frame.intent for frame in gold}),
                Counter({frame.intent for frame in predicted}),
            ),
            "slot": (_slot_chunks(gold), _slot_chunks(predicted)),
            "frame": (Counter(gold), Counter(predicted)),
        }
        for name, (g, p) in pairs.items():
            for i, count in enumerate(_counts(g, p)):
                totals[name][i] += count

    return NLUScores(
        intent_f1=f1_from_counts(*totals["intent"]),
        slot_f1=f1_from_counts(*totals["slot"]),
        frame_f1=f1_from_counts(*totals["frame"]),
        n_rows=len(rows),
    )


def evaluate_nlu(nlu, corpus: Sequence[Tuple[str, Sequence[Frame]]]) -> NLUScores:
    """Run `nlu` over (utterance text, gold frames) rows and score it."""
    if not corpus:
        raise UndefinedMetricError("cannot compute F1 on an empty corpus")
    return score_predictions([(gold, nlu.understand(text)) for text, gold in corpus])


def frames_to_tags(tokens: Sequence[str], frames: Sequence[Frame], dontcare: str = DONTCARE) -> List[str]:
    """
    IOB tags whose names join intent and slot, e.g. B-deny_area.

    Each value is matched to its leftmost untagged contiguous span. Request
    arguments and dontcare values have no span and are skipped.

    Raises:
        TaggingError: Listing every value missing from the tokens
    """
    tags = ["O"] * len(tokens)
    missing = []
    for frame in frames:
        if frame.intent is Intent.REQUEST:
            continue
        for slot, value in frame.args:
            if value is None or value == dontcare:
                continue
            span = value.split()
            start = _find_span(tokens, span, tags)
            if start is None:
                missing.append(value)
                continue
            label = f"{frame.intent.value}_{slot}"
            tags[start] = f"B-{label}"
            for i in range(start + 1, start + len(span)):
                tags[i] = f"I-{label}"
    if missing:
        raise TaggingError(missing)
    return tags


def _find_span(tokens: Sequence[str], span: Sequence[str], tags: Sequence[str]):
    width = len(span)
    for start in range(len(tokens) - width + 1):
        if list(tokens[start:start + width]) == list(span) and all(
            tag == "O" for tag in tags[start:start + width]
        ):
            return start
    return None


def leave_one_out_bleu(store: TemplateStore) -> List[Tuple[str, str, float]]:
    """
    Score every template against its MR siblings with the template itself held out.

    MRs with a single template have no siblings and are skipped. Returns
    (mr, template, bleu_max) rows in store order; high scores mean the
    templates of an MR say much the same thing.
    """
    rows = []
    for mr, templates in store.entries.items():
        if len(templates) < 2:
            continue
        for i, template in enumerate(templates):
            siblings = TemplateStore(store.role, {mr: templates[:i] + templates[i + 1:]})
            rows.append((mr, template, bleu_max(template, mr, siblings)))
    return rows
