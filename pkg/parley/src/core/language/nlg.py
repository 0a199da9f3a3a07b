"""
Template NLG: frames -> utterance text.
"""

import logging
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Deque, Dict, List, Optional, Sequence

import numpy as np

from parley.src.core.acts.models import Frame, Intent, Role
from parley.src.core.acts.mr import frames_to_mr
from parley.src.core.language.templates import TemplateStore

logger = logging.getLogger(__name__)

DONTCARE = "dontcare"
DONTCARE_SURFACE = "any"
GENERIC_SEPARATOR = " ; "

_TAG = re.compile(r"<([a-z_]+)>")


@dataclass(frozen=True)
class Utterance:
    text: str
    speaker: Role
    turn_index: int = 0

    @property
    def is_empty(self) -> bool:
        return not self.text


def render_generic(frames: Sequence[Frame]) -> str:
    """Generic per-intent rendering used when an MR has no template."""
    return GENERIC_SEPARATOR.join(str(frame) for frame in frames)


def lexicalize(template: str, frames: Sequence[Frame], dontcare_token: str = DONTCARE) -> str:
    """Substitute each slot tag with its frame value; repeated tags consume values in order."""
    values: Dict[str, Deque[Optional[str]]] = defaultdict(deque)
    for frame in frames:
        if frame.intent is Intent.REQUEST:
            continue
        for slot, value in frame.args:
            values[slot].append(value)

    def substitute(match: re.Match) -> str:
        slot = match.group(1)
        queue = values.get(slot)
        if not queue:
            return match.group(0)
        value = queue.popleft()
        if value is None:
            return match.group(0)
        return DONTCARE_SURFACE if value == dontcare_token else value

    return _TAG.sub(substitute, template)


def generate(
    store: TemplateStore,
    frames: Sequence[Frame],
    rng: np.random.Generator,
    turn_index: int = 0,
    dontcare_token: str = DONTCARE,
) -> Utterance:
    """
    Realise frames as an utterance of the store's role.

    A template for the frames' MR is chosen uniformly with `rng`. An MR
    without templates falls back to the generic rendering and logs a
    coverage miss.
    """
    if not frames:
        return Utterance("", store.role, turn_index)

    mr = frames_to_mr(frames)
    templates: List[str] = store.templates(mr)
    if not templates:
        logger.warning(f"NLG coverage miss for {store.role.value} MR '{mr}'")
        return Utterance(render_generic(frames), store.role, turn_index)

    choice = int(rng.integers(len(templates))) if len(templates) > 1 else 0
    text = lexicalize(templates[choice], frames, dontcare_token)
    return Utterance(text, store.role, turn_index)
