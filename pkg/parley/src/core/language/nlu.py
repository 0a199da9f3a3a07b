"""
Rule-based NLU: the inverse of a role's template store.

Each template compiles to a regular expression with one lazy group per slot
tag. An utterance is matched against every template; among the templates
that match the whole normalized text, the one with the most literal
characters wins, ties broken by store order.
"""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from parley.src.core.acts.models import REQUESTED_ARG, Frame, Intent
from parley.src.core.acts.mr import mr_to_frames
from parley.src.core.language.nlg import DONTCARE, DONTCARE_SURFACE, GENERIC_SEPARATOR, Utterance
from parley.src.core.language.templates import TemplateStore, normalize_text

logger = logging.getLogger(__name__)

_TAG_SPLIT = re.compile(r"<([a-z_]+)>")
_GENERIC_FRAME = re.compile(r"^([a-z_]+)\((.*)\)$")
_GENERIC_ARG = re.compile(r"(?:^|, )([a-z_]+)=")
_GENERIC_SLOTS = re.compile(r"^[a-z_]+(?:, [a-z_]+)*$")


@dataclass(frozen=True)
class CompiledTemplate:
    mr: str
    template: str
    pattern: "re.Pattern[str]"
    tags: Tuple[str, ...]
    frames: Tuple[Frame, ...]
    literal_chars: int
    order: int


def compile_template(mr: str, template: str, order: int) -> CompiledTemplate:
    pieces = _TAG_SPLIT.split(template)
    literals = pieces[0::2]
    tags = tuple(pieces[1::2])
    regex = "".join(
        re.escape(piece) if i % 2 == 0 else "(.+?)" for i, piece in enumerate(pieces)
    )
    return CompiledTemplate(
        mr=mr,
        template=template,
        pattern=re.compile(regex),
        tags=tags,
        frames=tuple(mr_to_frames(mr)),
        literal_chars=sum(len(literal) for literal in literals),
        order=order,
    )


class RuleNLU:
    """
    Understands utterances produced from `store` (the speaker's templates).

    Args:
        store: Template store of the role being understood
        dontcare_token: Domain dontcare value
    """

    def __init__(self, store: TemplateStore, dontcare_token: str = DONTCARE):
        self.store = store
        self.dontcare_token = dontcare_token
        compiled = [
            compile_template(mr, template, order)
            for order, (mr, template) in enumerate(store.items())
        ]
        self._candidates = sorted(compiled, key=lambda c: (-c.literal_chars, c.order))

    def understand(self, utterance: Union[Utterance, str]) -> List[Frame]:
        """Parse an utterance; returns [] when nothing matches."""
        text = utterance.text if isinstance(utterance, Utterance) else utterance
        text = normalize_text(text)
        if not text:
            return []

        for candidate in self._candidates:
            match = candidate.pattern.fullmatch(text)
            if match:
                return self._fill(candidate, match.groups())

        frames = self._parse_generic(text)
        if not frames:
            logger.debug(f"No template matches '{text}'")
        return frames

    def _surface_to_value(self, value: str) -> str:
        return self.dontcare_token if value == DONTCARE_SURFACE else value

    def _fill(self, candidate: CompiledTemplate, groups: Sequence[str]) -> List[Frame]:
        captured: Dict[str, List[str]] = defaultdict(list)
        for tag, value in zip(candidate.tags, groups):
            captured[tag].append(value.strip())

        frames = []
        for frame in candidate.frames:
            if frame.intent is Intent.REQUEST:
                frames.append(frame)
                continue
            args = []
            for slot, _ in frame.args:
                values = captured.get(slot)
                value = values.pop(0) if values else self.dontcare_token
                args.append((slot, self._surface_to_value(value)))
            frames.append(Frame(frame.intent, tuple(args)))
        return frames

    def _parse_generic(self, text: str) -> List[Frame]:
        frames = []
        for segment in text.split(GENERIC_SEPARATOR.strip()):
            frame = self._parse_generic_frame(segment.strip())
            if frame is None:
                return []
            frames.append(frame)
        return frames

    def _parse_generic_frame(self, segment: str) -> Optional[Frame]:
        match = _GENERIC_FRAME.match(segment)
        if not match:
            return None
        try:
            intent = Intent(match.group(1))
        except ValueError:
            return None
        body = match.group(2).strip()
        if not body:
            return Frame(intent)
        if intent is Intent.REQUEST:
            if not _GENERIC_SLOTS.match(body):
                return None
            return Frame(intent, tuple((REQUESTED_ARG, slot) for slot in body.split(", ")))

        bounds = list(_GENERIC_ARG.finditer(body))
        if not bounds or bounds[0].start() != 0:
            if _GENERIC_SLOTS.match(body):
                return Frame(intent, tuple((slot, None) for slot in body.split(", ")))
            return None
        args = []
        for i, bound in enumerate(bounds):
            end = bounds[i + 1].start() if i + 1 < len(bounds) else len(body)
            args.append((bound.group(1), body[bound.end():end].strip()))
        return Frame(intent, tuple(args))


def understand(nlu: RuleNLU, utterance: Union[Utterance, str]) -> List[Frame]:
    return nlu.understand(utterance)
