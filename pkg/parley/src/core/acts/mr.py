"""
Delexicalized meaning-representation (MR) strings.

Grammar: a space-separated sequence of act tokens ("act_<intent>"), each
followed by zero or more slot tags ("<slot>") in argument order, e.g.
"act_inform <food> act_inform <pricerange> act_offer <name>". Request
frames render the requested slot as their tag.
"""

import re
from typing import List, Sequence

from parley.src.core.acts.models import ACT_PREFIX, REQUESTED_ARG, Frame, Intent
from parley.src.core.errors import MRParseError

_TAG = re.compile(r"^<([a-z_]+)>$")


def slot_tag(slot: str) -> str:
    return f"<{slot}>"


def frames_to_mr(frames: Sequence[Frame]) -> str:
    """Serialize frames to their delexicalized MR string."""
    tokens: List[str] = []
    for frame in frames:
        tokens.append(frame.intent.token)
        tokens.extend(slot_tag(slot) for slot in frame.slots)
    return " ".join(tokens)


def mr_to_frames(mr: str) -> List[Frame]:
    """
    Parse an MR string into delexicalized frames.

    Raises:
        MRParseError: On an unknown act token, a tag with no preceding act,
            or any token outside the grammar; carries the token position
    """
    tokens = mr.split()
    if not tokens:
        raise MRParseError("empty meaning representation", position=0)

    parsed: List[tuple] = []
    for position, token in enumerate(tokens):
        tag = _TAG.match(token)
        if tag:
            if not parsed:
                raise MRParseError(f"slot tag '{token}' has no preceding act", position)
            parsed[-1][1].append(tag.group(1))
        elif token.startswith(ACT_PREFIX):
            try:
                intent = Intent.from_token(token)
            except ValueError:
                raise MRParseError(f"unknown act token '{token}'", position)
            parsed.append((intent, []))
        else:
            raise MRParseError(f"unexpected token '{token}'", position)

    frames = []
    for intent, slots in parsed:
        if intent is Intent.REQUEST:
            frames.append(Frame(intent, tuple((REQUESTED_ARG, slot) for slot in slots)))
        else:
            frames.append(Frame(intent, tuple((slot, None) for slot in slots)))
    return frames
