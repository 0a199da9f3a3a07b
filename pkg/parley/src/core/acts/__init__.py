from parley.src.core.acts.action_space import (
    ActionSpace,
    ActionSpaceConfig,
    build_action_space,
    parse_action,
)
from parley.src.core.acts.models import (
    REQUESTED_ARG,
    THIS_SLOT,
    Frame,
    Intent,
    PolicyAction,
    Role,
)
from parley.src.core.acts.mr import frames_to_mr, mr_to_frames, slot_tag

__all__ = [
    "ActionSpace",
    "ActionSpaceConfig",
    "Frame",
    "Intent",
    "PolicyAction",
    "REQUESTED_ARG",
    "Role",
    "THIS_SLOT",
    "build_action_space",
    "frames_to_mr",
    "mr_to_frames",
    "parse_action",
    "slot_tag",
]
