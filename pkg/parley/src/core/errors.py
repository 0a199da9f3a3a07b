"""
Exception hierarchy for the parley simulation core.

The CLI maps every ParleyError to a runtime-failure exit code; configuration
problems are raised by the CLI layer itself (see parley.cli.utils.errors).
"""

from typing import List, Optional, Sequence


class ParleyError(Exception):
    """Base exception for parley core errors."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class DomainMismatchError(ParleyError):
    """A slot name or value does not belong to the domain."""


class DatabaseParseError(ParleyError):
    """Malformed item database file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(ParleyError):
    """Item database header does not cover the domain's slots."""


class MRParseError(ParleyError):
    """Meaning-representation string does not follow the MR grammar."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"token {position}: {message}")


class TemplateError(ParleyError):
    """Template file or template store is inconsistent."""


class TaggingError(ParleyError):
    """A frame value could not be located in the utterance tokens."""

    def __init__(self, missing: Sequence[str]):
        self.missing: List[str] = list(missing)
        super().__init__(f"values not found in utterance: {', '.join(self.missing)}")


class UndefinedMetricError(ParleyError):
    """Metric requested on an empty corpus."""


class MissingReferenceError(ParleyError):
    """BLEU requested for an MR with no reference templates."""


class ActionSpaceSizeError(ParleyError):
    """Generated action space does not have the configured size."""

    def __init__(self, expected: int, actions: Sequence[str]):
        self.expected = expected
        self.actions: List[str] = list(actions)
        super().__init__(
            f"action space has {len(self.actions)} actions, expected {expected}: "
            f"{', '.join(self.actions)}"
        )


class PolicyMismatchError(ParleyError):
    """Policy file does not match the running action space or format."""


class ContractViolationError(ParleyError):
    """An agent broke the game contract (e.g. out-of-space action index)."""


class CheckpointMismatchError(ParleyError):
    """A checkpoint was written by a run with a different seed or training config."""

    def __init__(self, message: str, changed: Sequence[str] = ()):
        self.changed: List[str] = list(changed)
        super().__init__(message)
