"""
Delexicalized template store.

File format: one record per line, "MR<TAB>template", UTF-8, one file per
role. Blank lines and lines starting with '#' are ignored. A meaning
representation may map to several templates.
"""

import logging
import re
from collections import Counter
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from parley.src.core.acts.models import Frame, Intent, Role
from parley.src.core.acts.mr import frames_to_mr, mr_to_frames
from parley.src.core.errors import MRParseError, TemplateError

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).resolve().parents[2] / "data" / "templates"

_TAG = re.compile(r"<([a-z_]+)>")


def normalize_text(text: str) -> str:
    """Lowercase, collapse whitespace, strip."""
    return " ".join(text.lower().split())


def template_tags(template: str) -> List[str]:
    return _TAG.findall(template)


def lexical_slots(frames: Iterable[Frame]) -> List[str]:
    """Slots whose values a template may lexicalize (request frames carry none)."""
    return [slot for frame in frames if frame.intent is not Intent.REQUEST for slot, _ in frame.args]


class TemplateStore:
    """
    MR string -> ordered template list for one role.

    Args:
        role: Role whose utterances these templates produce
        entries: MR -> templates, in file order
    """

    def __init__(self, role: Role, entries: Dict[str, List[str]]):
        self.role = role
        self.entries: Dict[str, List[str]] = {}
        for mr, templates in entries.items():
            self.add_all(mr, templates)

    def add_all(self, mr: str, templates: Iterable[str]) -> None:
        for template in templates:
            self.add(mr, template)

    def add(self, mr: str, template: str) -> None:
        """
        Register a template for an MR.

        Raises:
            TemplateError: If the MR is malformed or the template uses a tag
                its MR does not provide
        """
        mr = " ".join(mr.split())
        try:
            frames = mr_to_frames(mr)
        except MRParseError as e:
            raise TemplateError(f"invalid MR '{mr}': {e.message}")

        available = Counter(lexical_slots(frames))
        used = Counter(template_tags(template))
        extra = used - available
        if extra:
            raise TemplateError(
                f"template '{template}' uses tags not provided by '{mr}': {sorted(extra)}"
            )
        self.entries.setdefault(mr, []).append(normalize_text(template))

    def __contains__(self, mr: str) -> bool:
        return mr in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def templates(self, mr: str) -> List[str]:
        return self.entries.get(mr, [])

    def covers(self, frames: Iterable[Frame]) -> bool:
        return frames_to_mr(list(frames)) in self.entries

    def missing(self, mrs: Iterable[str]) -> List[str]:
        """MRs from `mrs` that have no template."""
        return [mr for mr in mrs if mr not in self.entries]

    def items(self) -> List[Tuple[str, str]]:
        """Every (MR, template) pair in store order."""
        return [(mr, template) for mr, templates in self.entries.items() for template in templates]

    @classmethod
    def load(cls, path: Union[str, Path], role: Role) -> "TemplateStore":
        """
        Load a per-role template file.

        Raises:
            TemplateError: On a malformed line, with its line number
        """
        store = cls(role, {})
        with open(path, "r", encoding="utf-8") as f:
            for line_no, raw in enumerate(f, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                if "\t" not in line:
                    raise TemplateError(f"{path}: line {line_no}: expected 'MR<TAB>template'")
                mr, template = line.split("\t", 1)
                if not template.strip():
                    raise TemplateError(f"{path}: line {line_no}: empty template")
                try:
                    store.add(mr, template)
                except TemplateError as e:
                    raise TemplateError(f"{path}: line {line_no}: {e.message}")
        logger.debug(f"Loaded {len(store.items())} {role.value} templates from {path}")
        return store

    def save(self, path: Union[str, Path]) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for mr, template in self.items():
                f.write(f"{mr}\t{template}\n")


def load_templates(role: Role, templates_dir: Optional[Union[str, Path]] = None) -> TemplateStore:
    directory = Path(templates_dir) if templates_dir else TEMPLATES_DIR
    return TemplateStore.load(directory / f"{role.value}.tsv", role)
