"""
Run-directory file helpers for the CLI.

Reports are written through a temporary sibling and renamed into place, so
an interrupted command never leaves a half-written report.json behind.
"""

import json
from pathlib import Path
from typing import Any, Mapping, Union

from parley.cli.utils.errors import FileSystemError


def prepare_output_dir(path: Union[str, Path]) -> Path:
    """
    Create the output directory of a command.

    Raises:
        FileSystemError: If the path is a file or cannot be created
    """
    path = Path(path).expanduser()
    if path.exists() and not path.is_dir():
        raise FileSystemError(f"Output path is a file, not a directory: {path}")
    try:
        path.mkdir(parents=True, exist_ok=True)
    except PermissionError:
        raise FileSystemError(f"Permission denied creating {path} (choose another --out)")
    except OSError as e:
        raise FileSystemError(f"Cannot create output directory {path}: {e}")
    return path


def write_text(path: Path, content: str) -> Path:
    """
    Replace a file's content in one rename.

    Raises:
        FileSystemError: If the file cannot be written
    """
    path = Path(path).expanduser()
    partial = path.with_name(f".{path.name}.partial")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        partial.write_text(content, encoding="utf-8")
        partial.replace(path)
    except OSError as e:
        partial.unlink(missing_ok=True)
        raise FileSystemError(f"Cannot write {path}: {e}")
    return path


def write_json_report(path: Path, document: Union[Mapping[str, Any], str]) -> Path:
    """Write a report document (a mapping, or JSON text already rendered)."""
    text = document if isinstance(document, str) else json.dumps(document, indent=2)
    return write_text(path, text.rstrip("\n") + "\n")


def read_text(path: Path) -> str:
    """
    Raises:
        FileSystemError: If the file is missing or unreadable
    """
    path = Path(path).expanduser()
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileSystemError(f"File not found: {path}")
    except (OSError, UnicodeDecodeError) as e:
        raise FileSystemError(f"Cannot read {path}: {e}")
