import gzip
import io
import json
import os
from typing import IO, Any, Dict, Iterable, List, Optional


# ------------------------------------------------------------
# ---------------------- File Manager ---------------------
# ------------------------------------------------------------

def _open(filepath: str, mode: str) -> IO[str]:
    """Open text files, transparently gzip-compressed when the name ends with .gz."""
    if str(filepath).endswith(".gz"):
        if "w" in mode:
            # fixed mtime keeps compressed output byte-identical across runs
            return io.TextIOWrapper(
                gzip.GzipFile(filename=filepath, mode="wb", mtime=0), encoding="utf-8"
            )
        return gzip.open(filepath, "rt", encoding="utf-8")
    return open(filepath, mode, encoding="utf-8")


class FileManager:
    """Handles file I/O operations."""

    @staticmethod
    def ensure_directory(path: str) -> None:
        """Create directory if it doesn't exist."""
        os.makedirs(path, exist_ok=True)

    @staticmethod
    def save_json(data: Any, filepath: str, indent: Optional[int] = 2) -> None:
        """Save data as JSON with sorted keys so equal data gives equal bytes."""
        with _open(filepath, "w") as f:
            json.dump(data, f, indent=indent, sort_keys=True)
            f.write("\n")

    @staticmethod
    def load_json(filepath: str) -> Optional[Dict[str, Any]]:
        """Load JSON from file, return None if file doesn't exist."""
        if not os.path.exists(filepath):
            return None
        with _open(filepath, "r") as f:
            return json.load(f)

    @staticmethod
    def save_jsonl(records: Iterable[Dict[str, Any]], filepath: str) -> None:
        with _open(filepath, "w") as f:
            for record in records:
                f.write(json.dumps(record, sort_keys=True) + "\n")

    @staticmethod
    def load_jsonl(filepath: str) -> List[Dict[str, Any]]:
        with _open(filepath, "r") as f:
            return [json.loads(line) for line in f if line.strip()]

    @staticmethod
    def save_text(content: str, filepath: str) -> None:
        """Save text content to file."""
        with open(filepath, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)


file_manager = FileManager()
