"""
Item database: loading, saving, generation and constraint queries.

File format: UTF-8 CSV, one record per item, header row of slot names. The
header must list every informable and requestable slot of the domain; column
order is free. Values containing commas are quoted.
"""

import csv
import logging
from collections import Counter
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import yaml

from parley.src.core.errors import DatabaseParseError, DomainMismatchError, SchemaError
from parley.src.core.ontology.models import Domain, ItemRecord, QueryResult

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parents[2] / "data"
BUNDLED_DOMAIN_FILE = DATA_DIR / "domain.yaml"
BUNDLED_DATABASE_FILE = DATA_DIR / "restaurants.csv"

_NAME_HEADS = [
    "golden", "little", "royal", "old", "blue", "silver",
    "lucky", "green", "grand", "happy", "wild", "red",
]
_NAME_TAILS = [
    "dragon", "lantern", "kitchen", "garden", "table",
    "spoon", "oven", "bistro", "tavern", "canteen",
]
_STREETS = [
    "regent street", "mill road", "hills road", "king street",
    "bridge street", "market square", "trumpington street", "newmarket road",
]


def slot_entropy(values: Sequence[str]) -> float:
    """Entropy in bits of the empirical value distribution."""
    if len(values) <= 1:
        return 0.0
    counts = np.array(list(Counter(values).values()), dtype=float)
    if counts.size == 1:
        return 0.0
    probabilities = counts / counts.sum()
    return float(-(probabilities * np.log2(probabilities)).sum())


class Database:
    """Immutable, non-empty ordered collection of items over a domain; query results are memoised."""

    def __init__(self, domain: Domain, items: Sequence[ItemRecord]):
        if not items:
            raise SchemaError(f"database for domain '{domain.name}' has no items")
        self.domain = domain
        self._items: Tuple[ItemRecord, ...] = tuple(items)
        self._queries: Dict[Tuple[Tuple[str, str], ...], QueryResult] = {}
        self._by_name: Dict[str, ItemRecord] = {
            item[domain.primary_key]: item for item in self._items
        }

    @property
    def items(self) -> Tuple[ItemRecord, ...]:
        return self._items

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[ItemRecord]:
        return iter(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Database):
            return NotImplemented
        return self.domain == other.domain and self._items == other._items

    def find(self, name: str) -> Optional[ItemRecord]:
        return self._by_name.get(name)

    def query(self, constraints: Mapping[str, str]) -> QueryResult:
        """
        Return every item matching the non-dontcare constraints.

        Raises:
            DomainMismatchError: If a constrained slot is not in the domain
        """
        for slot in constraints:
            if not self.domain.has_slot(slot):
                raise DomainMismatchError(f"unknown slot '{slot}' in query")

        key = tuple(sorted(constraints.items()))
        cached = self._queries.get(key)
        if cached is not None:
            return cached

        dontcare = self.domain.dontcare_token
        wanted = dict(constraints)
        matches = [item for item in self._items if item.matches(wanted, dontcare)]
        entropies = {
            slot: slot_entropy([item[slot] for item in matches])
            for slot in self.domain.informable_slots
        }
        result = QueryResult(items=matches, count=len(matches), slot_entropies=entropies)
        self._queries[key] = result
        return result

    def vocabulary(self) -> Dict[str, List[str]]:
        """Slot -> known values: domain lists for informables, DB columns otherwise."""
        vocab: Dict[str, List[str]] = {
            slot: list(values) for slot, values in self.domain.informable_slots.items()
        }
        for slot in self.domain.requestable_slots:
            if slot not in vocab:
                vocab[slot] = sorted({item[slot] for item in self._items})
        return vocab


def query(db: Database, constraints: Mapping[str, str]) -> QueryResult:
    return db.query(constraints)


def load_domain(path: Union[str, Path]) -> Domain:
    """Load a domain description from YAML."""
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    return Domain(**data)


def bundled_domain() -> Domain:
    return load_domain(BUNDLED_DOMAIN_FILE)


def load_database(path: Union[str, Path], domain: Domain) -> Database:
    """
    Load an item database file.

    Raises:
        SchemaError: If the header misses a domain slot
        DatabaseParseError: On malformed rows, carrying the 1-based line number
    """
    path = Path(path)
    items: List[ItemRecord] = []
    names = set()

    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise DatabaseParseError("empty database file", line=1)
        header = [column.strip() for column in header]

        missing = [slot for slot in domain.all_slots if slot not in header]
        if missing:
            raise SchemaError(f"{path}: missing slot columns: {', '.join(missing)}")

        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise DatabaseParseError(
                    f"expected {len(header)} fields, found {len(row)}", line=line
                )
            values = {column: cell.strip() for column, cell in zip(header, row)}
            for slot, allowed in domain.informable_slots.items():
                if values[slot] not in allowed:
                    raise DatabaseParseError(
                        f"value '{values[slot]}' is not a {slot} value of domain '{domain.name}'",
                        line=line,
                    )
            name = values[domain.primary_key]
            if not name or name in names:
                raise DatabaseParseError(f"empty or duplicate item name '{name}'", line=line)
            names.add(name)
            items.append(ItemRecord(values=values))

    if not items:
        raise DatabaseParseError("no item rows after the header", line=2)
    logger.debug(f"Loaded {len(items)} items from {path}")
    return Database(domain, items)


def bundled_database(domain: Optional[Domain] = None) -> Database:
    return load_database(BUNDLED_DATABASE_FILE, domain or bundled_domain())


def save_database(db: Database, path: Union[str, Path]) -> None:
    """Write the database in the documented CSV format (domain slot order)."""
    columns = db.domain.all_slots
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for item in db:
            writer.writerow([item[column] for column in columns])


def _item_names(n_items: int, rng: np.random.Generator) -> List[str]:
    combos = [f"{head} {tail}" for head in _NAME_HEADS for tail in _NAME_TAILS]
    order = rng.permutation(len(combos))
    names = []
    for i in range(n_items):
        base = combos[order[i % len(combos)]]
        lap = i // len(combos)
        names.append(base if lap == 0 else f"{base} {lap + 1}")
    return names


def generate_database(domain: Domain, n_items: int, seed: int) -> Database:
    """
    Generate a synthetic database.

    Every informable value appears at least once when n_items is at least the
    largest value-list size; output is a pure function of (domain, n_items, seed).
    """
    if n_items < 1:
        raise ValueError("n_items must be >= 1")

    rng = np.random.default_rng(seed)
    names = _item_names(n_items, rng)

    columns: Dict[str, List[str]] = {}
    for slot, values in domain.informable_slots.items():
        cover = [values[j] for j in rng.permutation(len(values))]
        column = [cover[i] if i < len(cover) else values[rng.integers(len(values))]
                  for i in range(n_items)]
        columns[slot] = [column[j] for j in rng.permutation(n_items)]

    items = []
    for i in range(n_items):
        values = {slot: columns[slot][i] for slot in domain.informable_slots}
        values[domain.primary_key] = names[i]
        for slot in domain.requestable_slots:
            if slot in values:
                continue
            values[slot] = _synthetic_value(slot, i, rng)
        items.append(ItemRecord(values=values))
    return Database(domain, items)


def _synthetic_value(slot: str, index: int, rng: np.random.Generator) -> str:
    if slot == "phone":
        return f"01223 {rng.integers(100000, 1000000)}"
    if slot == "postcode":
        letters = "abdefghjlnpqrstuwxyz"
        a, b = (letters[k] for k in rng.integers(len(letters), size=2))
        return f"c.b {rng.integers(1, 6)}, {rng.integers(1, 10)} {a}.{b}"
    if slot == "addr":
        return f"{rng.integers(1, 300)} {_STREETS[rng.integers(len(_STREETS))]}"
    return f"{slot} {index + 1}"
