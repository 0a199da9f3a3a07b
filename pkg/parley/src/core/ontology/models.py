from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Domain(BaseModel):
    """
    Slot-filling domain: informable slots with their value lists and the
    requestable slots a seeker may ask about.

    Attributes:
        name: Domain identifier
        informable_slots: slot name -> ordered value list
        requestable_slots: ordered requestable slot names (includes primary_key)
        dontcare_token: distinguished "I do not care" value
        primary_key: slot that names an item
    """
    model_config = ConfigDict(frozen=True)

    name: str
    informable_slots: Dict[str, List[str]]
    requestable_slots: List[str]
    dontcare_token: str = "dontcare"
    primary_key: str = "name"

    @model_validator(mode="after")
    def _check_shape(self) -> "Domain":
        for slot, values in self.informable_slots.items():
            if len(values) < 2:
                raise ValueError(f"informable slot '{slot}' needs at least 2 values")
            if len(set(values)) != len(values):
                raise ValueError(f"informable slot '{slot}' has duplicate values")
            if self.dontcare_token in values:
                raise ValueError(f"'{self.dontcare_token}' cannot be a regular value of '{slot}'")
        if not self.requestable_slots:
            raise ValueError("requestable slot list is empty")
        if len(set(self.requestable_slots)) != len(self.requestable_slots):
            raise ValueError("requestable slots contain duplicates")
        if self.primary_key not in self.requestable_slots:
            raise ValueError(f"primary key '{self.primary_key}' must be requestable")
        return self

    @property
    def informable_names(self) -> List[str]:
        return list(self.informable_slots)

    @property
    def all_slots(self) -> List[str]:
        """Every slot an item record must carry, requestables first."""
        extra = [s for s in self.informable_slots if s not in self.requestable_slots]
        return list(self.requestable_slots) + extra

    def values(self, slot: str) -> List[str]:
        return self.informable_slots[slot]

    def is_informable(self, slot: str) -> bool:
        return slot in self.informable_slots

    def has_slot(self, slot: str) -> bool:
        return slot in self.informable_slots or slot in self.requestable_slots


class ItemRecord(BaseModel):
    """One database row; `values` covers every slot of the domain."""
    model_config = ConfigDict(frozen=True)

    values: Dict[str, str]

    def __getitem__(self, slot: str) -> str:
        return self.values[slot]

    def get(self, slot: str, default: Optional[str] = None) -> Optional[str]:
        return self.values.get(slot, default)

    def matches(self, constraints: Dict[str, str], dontcare: str) -> bool:
        return all(
            value == dontcare or self.values.get(slot) == value
            for slot, value in constraints.items()
        )


class QueryResult(BaseModel):
    """Items matching a constraint set plus per-slot value entropies (bits)."""
    model_config = ConfigDict(frozen=True)

    items: List[ItemRecord]
    count: int
    slot_entropies: Dict[str, float]

    @model_validator(mode="after")
    def _check_count(self) -> "QueryResult":
        if self.count != len(self.items):
            raise ValueError("count must equal the number of items")
        return self

    def highest_entropy_slot(self) -> Optional[str]:
        """argmax of slot entropies; None when every entropy is zero."""
        best: Optional[str] = None
        best_value = 0.0
        for slot, value in self.slot_entropies.items():
            if value > best_value:
                best, best_value = slot, value
        return best


class Goal(BaseModel):
    """Seeker goal: constraints to impose and slots whose values to obtain."""
    model_config = ConfigDict(frozen=True)

    constraints: Dict[str, str]
    requests: Tuple[str, ...]

    @model_validator(mode="after")
    def _check_goal(self) -> "Goal":
        if not self.constraints:
            raise ValueError("goal needs at least one constraint")
        if not self.requests:
            raise ValueError("goal needs at least one request")
        if len(set(self.requests)) != len(self.requests):
            raise ValueError("goal requests contain duplicates")
        overlap = set(self.requests) & set(self.constraints)
        if overlap:
            raise ValueError(f"requests duplicate constrained slots: {sorted(overlap)}")
        return self

    def describe(self) -> str:
        """Render like 'Constr(food=italian), Req(addr)'."""
        parts = [f"Constr({slot}={value})" for slot, value in self.constraints.items()]
        parts += [f"Req({slot})" for slot in self.requests]
        return ", ".join(parts)

    def to_dict(self) -> dict:
        return {"constraints": dict(self.constraints), "requests": list(self.requests)}

    @classmethod
    def from_dict(cls, data: dict) -> "Goal":
        return cls(constraints=dict(data["constraints"]), requests=tuple(data["requests"]))


class GoalConfig(BaseModel):
    """Goal sampler settings (embedded in the experiment config)."""
    min_constraints: int = Field(default=2, ge=1)
    max_constraints: int = Field(default=3, ge=1)
    min_requests: int = Field(default=1, ge=1)
    max_requests: int = Field(default=2, ge=1)
    p_satisfiable: float = Field(default=1.0, ge=0.0, le=1.0)
    p_dontcare: float = Field(default=0.0, ge=0.0, le=1.0)
    request_pool: Optional[List[str]] = None
    max_unsatisfiable_attempts: int = Field(default=200, ge=1)

    @model_validator(mode="after")
    def _check_ranges(self) -> "GoalConfig":
        if self.min_constraints > self.max_constraints:
            raise ValueError("min_constraints exceeds max_constraints")
        if self.min_requests > self.max_requests:
            raise ValueError("min_requests exceeds max_requests")
        return self


def ordered_subset(order: Iterable[str], members: Iterable[str]) -> List[str]:
    """Members listed in `order`'s order."""
    wanted = set(members)
    return [slot for slot in order if slot in wanted]
