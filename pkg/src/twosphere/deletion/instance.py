"""Problem instances for deleting triangles until a 2-sphere remains."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple

from ..complex import Complex2, is_sphere
from ..errors import InvalidBudget


@dataclass(frozen=True)
class DeletionInstance:
    """Can at most ``k`` triangles be deleted from ``complex`` to leave a sphere?"""
    complex: Complex2
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise InvalidBudget(f"negative budget {self.k}")

    def weight(self, t) -> int:
        return 1

    def cost(self, triangles: Iterable) -> int:
        return sum(1 for _ in triangles)

    @property
    def weighted(self) -> bool:
        return False


@dataclass(frozen=True)
class WeightedInstance:
    """Like DeletionInstance, but deleting ``t`` costs ``weights[t]`` (default 1)."""
    complex: Complex2
    weights: Mapping[tuple, int]
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise InvalidBudget(f"negative budget {self.k}")
        bad = [t for t, w in self.weights.items() if w < 1]
        if bad:
            raise ValueError(f"weights must be positive integers, got {bad[:3]}")

    def weight(self, t) -> int:
        return self.weights.get(t, 1)

    def cost(self, triangles: Iterable) -> int:
        return sum(self.weights.get(t, 1) for t in triangles)

    @property
    def weighted(self) -> bool:
        return True

    def total_weight(self) -> int:
        return self.cost(self.complex.triangles)


@dataclass
class DeletionOutcome:
    feasible: bool
    deleted: Optional[Tuple[tuple, ...]] = None
    cost: Optional[int] = None
    stats: Dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "deleted": [list(t) for t in self.deleted] if self.deleted is not None else None,
            "cost": self.cost,
            **({"stats": self.stats} if self.stats else {}),
        }


def is_valid_deletion(instance, deleted: Iterable) -> bool:
    """Check a proposed deletion set: within budget and leaves a sphere."""
    K = instance.complex
    deleted = set(deleted)
    if not K.is_pure or not deleted <= K.triangle_set:
        return False
    if instance.cost(deleted) > instance.k:
        return False
    return is_sphere(K.without(deleted))
