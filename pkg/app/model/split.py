"""
Split plan and cyclic pairing entities.
"""
import json
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np


@dataclass(frozen=True)
class SplitPlan:
    """Partition of {0..n-1} into a training half i1 and an evaluation half i2."""
    i1: Tuple[int, ...]
    i2: Tuple[int, ...]
    seed: int

    @property
    def n(self) -> int:
        return len(self.i1) + len(self.i2)

    def to_dict(self) -> dict:
        return {"i1": list(self.i1), "i2": list(self.i2), "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, raw: str) -> "SplitPlan":
        data = json.loads(raw)
        return cls(i1=tuple(int(i) for i in data["i1"]), i2=tuple(int(i) for i in data["i2"]), seed=int(data["seed"]))


@dataclass(frozen=True)
class CyclicPairing:
    """Pairs X at indices[k] with Y at indices[(k+1) mod m]."""
    indices: Tuple[int, ...]

    @property
    def x_indices(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int)

    @property
    def y_indices(self) -> np.ndarray:
        return np.roll(self.x_indices, -1)

    def pairs(self) -> List[Tuple[int, int]]:
        return list(zip(self.x_indices.tolist(), self.y_indices.tolist()))
