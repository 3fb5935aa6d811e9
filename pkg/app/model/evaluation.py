"""
Scores of the evaluation half: joint rows and their cyclic-permuted partners.
"""
from dataclasses import dataclass

import numpy as np

from app.core.exceptions import LengthMismatch


@dataclass(frozen=True)
class ScoredEvaluation:
    """s_joint[k] = score(x_k, y_k); s_prod[k] = score(x_k, y_{k+1 mod n2})."""
    s_joint: np.ndarray
    s_prod: np.ndarray

    def __post_init__(self):
        a = np.array(self.s_joint, dtype=float).ravel()
        b = np.array(self.s_prod, dtype=float).ravel()
        if a.shape[0] != b.shape[0]:
            raise LengthMismatch(a.shape[0], b.shape[0])
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "s_joint", a)
        object.__setattr__(self, "s_prod", b)

    @property
    def n2(self) -> int:
        return self.s_joint.shape[0]

    def next_index(self) -> np.ndarray:
        """Cyclic successor map i -> i+1 (mod n2)."""
        return np.roll(np.arange(self.n2), -1)

    def transformed(self, fn) -> "ScoredEvaluation":
        return ScoredEvaluation(fn(self.s_joint), fn(self.s_prod))
