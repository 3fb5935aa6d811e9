"""
Sample split and within-half cyclic permutation.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import DegeneratePairing, RepeatedIndex, SampleTooSmall
from app.model.split import CyclicPairing, SplitPlan


@dataclass(frozen=True)
class TrainingSets:
    """Labeled training table over I1 and the evaluation pair table over I2.

    eval_joint[k] = (x, y) at i2[k]; eval_prod[k] = (x at i2[k], y at i2[k+1 mod n2]).
    """
    features: np.ndarray
    labels: np.ndarray
    eval_joint: np.ndarray
    eval_prod: np.ndarray
    plan: SplitPlan

    @property
    def n1(self) -> int:
        return len(self.plan.i1)

    @property
    def n2(self) -> int:
        return len(self.plan.i2)

    @property
    def train_joint(self) -> np.ndarray:
        return self.features[self.labels == 1]

    @property
    def train_prod(self) -> np.ndarray:
        return self.features[self.labels == 0]


def split_indices(n: int, seed: int) -> SplitPlan:
    """Seeded uniform shuffle; first ceil(n/2) positions form I1."""
    if n < settings.MIN_SAMPLE_SIZE:
        raise SampleTooSmall(n, settings.MIN_SAMPLE_SIZE)
    order = np.random.default_rng(seed).permutation(n)
    n1 = (n + 1) // 2
    return SplitPlan(i1=tuple(order[:n1].tolist()), i2=tuple(order[n1:].tolist()), seed=seed)


def cyclic_permute(sample, indices: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Return (x rows at indices[k], y rows at indices[(k+1) mod m]) in order."""
    indices = tuple(int(i) for i in indices)
    if len(indices) < 3:
        raise DegeneratePairing(len(indices))
    seen = set()
    for i in indices:
        if i in seen:
            raise RepeatedIndex(i)
        seen.add(i)
    pairing = CyclicPairing(indices)
    return sample.take_x(pairing.x_indices), sample.take_y(pairing.y_indices)


def _joint(sample, indices: Sequence[int]) -> np.ndarray:
    return np.hstack([sample.take_x(indices), sample.take_y(indices)])


def build_training_sets(sample, plan: SplitPlan) -> TrainingSets:
    x1b, y1b = cyclic_permute(sample, plan.i1)
    x2b, y2b = cyclic_permute(sample, plan.i2)

    train_joint = _joint(sample, plan.i1)
    train_prod = np.hstack([x1b, y1b])
    features = np.vstack([train_joint, train_prod])
    labels = np.concatenate([np.ones(len(plan.i1)), np.zeros(len(plan.i1))])

    return TrainingSets(
        features=features,
        labels=labels,
        eval_joint=_joint(sample, plan.i2),
        eval_prod=np.hstack([x2b, y2b]),
        plan=plan,
    )
