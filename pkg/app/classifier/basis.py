"""
Tensor-product polynomial basis over all s1-subsets of coordinates.

For each subset (lexicographic) the first K_n exponent tuples with every
exponent >= 1 are used, ordered by total degree and then lexicographically.
With s1 = 1 this is (t, t^2, ..., t^K_n) per coordinate.
"""
import itertools
from dataclasses import dataclass
from math import comb
from typing import List, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import DimensionOverflow, InvalidConfig


@dataclass(frozen=True)
class BasisConfig:
    s1: int = 1
    k_n: int = 3

    def dimension(self, d: int) -> int:
        return comb(d, self.s1) * self.k_n

    def to_dict(self) -> dict:
        return {"s1": self.s1, "k_n": self.k_n}


def exponent_tuples(s1: int, k_n: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []
    total = s1
    while len(out) < k_n:
        for combo in itertools.product(range(1, total - s1 + 2), repeat=s1):
            if sum(combo) == total:
                out.append(combo)
        total += 1
    return out[:k_n]


def _validate(d: int, cfg: BasisConfig, cap: int) -> int:
    if cfg.s1 < 1 or cfg.s1 > d:
        raise InvalidConfig(f"s1 must be in [1, {d}], got {cfg.s1}")
    if cfg.k_n < 1:
        raise InvalidConfig(f"K_n must be >= 1, got {cfg.k_n}")
    m = cfg.dimension(d)
    if m > cap:
        raise DimensionOverflow(m, cap)
    return m


def basis_expand_rows(z: np.ndarray, cfg: BasisConfig, cap: int = None) -> np.ndarray:
    """Expand each row of z (n x d) into m = C(d, s1) * K_n features."""
    cap = settings.BASIS_DIMENSION_CAP if cap is None else cap
    z = np.atleast_2d(np.asarray(z, dtype=float))
    n, d = z.shape
    m = _validate(d, cfg, cap)
    exps = exponent_tuples(cfg.s1, cfg.k_n)
    out = np.empty((n, m))
    col = 0
    for subset in itertools.combinations(range(d), cfg.s1):
        block = z[:, subset]
        for e in exps:
            out[:, col] = np.prod(block ** np.asarray(e), axis=1)
            col += 1
    return out


def basis_expand(z: np.ndarray, cfg: BasisConfig, cap: int = None) -> np.ndarray:
    """Expand a single point z in R^d."""
    return basis_expand_rows(np.ravel(z)[None, :], cfg, cap)[0]
