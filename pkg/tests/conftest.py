"""
Shared fixtures: small seeded samples and on-disk inputs.
"""
import numpy as np
import pandas as pd
import pytest

from app.model.sample import PairedSample
from app.simlab.generators import SimModel, generate


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def null_sample():
    return generate(SimModel("M1", 0.0, 2, 2), 200, seed=3)


@pytest.fixture
def dependent_sample():
    return generate(SimModel("M1", 1.0, 2, 2), 400, seed=5)


@pytest.fixture
def small_sample(rng):
    return PairedSample(rng.normal(size=(10, 2)), rng.normal(size=(10, 1)))


@pytest.fixture
def csv_path(tmp_path, rng):
    """40-row CSV with columns a, b, c."""
    frame = pd.DataFrame(rng.normal(size=(40, 3)), columns=["a", "b", "c"])
    path = tmp_path / "data.csv"
    frame.to_csv(path, index=False)
    return path


def write_triplets(path, n_rows, n_cols, triplets, header=True):
    lines = []
    if header:
        lines.append("%%MatrixMarket matrix coordinate real general")
    lines.append(f"{n_rows} {n_cols} {len(triplets)}")
    lines.extend(f"{r} {c} {v}" for r, c, v in triplets)
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def sparse_pair(tmp_path):
    """20 observations; X 20x5 and Y 20x3 with a few nonzeros per row."""
    rng = np.random.default_rng(8)
    x = [(i + 1, int(rng.integers(1, 6)), float(rng.integers(1, 9))) for i in range(20)]
    y = [(i + 1, int(rng.integers(1, 4)), float(rng.integers(1, 9))) for i in range(20)]
    return (
        write_triplets(tmp_path / "X.mtx", 20, 5, x),
        write_triplets(tmp_path / "Y.mtx", 20, 3, y),
    )
