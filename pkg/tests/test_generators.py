import numpy as np
import pytest

from app.core.exceptions import InvalidConfig, InvalidModel
from app.simlab.generators import MODEL_IDS, SimModel, ar1_cholesky, generate
from app.utils.seeds import derive, fnv1a64, splitmix64


def _corr(a, b):
    return float(np.corrcoef(a, b)[0, 1])


def test_null_has_no_correlation():
    sample = generate(SimModel("M1", 0.0, 2, 2), 100_000, seed=1)
    assert abs(_corr(sample.x_rows[:, 0], sample.y_rows[:, 0])) < 0.01


def test_linear_signal_correlation():
    sample = generate(SimModel("M1", 1.0, 2, 2), 100_000, seed=2)
    assert _corr(sample.x_rows[:, 0], sample.y_rows[:, 0]) == pytest.approx(1 / np.sqrt(2), abs=0.02)


def test_ar1_structure():
    sample = generate(SimModel("M1", 0.0, 3, 1, covariance="ar1", rho=0.5), 100_000, seed=3)
    assert _corr(sample.x_rows[:, 0], sample.x_rows[:, 2]) == pytest.approx(0.25, abs=0.02)
    np.testing.assert_allclose(ar1_cholesky(3, 0.5) @ ar1_cholesky(3, 0.5).T, [[1, 0.5, 0.25], [0.5, 1, 0.5], [0.25, 0.5, 1]])


def test_noise_coordinates_are_standard():
    sample = generate(SimModel("M2", 1.0, 3, 3), 100_000, seed=4)
    for column in (sample.x_rows[:, 1], sample.y_rows[:, 2]):
        assert abs(column.mean()) < 0.02
        assert column.var() == pytest.approx(1.0, abs=0.02)


def test_every_model_is_deterministic():
    for model_id in MODEL_IDS:
        model = SimModel(model_id, 0.5, 2, 3)
        first, second = generate(model, 50, 9), generate(model, 50, 9)
        np.testing.assert_array_equal(first.y_rows, second.y_rows)
        assert (first.d1, first.d2) == (2, 3)


def test_student_t_tails_are_heavier():
    gaussian = generate(SimModel("M1", 0.0, 1, 1), 50_000, seed=5)
    heavy = generate(SimModel("M1", 0.0, 1, 1, tails="student_t"), 50_000, seed=5)
    assert np.abs(heavy.x_rows).max() > 3 * np.abs(gaussian.x_rows).max()


def test_invalid_models():
    with pytest.raises(InvalidModel):
        SimModel("M9")
    with pytest.raises(InvalidConfig):
        SimModel("M1", covariance="ar1", rho=1.0)
    with pytest.raises(InvalidConfig):
        SimModel("M1", a=-1.0)


def test_seed_mixer_reference_values():
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert fnv1a64("") == 0xCBF29CE484222325
    assert fnv1a64("a") == 0xAF63DC4C8601EC8C


def test_derived_seeds_are_distinct():
    seeds = {derive(42, "M1", a, rep) for a in range(5) for rep in range(500)}
    assert len(seeds) == 2500
    assert derive(42, "tie") != derive(42, "classifier")
    assert derive(42) == 42
