import numpy as np
import pytest
from scipy import stats

from app.core.exceptions import DegeneratePairing, RepeatedIndex, SampleTooSmall
from app.model.sample import PairedSample, StandardizationStats
from app.model.split import CyclicPairing, SplitPlan
from app.service.preprocess_service import standardize, standardize_columns
from app.service.split_service import build_training_sets, cyclic_permute, split_indices
from app.simlab.generators import SimModel, generate
from app.utils.seeds import derive


def test_standardize_column():
    out, mean, std = standardize_columns(np.array([[1.0], [2.0], [3.0]]))
    assert mean[0] == pytest.approx(2.0)
    assert std[0] == pytest.approx(1.0)
    assert out.mean() == pytest.approx(0.0, abs=1e-15)
    assert out.std(ddof=1) == pytest.approx(1.0)


def test_constant_column_is_left_alone():
    out, _, std = standardize_columns(np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 4.0]]))
    np.testing.assert_array_equal(out[:, 0], [5.0, 5.0, 5.0])
    assert std[0] == 0


def test_standardize_twice_is_identity(rng):
    sample = PairedSample(rng.normal(3.0, 2.0, size=(30, 2)), np.column_stack([rng.normal(size=30), np.full(30, 5.0)]))
    once, stats = standardize(sample)
    twice, _ = standardize(once)
    assert stats.constant_columns == 1
    np.testing.assert_allclose(twice.x_rows, once.x_rows, atol=1e-12)
    np.testing.assert_allclose(twice.y_rows, once.y_rows, atol=1e-12)


def test_stats_json_round_trip(small_sample):
    _, stats = standardize(small_sample)
    again = StandardizationStats.from_json(stats.to_json())
    np.testing.assert_array_equal(again.x_mean, stats.x_mean)


def test_split_is_deterministic():
    assert split_indices(10, 7) == split_indices(10, 7)
    assert split_indices(10, 7) != split_indices(10, 8)


def test_split_sizes():
    plan = split_indices(9, 1)
    assert (len(plan.i1), len(plan.i2)) == (5, 4)
    assert sorted(plan.i1 + plan.i2) == list(range(9))


def test_split_too_small():
    with pytest.raises(SampleTooSmall):
        split_indices(6, 0)


def test_split_plan_json():
    plan = split_indices(12, 3)
    assert SplitPlan.from_json(plan.to_json()) == plan


def test_cyclic_permute_pairs():
    x = np.arange(3.0).reshape(-1, 1)
    sample = PairedSample(np.vstack([x, [[9.0]]]), np.vstack([10 + x, [[19.0]]]))
    xs, ys = cyclic_permute(sample, [0, 1, 2])
    np.testing.assert_array_equal(xs.ravel(), [0, 1, 2])
    np.testing.assert_array_equal(ys.ravel(), [11, 12, 10])
    assert CyclicPairing((0, 1, 2)).pairs() == [(0, 1), (1, 2), (2, 0)]


def test_cyclic_permute_identical_rows():
    sample = PairedSample(np.ones((5, 2)), np.full((5, 1), 3.0))
    xs, ys = cyclic_permute(sample, [4, 1, 3])
    np.testing.assert_array_equal(np.hstack([xs, ys]), np.hstack([sample.take_x([4, 1, 3]), sample.take_y([4, 1, 3])]))


def test_cyclic_permute_degenerate(small_sample):
    with pytest.raises(DegeneratePairing):
        cyclic_permute(small_sample, [0, 1])


def test_training_table_counts(rng):
    sample = PairedSample(rng.normal(size=(8, 2)), rng.normal(size=(8, 1)))
    sets = build_training_sets(sample, split_indices(8, 11))
    assert sets.features.shape == (8, 3)
    assert int(sets.labels.sum()) == 4
    assert sets.n1 == sets.n2 == 4
    assert sets.eval_joint.shape == sets.eval_prod.shape == (4, 3)


def test_evaluation_rows_follow_the_cycle(small_sample):
    plan = split_indices(small_sample.n, 2)
    sets = build_training_sets(small_sample, plan)
    i2 = list(plan.i2)
    for k in range(len(i2)):
        nxt = i2[(k + 1) % len(i2)]
        np.testing.assert_array_equal(sets.eval_prod[k, :2], small_sample.x_rows[i2[k]])
        np.testing.assert_array_equal(sets.eval_prod[k, 2:], small_sample.y_rows[nxt])


def test_split_partitions_every_size():
    for k in range(300):
        rng = np.random.default_rng(derive(21, k))
        n = int(rng.integers(8, 500))
        seed = derive(22, k)
        plan = split_indices(n, seed)
        assert not set(plan.i1) & set(plan.i2)
        assert set(plan.i1) | set(plan.i2) == set(range(n))
        assert len(plan.i1) == (n + 1) // 2
        assert split_indices(n, seed) == plan


def test_cyclic_permute_repeated_index(small_sample):
    with pytest.raises(RepeatedIndex) as e:
        cyclic_permute(small_sample, [0, 1, 1, 2])
    assert e.value.exit_code == 3


def test_null_training_halves_share_marginals():
    hits = 0
    for rep in range(200):
        sample = generate(SimModel("M1", 0.0, 2, 2), 200, derive(31, rep))
        sets = build_training_sets(sample, split_indices(sample.n, derive(32, rep)))
        joint, prod = sets.train_joint, sets.train_prod
        # the permutation only reorders Y within I1
        np.testing.assert_array_equal(np.sort(joint[:, :2], axis=0), np.sort(prod[:, :2], axis=0))
        np.testing.assert_array_equal(np.sort(joint[:, 2:], axis=0), np.sort(prod[:, 2:], axis=0))
        hits += stats.ks_2samp(joint[:, 0] * joint[:, 2], prod[:, 0] * prod[:, 2]).pvalue < 0.05
    assert hits / 200 <= 0.1
