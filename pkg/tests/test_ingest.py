import numpy as np
import pandas as pd
import pytest

from app.core.exceptions import (
    DataFileNotFound,
    DuplicateEntry,
    EmptySelection,
    IndexOutOfBounds,
    OverlappingSelectors,
    ParseError,
    RowCountMismatch,
    SampleTooSmall,
    UnknownColumn,
)
from app.ingest.csv_loader import load_paired_csv, parse_selector, write_paired_csv
from app.ingest.sparse_market import load_sparse_market, read_triplet_matrix
from app.model.sample import PairedSample
from tests.conftest import write_triplets


def _four_rows(tmp_path):
    path = tmp_path / "four.csv"
    pd.DataFrame({"a": [1.0, 2, 3, 4], "b": [0.5, 0.1, 0.2, 0.3], "c": [9.0, 8, 7, 6]}).to_csv(path, index=False)
    return path


def test_load_dimensions(tmp_path):
    sample = load_paired_csv(_four_rows(tmp_path), "a", "b,c")
    assert (sample.n, sample.d1, sample.d2) == (4, 1, 2)
    assert sample.x_names == ("a",)
    assert sample.y_names == ("b", "c")
    np.testing.assert_array_equal(sample.take_y([2]), [[0.2, 7.0]])


def test_overlapping_selectors(tmp_path):
    with pytest.raises(OverlappingSelectors) as e:
        load_paired_csv(_four_rows(tmp_path), ["a"], ["a"])
    assert e.value.exit_code == 2


def test_empty_and_unknown_selection(tmp_path):
    path = _four_rows(tmp_path)
    with pytest.raises(EmptySelection):
        load_paired_csv(path, " , ", "b")
    with pytest.raises(UnknownColumn):
        load_paired_csv(path, "a", "zzz")


def test_nan_cell_reports_row_and_column(tmp_path):
    path = tmp_path / "nan.csv"
    path.write_text("a,b\n1,2\n3,NaN\n5,6\n7,8\n")
    with pytest.raises(ParseError) as e:
        load_paired_csv(path, "a", "b")
    assert (e.value.row, e.value.col) == (2, "b")
    assert e.value.exit_code == 3


def test_missing_file(tmp_path):
    with pytest.raises(DataFileNotFound):
        load_paired_csv(tmp_path / "nope.csv", "a", "b")


def test_parse_selector():
    assert parse_selector("a, b,,c") == ["a", "b", "c"]
    assert parse_selector(["x", " "]) == ["x"]


def test_write_then_load_is_exact(tmp_path, rng):
    sample = PairedSample(rng.normal(size=(6, 2)), rng.normal(size=(6, 1)), ("u", "v"), ("w",))
    path = tmp_path / "out.csv"
    write_paired_csv(sample, path)
    again = load_paired_csv(path, "u,v", "w")
    np.testing.assert_array_equal(again.x_rows, sample.x_rows)
    np.testing.assert_array_equal(again.y_rows, sample.y_rows)


def test_paired_sample_is_immutable(small_sample):
    with pytest.raises(ValueError):
        small_sample.x_rows[0, 0] = 1.0


def test_paired_sample_minimum_rows():
    with pytest.raises(SampleTooSmall):
        PairedSample(np.zeros((3, 1)), np.zeros((3, 1)))
    with pytest.raises(RowCountMismatch):
        PairedSample(np.zeros((5, 1)), np.zeros((4, 1)))


def test_sparse_view_bookkeeping(tmp_path):
    x = write_triplets(tmp_path / "x.mtx", 3, 5, [(1, 2, 1.5), (3, 5, -2.0)])
    y = write_triplets(tmp_path / "y.mtx", 3, 4, [(2, 4, 7.0)])
    view = load_sparse_market(x, y)
    assert (view.n, view.d1, view.d2) == (3, 5, 4)
    assert view.x_matrix.column(1) == [(0, 1.5)]
    assert view.x_matrix.column(0) == []
    np.testing.assert_array_equal(view.row(1)[1], [0.0, 0.0, 0.0, 7.0])


def test_sparse_row_count_mismatch(tmp_path):
    x = write_triplets(tmp_path / "x.mtx", 3, 2, [(1, 1, 1.0)])
    y = write_triplets(tmp_path / "y.mtx", 4, 2, [(1, 1, 1.0)])
    with pytest.raises(RowCountMismatch):
        load_sparse_market(x, y)


def test_sparse_index_is_one_based(tmp_path):
    path = write_triplets(tmp_path / "x.mtx", 3, 2, [(0, 1, 1.0)])
    with pytest.raises(IndexOutOfBounds):
        read_triplet_matrix(path)


def test_sparse_duplicate_entry(tmp_path):
    path = write_triplets(tmp_path / "x.mtx", 3, 2, [(1, 1, 1.0), (1, 1, 2.0)])
    with pytest.raises(DuplicateEntry):
        read_triplet_matrix(path)


def test_sparse_transpose(tmp_path):
    path = write_triplets(tmp_path / "x.mtx", 2, 4, [(2, 3, 5.0)])
    matrix = read_triplet_matrix(path, transpose=True)
    assert (matrix.n_rows, matrix.n_cols) == (4, 2)
    assert matrix.to_dense()[2, 1] == 5.0


def test_sparse_explicit_zeros_are_dropped(tmp_path):
    path = write_triplets(tmp_path / "x.mtx", 2, 2, [(1, 1, 0.0), (2, 2, 3.0)])
    assert read_triplet_matrix(path).nnz == 1


def test_sparse_and_dense_files_agree(tmp_path):
    rng = np.random.default_rng(17)
    dense = np.where(rng.random((12, 5)) < 0.3, rng.integers(1, 9, size=(12, 5)), 0).astype(float)

    def triplets(block):
        return [(r + 1, c + 1, block[r, c]) for r, c in zip(*np.nonzero(block))]

    x = write_triplets(tmp_path / "x.mtx", 12, 3, triplets(dense[:, :3]))
    y = write_triplets(tmp_path / "y.mtx", 12, 2, triplets(dense[:, 3:]))
    csv = tmp_path / "dense.csv"
    pd.DataFrame(dense, columns=["a", "b", "c", "d", "e"]).to_csv(csv, index=False)

    view = load_sparse_market(x, y)
    sample = load_paired_csv(csv, "a,b,c", "d,e")
    for i in range(12):
        for got, want in zip(view.row(i), sample.row(i)):
            np.testing.assert_array_equal(got, want)
    np.testing.assert_array_equal(view.to_dense().x_rows, sample.x_rows)
