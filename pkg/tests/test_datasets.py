import numpy as np
import pytest

from finitesum.datasets import (
    LibsvmParseError,
    load_libsvm,
    parse_libsvm_line,
    save_libsvm,
    scale_features,
    to_libsvm_text,
)

from conftest import dataset_from_rows, random_dataset


class TestParseLine:
    def test_basic_line(self):
        ex = parse_libsvm_line("1 3:0.5 7:1.25")
        assert ex.label == 1.0
        assert ex.features == ((3, 0.5), (7, 1.25))

    def test_label_only_is_zero_vector(self):
        ex = parse_libsvm_line("-1 ")
        assert ex.label == -1.0
        assert ex.features == ()

    def test_non_increasing_indices_rejected(self):
        with pytest.raises(LibsvmParseError, match="not strictly increasing"):
            parse_libsvm_line("2 5:1 2:1")

    def test_duplicate_index_rejected(self):
        with pytest.raises(LibsvmParseError):
            parse_libsvm_line("1 4:1 4:2")

    def test_comment_stripped(self):
        ex = parse_libsvm_line("1 2:3.0 # trailing note 9:9")
        assert ex.features == ((2, 3.0),)

    def test_malformed_tokens(self):
        with pytest.raises(LibsvmParseError):
            parse_libsvm_line("1 3:abc")
        with pytest.raises(LibsvmParseError):
            parse_libsvm_line("x 3:1")
        with pytest.raises(LibsvmParseError):
            parse_libsvm_line("1 3")
        with pytest.raises(LibsvmParseError):
            parse_libsvm_line("1 0:2.0")  # indices are 1-based on disk


class TestLoad:
    def test_counts_and_dim(self, tmp_path):
        path = tmp_path / "d.svm"
        path.write_text("1 1:1 10:2\n-1 2:1\n# whole-line comment\n1 3:5\n\n")
        ds = load_libsvm(path)
        assert ds.n == 3
        assert ds.dim == 10
        # loader shifts to 0-based
        assert ds.row(0)[0].tolist() == [0, 9]

    def test_binary_label_map(self, tmp_path):
        path = tmp_path / "d.svm"
        path.write_text("0 1:1\n1 1:2\n0 1:3\n")
        ds = load_libsvm(path, binary_label_map={0.0: -1.0, 1.0: 1.0})
        assert sorted(set(ds.labels.tolist())) == [-1.0, 1.0]
        assert ds.labels.tolist() == [-1.0, 1.0, -1.0]

    def test_three_classes_with_binary_map_rejected(self, tmp_path):
        path = tmp_path / "d.svm"
        path.write_text("1 1:1\n2 1:2\n3 1:3\n")
        with pytest.raises(LibsvmParseError, match="classes"):
            load_libsvm(path, binary_label_map={1.0: -1.0, 2.0: 1.0})

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "d.svm"
        path.write_text("# nothing here\n")
        with pytest.raises(LibsvmParseError, match="no examples"):
            load_libsvm(path)

    def test_min_dim_override(self, tmp_path):
        path = tmp_path / "d.svm"
        path.write_text("1 2:1\n")
        assert load_libsvm(path).dim == 2
        assert load_libsvm(path, min_dim=40).dim == 40


class TestScale:
    def test_none_is_identity(self, rng):
        ds = random_dataset(rng, 6, 4)
        assert scale_features(ds, "none") is ds

    def test_three_four_five(self):
        ds = dataset_from_rows([[3.0, 4.0]], [1.0])
        scaled = scale_features(ds, "unit_row_norm")
        assert scaled.data.tolist() == [0.6, 0.8]

    def test_zero_row_unchanged(self):
        ds = dataset_from_rows([[0.0, 0.0], [1.0, 1.0]], [1.0, -1.0], dim=2)
        scaled = scale_features(ds, "unit_row_norm")
        idx, val = scaled.row(0)
        assert len(val) == 0

    def test_unit_norms(self, rng):
        ds = random_dataset(rng, 30, 7)
        scaled = scale_features(ds, "unit_row_norm")
        norms = np.sqrt(scaled.row_sq_norms())
        assert np.all(np.abs(norms - 1.0) <= 1e-12)

    def test_unknown_mode(self, rng):
        with pytest.raises(ValueError):
            scale_features(random_dataset(rng, 3, 2), "standardize")


class TestRoundTrip:
    def test_serialize_parse_identity(self, rng, tmp_path):
        for trial in range(10):
            n = int(rng.integers(1, 12))
            d = int(rng.integers(1, 6))
            ds = random_dataset(rng, n, d)
            path = tmp_path / f"rt{trial}.svm"
            save_libsvm(ds, path)
            back = load_libsvm(path, min_dim=ds.dim)
            assert back.n == ds.n and back.dim == ds.dim
            assert np.array_equal(back.labels, ds.labels)
            assert np.array_equal(back.indptr, ds.indptr)
            assert np.array_equal(back.indices, ds.indices)
            assert np.array_equal(back.data, ds.data)
            # and the text itself is a fixed point
            assert to_libsvm_text(back) == to_libsvm_text(ds)
