"""Scalogram datasets, splitting and the nearest-centroid classifier."""

import numpy as np
import pytest

from src.analysis.classify import (
    Dataset,
    SplitSpec,
    accuracy,
    build_dataset,
    build_dataset_from_coefficients,
    predict,
    select_windows,
    split,
    train_centroid,
    window_labels,
)
from src.exceptions import DatasetError
from src.transforms.cwt import ScaleSet
from src.transforms.wavelets import get_wavelet


def _toy_dataset():
    features = np.array([
        [0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [0.1, 0.1],
        [1.0, 1.0], [0.9, 1.0], [1.0, 0.9], [0.9, 0.9],
    ])
    return Dataset(features, ("a",) * 4 + ("b",) * 4)


class TestSplit:

    @pytest.mark.parametrize("count, expected", [(10, 7), (2, 1), (3, 2), (19, 13), (100, 70)])
    def test_n_train(self, count, expected):
        assert SplitSpec(0.7).n_train(count) == expected

    def test_stratified_split_is_a_partition(self):
        labels = tuple("abc"[i % 3] for i in range(30))
        dataset = Dataset(np.arange(60.0).reshape(30, 2), labels)
        train, test = split(dataset, SplitSpec(0.7, seed=4))
        assert train.class_counts() == {"a": 7, "b": 7, "c": 7}
        assert test.class_counts() == {"a": 3, "b": 3, "c": 3}
        rows = sorted(train.features[:, 0].tolist() + test.features[:, 0].tolist())
        assert rows == dataset.features[:, 0].tolist()

    def test_split_is_seeded(self):
        dataset = Dataset(np.arange(40.0).reshape(20, 2), ("a", "b") * 10)
        first, _ = split(dataset, SplitSpec(seed=9))
        again, _ = split(dataset, SplitSpec(seed=9))
        other, _ = split(dataset, SplitSpec(seed=10))
        np.testing.assert_array_equal(first.features, again.features)
        assert not np.array_equal(first.features, other.features)

    def test_unstratified_split(self):
        dataset = Dataset(np.arange(20.0).reshape(10, 2), ("a", "b") * 5)
        train, test = split(dataset, SplitSpec(0.7, seed=1, stratified=False))
        assert (len(train), len(test)) == (7, 3)

    def test_split_errors(self):
        with pytest.raises(DatasetError):
            SplitSpec(1.0)
        lonely = Dataset(np.zeros((3, 2)), ("a", "a", "b"))
        with pytest.raises(DatasetError, match="'b'"):
            split(lonely, SplitSpec())


class TestCentroid:

    def test_predict_and_accuracy(self):
        model = train_centroid(_toy_dataset())
        assert model.classes == ("a", "b")
        np.testing.assert_allclose(model.centroids, [[0.05, 0.05], [0.95, 0.95]])
        assert predict(model, np.array([0.2, 0.1])) == "a"
        assert predict(model, np.array([[0.8, 0.7], [0.0, 0.3]])).tolist() == ["b", "a"]
        assert accuracy(model, _toy_dataset()) == 1.0

    def test_tie_goes_to_first_label(self):
        model = train_centroid(Dataset(np.array([[0.0], [2.0]]), ("b", "a")))
        assert predict(model, np.array([1.0])) == "a"

    def test_errors(self):
        with pytest.raises(DatasetError):
            train_centroid(Dataset(np.zeros((2, 2)), ("a", "a")))
        model = train_centroid(_toy_dataset())
        with pytest.raises(DatasetError):
            predict(model, np.zeros(3))
        with pytest.raises(DatasetError):
            Dataset(np.zeros((2, 2)), ("a",))
        with pytest.raises(DatasetError):
            Dataset(np.zeros(4), ("a",) * 4)


class TestDataset:

    def test_window_selection_and_labels(self, clean_windows):
        kept = select_windows(clean_windows, ("rjmp",))
        assert len(kept) == 6 * 6
        assert {w.label.mnemonic for w in kept} == {"add", "sbi", "nop", "mul"}
        assert set(window_labels(kept, "cycle")) == {
            "add:0", "sbi:0", "sbi:1", "nop:0", "mul:0", "mul:1"
        }
        assert set(window_labels(kept, "mnemonic")) == {"add", "sbi", "nop", "mul"}
        with pytest.raises(DatasetError):
            window_labels(kept, "opcode")

    def test_build_dataset_features(self, clean_windows):
        dataset = build_dataset(clean_windows, get_wavelet("gaus1"), "1:5")
        assert len(dataset) == 36
        assert dataset.n_features == 5 * 64
        assert dataset.features.min() >= 0.0
        assert dataset.features.max() <= 1.0
        assert dataset.class_set == ("add", "mul", "nop", "sbi")

    def test_resize_and_colour(self, clean_windows):
        dataset = build_dataset(clean_windows, get_wavelet("mexh"), ScaleSet.parse("1:8"),
                                cmap="ember", resize_to=(16, 4))
        assert dataset.n_features == 16 * 4 * 3

    def test_threads_do_not_change_features(self, clean_windows):
        serial = build_dataset(clean_windows, get_wavelet("gaus2"), "1:6", n_jobs=1)
        threaded = build_dataset(clean_windows, get_wavelet("gaus2"), "1:6", n_jobs=3)
        np.testing.assert_allclose(serial.features, threaded.features)
        assert serial.labels == threaded.labels

    def test_noise_free_cycle_classes_are_separable(self, clean_windows):
        dataset = build_dataset(clean_windows, get_wavelet("gaus1"), "1:10", label_mode="cycle")
        train, test = split(dataset, SplitSpec(seed=0))
        assert accuracy(train_centroid(train), test) == 1.0

    def test_global_normalisation_uses_dataset_range(self):
        coefficients = np.array([[[0.0, 1.0]], [[2.0, 4.0]]])
        dataset = build_dataset_from_coefficients(coefficients, ["a", "b"],
                                                  normalize_mode="global")
        np.testing.assert_allclose(dataset.features, [[0.0, 64 / 255], [128 / 255, 1.0]])

    def test_empty_selection(self, clean_windows):
        with pytest.raises(DatasetError):
            build_dataset(clean_windows, get_wavelet("gaus1"), "1:3",
                          exclude=("add", "sbi", "nop", "mul", "rjmp"))
