"""Classification experiments: trials, comparisons, noise and scale sweeps."""

import numpy as np
import pytest

from src.analysis.classify import build_dataset
from src.analysis.experiments import (
    compare_colormaps,
    compare_wavelets,
    noise_sweep,
    run_trials,
    scale_window_sweep,
    sweep_positions,
    synthetic_windows,
)
from src.data.presets import table1_loop
from src.data.trace import AcquisitionMeta
from src.exceptions import DatasetError
from src.transforms.cwt import ScaleSet
from src.transforms.wavelets import get_wavelet, resolve_wavelets

META32 = AcquisitionMeta(32e6, 1e6)


def test_run_trials_seeds_and_determinism(clean_windows):
    dataset = build_dataset(clean_windows, get_wavelet("gaus1"), "1:4")
    trials = run_trials(dataset, trials=5, seed=20)
    assert list(trials.columns) == ["trial", "seed", "accuracy"]
    assert trials["seed"].tolist() == [20, 21, 22, 23, 24]
    assert trials["accuracy"].between(0.0, 1.0).all()
    again = run_trials(dataset, trials=5, seed=20)
    assert trials["accuracy"].tolist() == again["accuracy"].tolist()
    with pytest.raises(DatasetError):
        run_trials(dataset, trials=0)


def test_compare_wavelets(clean_windows):
    frame = compare_wavelets(clean_windows, resolve_wavelets("gaus1,morl"), "1:6",
                             trials=3, label_mode="cycle")
    assert frame["wavelet"].tolist() == ["gaus1", "morl"]
    assert frame["scales"].tolist() == ["1:6", "1:6"]
    assert frame["trials"].tolist() == [3, 3]
    assert (frame["mean_acc"] == 1.0).all()
    assert (frame["std_acc"] == 0.0).all()


def test_compare_colormaps_reports_memory(clean_windows):
    frame = compare_colormaps(clean_windows, get_wavelet("gaus2"), "1:6",
                              ["grayscale", "ember", "qual8"], trials=2, label_mode="cycle")
    assert frame["cmap"].tolist() == ["grayscale", "ember", "qual8"]
    assert frame["cmap_class"].tolist() == ["grayscale", "sequential", "qualitative"]
    assert frame["channels"].tolist() == [1, 3, 3]
    gray, ember = frame["feature_bytes"].tolist()[:2]
    assert ember == 3 * gray == 3 * 6 * 64
    assert frame["mean_acc"].between(0.0, 1.0).all()
    resized = compare_colormaps(clean_windows, get_wavelet("gaus2"), "1:6", ["grayscale", "ember"],
                                trials=1, label_mode="cycle", resize_to=(16, 4))
    assert resized["feature_bytes"].tolist() == [16 * 4, 3 * 16 * 4]


def test_noise_lowers_accuracy(small_loop, meta64):
    frame = noise_sweep(
        small_loop, meta64, get_wavelet("gaus1"), "1:8",
        noise_multiples=(0.0, 4.0), seeds=(0, 1, 2), n_loops=10,
        shared_fraction=0.95, label_mode="cycle",
    )
    assert frame["noise_sigma"].tolist() == pytest.approx([0.0, 0.4])
    clean, noisy = frame["mean_acc"].tolist()
    assert clean == 1.0
    assert noisy < clean


@pytest.mark.parametrize("lo, hi, width, stride, expected", [
    (1, 596, 100, 5, 100),
    (1, 60, 10, 25, 2),
    (1, 11, 10, 1, 1),
    (5, 30, 5, 5, 5),
])
def test_sweep_positions_count(lo, hi, width, stride, expected):
    starts = sweep_positions(lo, hi, width, stride)
    assert len(starts) == expected
    assert starts[0] == lo
    assert starts[-1] + width <= hi


def test_sweep_positions_errors():
    with pytest.raises(DatasetError):
        sweep_positions(1, 50, 100, 5)
    with pytest.raises(DatasetError):
        sweep_positions(0, 50, 10, 5)
    with pytest.raises(DatasetError):
        sweep_positions(1, 50, 10, 0)


def test_scale_window_sweep_matches_direct_datasets(small_loop, meta64):
    windows = synthetic_windows(small_loop, meta64, n_loops=6, noise_sigma=0.02, seed=5,
                                harmonic_band=(10, 20))
    wavelet = get_wavelet("gaus1")
    frame = scale_window_sweep(windows, wavelet, scale_lo=1, scale_hi=60, window_width=10,
                               stride=25, trials=3, seed=0, label_mode="cycle")
    assert list(frame.columns) == ["scale_lo", "scale_hi", "mean_acc", "std_acc", "trials"]
    assert frame["scale_lo"].tolist() == [1, 26]
    assert frame["scale_hi"].tolist() == [10, 35]
    assert frame["trials"].tolist() == [3, 3]

    for row in frame.itertuples():
        direct = build_dataset(windows, wavelet, ScaleSet.range(row.scale_lo, row.scale_hi),
                               label_mode="cycle")
        accuracies = run_trials(direct, trials=3, seed=0)["accuracy"]
        assert row.mean_acc == pytest.approx(np.mean(accuracies))
        assert row.std_acc == pytest.approx(np.std(accuracies))


def test_zero_noise_mnemonic_classes_are_separable():
    windows = synthetic_windows(table1_loop(), META32, n_loops=3)
    dataset = build_dataset(windows, get_wavelet("gaus1"), "1:21", "grayscale")
    counts = dataset.class_counts()
    assert len(counts) == 10
    assert min(counts.values()) >= 50
    trials = run_trials(dataset, trials=10, seed=0)
    assert (trials["accuracy"] == 1.0).all()


def test_accuracy_does_not_rise_with_noise():
    frame = noise_sweep(table1_loop(), META32, get_wavelet("gaus1"), "1:21", n_loops=2)
    assert frame["noise_multiple"].tolist() == [0.0, 0.5, 1.0, 2.0]
    assert frame["trials"].tolist() == [10, 10, 10, 10]
    assert frame["mean_acc"].iloc[0] == 1.0
    rises = np.diff(frame["mean_acc"].to_numpy())
    inversions = rises[rises > 0]
    assert len(inversions) <= 1
    assert (inversions <= 0.01).all()


def test_qualitative_map_trails_grayscale_under_noise():
    windows = synthetic_windows(table1_loop(), META32, n_loops=3, noise_sigma=0.1, seed=0)
    frame = compare_colormaps(windows, get_wavelet("gaus1"), "1:21", ["grayscale", "qual8"],
                              trials=10)
    gray, qual = frame["mean_acc"].tolist()
    assert qual < gray


def test_low_scales_beat_high_scales_for_high_harmonic_templates(small_loop, meta64):
    windows = synthetic_windows(small_loop, meta64, n_loops=20, noise_sigma=0.1, seed=2,
                                harmonic_band=(10, 20))
    frame = scale_window_sweep(windows, get_wavelet("morl"), scale_lo=1, scale_hi=61,
                               window_width=10, stride=50, trials=10)
    assert frame["scale_lo"].tolist() == [1, 51]
    low, high = frame["mean_acc"].tolist()
    assert low >= high
