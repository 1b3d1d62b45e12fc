"""Continuous wavelet transform and scale/pseudo-frequency conversion."""

import numpy as np
import pytest

from src.exceptions import TransformError
from src.transforms.cwt import (
    CoefficientMatrix,
    ScaleSet,
    cwt,
    cwt_batch,
    cwt_fast,
    cwt_reference,
    pseudo_frequency,
    scale_curve,
    scale_for_frequency,
    scaled_kernel,
)
from src.transforms.wavelets import get_wavelet, resolve_wavelets


class TestScaleSet:

    def test_parse_range_and_list(self):
        assert list(ScaleSet.parse("1:5")) == [1.0, 2.0, 3.0, 4.0, 5.0]
        assert list(ScaleSet.parse("1:5:2")) == [1.0, 3.0, 5.0]
        assert list(ScaleSet.parse("10,50,100")) == [10.0, 50.0, 100.0]
        assert len(ScaleSet.parse("1:50")) == 50
        assert ScaleSet.range(3, 6).max_scale == 6.0

    @pytest.mark.parametrize("text", ["5:1", "1:2:3:4", "a:b", "", "1:5:0"])
    def test_parse_errors(self, text):
        with pytest.raises(TransformError):
            ScaleSet.parse(text)

    @pytest.mark.parametrize("scales", [(), (2.0, 1.0), (1.0, 1.0), (0.0, 1.0), (1.0, np.inf)])
    def test_invalid_scales(self, scales):
        with pytest.raises(TransformError):
            ScaleSet(scales)

    def test_slicing(self):
        scales = ScaleSet.parse("1:10")
        assert isinstance(scales[2:5], ScaleSet)
        assert list(scales[2:5]) == [3.0, 4.0, 5.0]
        assert scales[0] == 1.0


@pytest.mark.parametrize("name", ["gaus1", "gaus4", "mexh", "morl"])
def test_fast_path_matches_reference(name, rng):
    signal = rng.normal(size=300)
    scales = ScaleSet((1.0, 1.5, 2.0, 4.0, 7.5, 20.0))
    wavelet = get_wavelet(name)
    reference = cwt_reference(signal, wavelet, scales)
    fast = cwt_fast(signal, wavelet, scales)
    np.testing.assert_allclose(fast.values, reference.values, atol=1e-9)


def test_impulse_response_is_scaled_wavelet():
    wavelet = get_wavelet("gaus1")
    grid, values = wavelet.table
    n, m = 128, 60
    signal = np.zeros(n)
    signal[m] = 1.0
    result = cwt(signal, wavelet, "2,4,8", path="reference")
    b = np.arange(n)
    for row, a in enumerate(result.scale_set):
        expected = np.interp((m - b) / a, grid, values, left=0.0, right=0.0) / np.sqrt(a)
        np.testing.assert_allclose(result.values[row], expected, atol=1e-12)


def test_linearity(rng):
    wavelet = get_wavelet("mexh")
    x, y = rng.normal(size=(2, 200))
    combined = cwt(2.0 * x + y, wavelet, "1:8").values
    separate = 2.0 * cwt(x, wavelet, "1:8").values + cwt(y, wavelet, "1:8").values
    np.testing.assert_allclose(combined, separate, atol=1e-9)


def test_kernel_covers_support():
    wavelet = get_wavelet("morl")
    k_min, kernel = scaled_kernel(wavelet, 2.5)
    assert k_min == -20
    assert kernel.size == 41
    assert kernel[20] == pytest.approx(1.0 / np.sqrt(2.5), rel=1e-3)


def test_coefficient_matrix_shape_and_frame(rng):
    result = cwt(rng.normal(size=50), get_wavelet("gaus2"), "1:4", sample_period=2e-9)
    assert result.shape == (4, 50)
    np.testing.assert_allclose(result.times()[:2], [0.0, 2e-9])
    frame = result.to_frame()
    assert frame.columns[0] == "scale"
    assert frame["scale"].tolist() == [1.0, 2.0, 3.0, 4.0]
    assert frame.shape == (4, 51)
    assert result.rows(1, 3).shape == (2, 50)
    with pytest.raises(TransformError):
        CoefficientMatrix(np.zeros((3, 5)), ScaleSet.parse("1:4"))


def test_batch_matches_single_windows(rng):
    windows = rng.normal(size=(5, 64))
    wavelet = get_wavelet("gaus3")
    for path in ("fast", "reference"):
        batch = cwt_batch(windows, wavelet, "1:6", path)
        assert batch.shape == (5, 6, 64)
        for w in range(5):
            single = cwt_reference(windows[w], wavelet, "1:6").values
            np.testing.assert_allclose(batch[w], single, atol=1e-9)


def test_invalid_inputs():
    wavelet = get_wavelet("gaus1")
    with pytest.raises(TransformError):
        cwt([], wavelet, "1:3")
    with pytest.raises(TransformError):
        cwt([0.0, np.nan], wavelet, "1:3")
    with pytest.raises(TransformError):
        cwt(np.zeros(8), wavelet, "1:3", path="gpu")
    with pytest.raises(TransformError):
        cwt_batch(np.zeros(8), wavelet, "1:3")


def test_pseudo_frequency():
    gaus1 = get_wavelet("gaus1")
    assert pseudo_frequency(gaus1, 1.0, 2e-9) == pytest.approx(1e8)
    assert pseudo_frequency(gaus1, 20.0, 2e-9) == pytest.approx(5e6)
    assert scale_for_frequency(gaus1, 5e6, 2e-9) == pytest.approx(20.0)
    with pytest.raises(TransformError):
        pseudo_frequency(gaus1, 0.0, 2e-9)
    with pytest.raises(TransformError):
        scale_for_frequency(gaus1, 5e6, 0.0)


def test_scale_curve_is_decreasing():
    frame = scale_curve(resolve_wavelets("gaus1,morl"), "1:3", 2e-9)
    assert list(frame.columns) == ["wavelet", "scale", "pseudo_frequency_hz"]
    assert len(frame) == 6
    for _, rows in frame.groupby("wavelet"):
        assert rows["pseudo_frequency_hz"].is_monotonic_decreasing
    morl = frame[frame["wavelet"] == "morl"]
    assert morl["pseudo_frequency_hz"].iloc[0] == pytest.approx(0.8125 / 2e-9)


def test_fast_path_matches_reference_up_to_4096_samples(rng):
    names = [wavelet.name for wavelet in resolve_wavelets("all")]
    scales = ScaleSet.range(1, 50)
    lengths = np.append(rng.integers(16, 4097, size=99), 4096)
    for index, n in enumerate(lengths):
        wavelet = get_wavelet(names[index % len(names)])
        signal = rng.normal(size=int(n))
        reference = cwt_reference(signal, wavelet, scales).values
        fast = cwt_fast(signal, wavelet, scales).values
        assert np.max(np.abs(fast - reference)) < 1e-6 * np.max(np.abs(reference))


@pytest.mark.parametrize("name", ["gaus1", "gaus6", "mexh", "morl"])
def test_shift_moves_interior_columns(name, rng):
    wavelet = get_wavelet(name)
    n, shift = 400, 37
    margin = int(np.ceil(8 * max(abs(wavelet.lower_bound), wavelet.upper_bound))) + 2
    source = rng.normal(size=n + shift)
    late, early = source[shift:], source[:n]
    late_rows = cwt(late, wavelet, "1:8").values
    early_rows = cwt(early, wavelet, "1:8").values
    np.testing.assert_allclose(
        early_rows[:, margin + shift:n - margin],
        late_rows[:, margin:n - margin - shift],
        atol=1e-9,
    )


@pytest.mark.parametrize("name", ["gaus1", "gaus2", "gaus3", "mexh"])
def test_constant_signal_is_annihilated(name):
    wavelet = get_wavelet(name)
    n, level = 512, 2.5
    signal = np.full(n, level)
    result = cwt(signal, wavelet, "2:16")
    margin = int(np.ceil(16 * max(abs(wavelet.lower_bound), wavelet.upper_bound))) + 1
    interior = result.values[:, margin:n - margin]
    bound = 1e-6 * np.linalg.norm(signal) * np.max(np.abs(wavelet.table[1]))
    assert np.max(np.abs(interior)) < bound


def _peak_scale(wavelet, frequency, scales=ScaleSet.range(1, 60), n=4096):
    signal = np.sin(2 * np.pi * frequency * np.arange(n))
    margin = int(np.ceil(scales.max_scale * wavelet.upper_bound))
    magnitude = np.abs(cwt(signal, wavelet, scales).values[:, margin:n - margin])
    return scales[int(np.argmax(magnitude.mean(axis=1)))]


@pytest.mark.parametrize("scale", [4, 10, 25])
def test_sine_peaks_at_pseudo_frequency_scale_for_morl(scale):
    morl = get_wavelet("morl")
    frequency = pseudo_frequency(morl, scale, 1.0)
    assert _peak_scale(morl, frequency) == scale


@pytest.mark.parametrize("scale", [4, 10, 25])
def test_sine_peak_for_gaus1_sits_above_pseudo_frequency_scale(scale):
    # |C| of a sine under gaus1 peaks where 2*pi*f*a = sqrt(3), not at F_c / f
    gaus1 = get_wavelet("gaus1")
    frequency = pseudo_frequency(gaus1, scale, 1.0)
    analytic = np.sqrt(3.0) / (2 * np.pi * frequency)
    peak = _peak_scale(gaus1, frequency)
    assert peak > scale
    assert abs(peak - analytic) <= 1.0
