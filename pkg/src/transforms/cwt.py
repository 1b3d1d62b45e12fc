"""
Continuous wavelet transform.

Discretisation: for scale a and shift b (both in samples)

    C[a][b] = a^(-1/2) * sum_t f(t) * psi((t - b) / a)

with psi read by linear interpolation from the 2^12-point tabulation of the
mother wavelet (zero outside its support) and the signal zero-extended at
both ends. ``cwt_reference`` evaluates the sum directly and is the oracle;
``cwt_fast`` computes the same correlation with FFTs.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import scipy.signal

from src.exceptions import TransformError
from src.logging import get_logger
from src.transforms.wavelets import WaveletSpec

logger = get_logger(__name__)

PATHS = ("reference", "fast")


@dataclass(frozen=True)
class ScaleSet:
    """Strictly increasing positive scales a."""
    scales: Tuple[float, ...]

    def __post_init__(self):
        scales = tuple(float(a) for a in self.scales)
        if not scales:
            raise TransformError("scale set is empty")
        if any(not math.isfinite(a) or a <= 0 for a in scales):
            raise TransformError(f"scales must be finite and > 0, got {scales}")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise TransformError("scales must be strictly increasing")
        object.__setattr__(self, "scales", scales)

    def __len__(self) -> int:
        return len(self.scales)

    def __iter__(self):
        return iter(self.scales)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return ScaleSet(self.scales[item])
        return self.scales[item]

    @property
    def max_scale(self) -> float:
        return self.scales[-1]

    @classmethod
    def parse(cls, text: str) -> "ScaleSet":
        """
        Parse ``lo:hi[:step]`` (inclusive) or a comma-separated list.

        Examples: ``"1:50"``, ``"1:50:2"``, ``"10,50,100,200"``.
        """
        text = text.strip()
        try:
            if ":" in text:
                parts = [float(p) for p in text.split(":")]
                if len(parts) not in (2, 3):
                    raise ValueError
                lo, hi = parts[0], parts[1]
                step = parts[2] if len(parts) == 3 else 1.0
                if step <= 0 or hi < lo:
                    raise ValueError
                count = int(math.floor((hi - lo) / step + 1e-9)) + 1
                scales = [lo + i * step for i in range(count)]
            else:
                scales = [float(p) for p in text.split(",") if p.strip()]
        except ValueError:
            raise TransformError(
                f"invalid scale specification {text!r}; use lo:hi[:step] or a,b,c"
            ) from None
        return cls(tuple(scales))

    @classmethod
    def range(cls, lo: int, hi: int) -> "ScaleSet":
        """Integer scales lo..hi inclusive."""
        return cls(tuple(float(a) for a in range(lo, hi + 1)))


@dataclass(frozen=True)
class CoefficientMatrix:
    """
    CWT output.

    Attributes:
        values: Real coefficients, shape (len(scale_set), n_samples)
        scale_set: Scales of the rows
        sample_period: Seconds between columns
    """
    values: np.ndarray
    scale_set: ScaleSet
    sample_period: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != len(self.scale_set):
            raise TransformError(
                f"coefficient matrix of shape {values.shape} does not match "
                f"{len(self.scale_set)} scales"
            )
        if not np.all(np.isfinite(values)):
            raise TransformError("coefficient matrix holds non-finite values")
        if values.flags.writeable:
            values = values.copy()
            values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def times(self) -> np.ndarray:
        """Shift b of every column in seconds."""
        return np.arange(self.values.shape[1]) * self.sample_period

    def rows(self, lo: int, hi: int) -> "CoefficientMatrix":
        """Rows [lo, hi) as a new matrix."""
        return CoefficientMatrix(self.values[lo:hi], self.scale_set[lo:hi], self.sample_period)

    def to_frame(self) -> pd.DataFrame:
        """One row per scale; first column is the scale value."""
        frame = pd.DataFrame(self.values, columns=[str(i) for i in range(self.shape[1])])
        frame.insert(0, "scale", list(self.scale_set))
        return frame


def _as_scale_set(scales: Union[ScaleSet, Iterable[float], str]) -> ScaleSet:
    if isinstance(scales, ScaleSet):
        return scales
    if isinstance(scales, str):
        return ScaleSet.parse(scales)
    return ScaleSet(tuple(scales))


def _as_signal(signal) -> np.ndarray:
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise TransformError("signal must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(x)):
        raise TransformError("signal holds non-finite values")
    return x


def scaled_kernel(wavelet: WaveletSpec, scale: float) -> Tuple[int, np.ndarray]:
    """
    Sampled analysis wavelet at one scale.

    Returns:
        (k_min, h) where h[j] = a^(-1/2) * psi((k_min + j) / a) covers every
        integer offset k with k / a inside the support
    """
    grid, values = wavelet.table
    k_min = math.ceil(scale * wavelet.lower_bound)
    k_max = math.floor(scale * wavelet.upper_bound)
    offsets = np.arange(k_min, k_max + 1, dtype=np.float64)
    kernel = np.interp(offsets / scale, grid, values, left=0.0, right=0.0) / math.sqrt(scale)
    return k_min, kernel


def _padded(x: np.ndarray, k_min: int, kernel_length: int) -> np.ndarray:
    """Zero-extended signal slice aligned so that a 'valid' correlation gives C[a][b]."""
    n = x.shape[-1]
    k_max = k_min + kernel_length - 1
    pad_left = max(0, -k_min)
    pad_right = max(0, k_max)
    widths = [(0, 0)] * (x.ndim - 1) + [(pad_left, pad_right)]
    padded = np.pad(x, widths)
    start = k_min + pad_left
    return padded[..., start:start + n + kernel_length - 1]


def _check_path(path: str) -> None:
    if path not in PATHS:
        raise TransformError(f"Unknown CWT path: {path} (expected one of {PATHS})")


def cwt_reference(
    signal,
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, Iterable[float], str],
    sample_period: float = 1.0,
) -> CoefficientMatrix:
    """Direct-sum CWT (correctness oracle)."""
    x = _as_signal(signal)
    scale_set = _as_scale_set(scales)
    values = np.empty((len(scale_set), x.size))
    for row, a in enumerate(scale_set):
        k_min, kernel = scaled_kernel(wavelet, a)
        values[row] = np.correlate(_padded(x, k_min, kernel.size), kernel, mode="valid")
    return CoefficientMatrix(values, scale_set, sample_period)


def cwt_fast(
    signal,
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, Iterable[float], str],
    sample_period: float = 1.0,
) -> CoefficientMatrix:
    """FFT-based CWT; same contract as ``cwt_reference``."""
    x = _as_signal(signal)
    scale_set = _as_scale_set(scales)
    values = np.empty((len(scale_set), x.size))
    for row, a in enumerate(scale_set):
        k_min, kernel = scaled_kernel(wavelet, a)
        values[row] = scipy.signal.fftconvolve(
            _padded(x, k_min, kernel.size), kernel[::-1], mode="valid"
        )
    return CoefficientMatrix(values, scale_set, sample_period)


def cwt(signal, wavelet: WaveletSpec, scales, sample_period: float = 1.0,
        path: str = "fast") -> CoefficientMatrix:
    """Dispatch to ``cwt_reference`` or ``cwt_fast``."""
    _check_path(path)
    engine = cwt_fast if path == "fast" else cwt_reference
    return engine(signal, wavelet, scales, sample_period)


def cwt_batch(
    windows: np.ndarray,
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, Iterable[float], str],
    path: str = "fast",
) -> np.ndarray:
    """
    CWT of many equal-length windows.

    Args:
        windows: Array (n_windows, n_samples)
        wavelet: Mother wavelet
        scales: Scale set
        path: ``fast`` (vectorised across windows) or ``reference``

    Returns:
        Array (n_windows, n_scales, n_samples)
    """
    _check_path(path)
    windows = np.asarray(windows, dtype=np.float64)
    if windows.ndim != 2 or windows.size == 0:
        raise TransformError("windows must be a non-empty 2-D array (n_windows, n_samples)")
    if not np.all(np.isfinite(windows)):
        raise TransformError("windows hold non-finite values")
    scale_set = _as_scale_set(scales)
    n_windows, n = windows.shape
    out = np.empty((n_windows, len(scale_set), n))
    for row, a in enumerate(scale_set):
        k_min, kernel = scaled_kernel(wavelet, a)
        segments = _padded(windows, k_min, kernel.size)
        if path == "fast":
            out[:, row, :] = scipy.signal.fftconvolve(
                segments, kernel[np.newaxis, ::-1], mode="valid", axes=1
            )
        else:
            for w in range(n_windows):
                out[w, row, :] = np.correlate(segments[w], kernel, mode="valid")
    return out


def pseudo_frequency(wavelet: WaveletSpec, scale: float, sample_period: float) -> float:
    """F_a = F_c / (a * Δ) in Hz."""
    if scale <= 0:
        raise TransformError(f"scale must be > 0, got {scale}")
    if sample_period <= 0:
        raise TransformError(f"sample_period must be > 0, got {sample_period}")
    return wavelet.center_frequency / (scale * sample_period)


def scale_for_frequency(wavelet: WaveletSpec, frequency: float, sample_period: float) -> float:
    """Inverse of ``pseudo_frequency``: the scale whose pseudo-frequency is ``frequency``."""
    if frequency <= 0 or sample_period <= 0:
        raise TransformError("frequency and sample_period must be > 0")
    return wavelet.center_frequency / (frequency * sample_period)


def scale_curve(
    wavelets: Union[WaveletSpec, Sequence[WaveletSpec]],
    scales: Union[ScaleSet, Iterable[float], str],
    sample_period: float,
) -> pd.DataFrame:
    """(wavelet, scale, pseudo_frequency_hz) rows, one per wavelet and scale."""
    if isinstance(wavelets, WaveletSpec):
        wavelets = [wavelets]
    scale_set = _as_scale_set(scales)
    rows = [
        {
            "wavelet": wavelet.name,
            "scale": a,
            "pseudo_frequency_hz": pseudo_frequency(wavelet, a, sample_period),
        }
        for wavelet in wavelets
        for a in scale_set
    ]
    return pd.DataFrame(rows)
