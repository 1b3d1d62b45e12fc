"""
Discrete Fourier machinery: a literal O(n^2) DFT used as the reference
oracle, an FFT of the exact signal length, and a magnitude STFT.
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy.fft
import scipy.signal

from src.exceptions import TransformError

WINDOW_KINDS = ("rectangular", "hann")


@dataclass(frozen=True)
class Spectrum:
    """Complex DFT bins and the spacing between them."""
    bins: np.ndarray
    bin_resolution: float

    def __len__(self) -> int:
        return int(self.bins.size)

    def frequencies(self) -> np.ndarray:
        """Frequency of every bin (Hz), 0 .. (n-1) * resolution."""
        return np.arange(len(self)) * self.bin_resolution

    def magnitude(self) -> np.ndarray:
        return np.abs(self.bins)


def _as_signal(signal) -> np.ndarray:
    x = np.asarray(signal)
    if x.ndim != 1 or x.size == 0:
        raise TransformError("signal must be a non-empty 1-D sequence")
    return x


def dft(signal, sample_rate: float = 1.0) -> Spectrum:
    """Literal DFT, X[k] = sum_n x[n] exp(-2j*pi*k*n/N)."""
    x = _as_signal(signal)
    n = x.size
    k = np.arange(n)
    # Reduce k*n mod N before scaling so large products keep full phase precision
    kernel = np.exp(-2j * np.pi * (np.outer(k, k) % n) / n)
    return Spectrum(kernel @ x, sample_rate / n)


def fft(signal, sample_rate: float = 1.0) -> Spectrum:
    """FFT of the exact signal length (no zero padding)."""
    x = _as_signal(signal)
    return Spectrum(scipy.fft.fft(x), sample_rate / x.size)


@dataclass(frozen=True)
class StftParams:
    """
    Short-time Fourier transform framing.

    Attributes:
        window_length: Samples per frame (support of the window g)
        overlap_fraction: Fraction of a frame shared with the next one, in [0, 1)
        window_kind: ``rectangular`` or ``hann``
    """
    window_length: int
    overlap_fraction: float = 0.0
    window_kind: str = "rectangular"

    def __post_init__(self):
        if self.window_length < 2:
            raise TransformError(f"window_length must be >= 2, got {self.window_length}")
        if not 0.0 <= self.overlap_fraction < 1.0:
            raise TransformError(
                f"overlap_fraction must be in [0, 1), got {self.overlap_fraction}"
            )
        if self.window_kind not in WINDOW_KINDS:
            raise TransformError(
                f"Unknown window kind: {self.window_kind} (expected one of {WINDOW_KINDS})"
            )
        if self.hop < 1:
            raise TransformError(f"window {self.window_length} with overlap "
                                 f"{self.overlap_fraction} gives hop < 1")

    @property
    def hop(self) -> int:
        """Samples between consecutive frame starts."""
        return int(round(self.window_length * (1.0 - self.overlap_fraction)))

    def window(self) -> np.ndarray:
        if self.window_kind == "hann":
            return scipy.signal.get_window("hann", self.window_length)
        return np.ones(self.window_length)


def stft(signal, params: StftParams) -> np.ndarray:
    """
    Magnitude STFT.

    Frames start every ``hop`` samples; frames that would overrun the signal
    are dropped.

    Returns:
        Array of shape (window_length bins, n_frames)
    """
    x = _as_signal(signal)
    if x.size < params.window_length:
        raise TransformError(
            f"signal of {x.size} samples is shorter than one window of {params.window_length}"
        )
    frames = np.lib.stride_tricks.sliding_window_view(x, params.window_length)[::params.hop]
    return np.abs(scipy.fft.fft(frames * params.window(), axis=1)).T


def spectrum_to_frame(spectrum: Spectrum) -> pd.DataFrame:
    """One row per bin: frequency, real, imaginary and magnitude."""
    return pd.DataFrame({
        "frequency_hz": spectrum.frequencies(),
        "real": spectrum.bins.real,
        "imag": spectrum.bins.imag,
        "magnitude": spectrum.magnitude(),
    })


def stft_to_frame(
    magnitudes: np.ndarray,
    params: StftParams,
    sample_rate: float = 1.0,
) -> pd.DataFrame:
    """Rows are frequency bins, columns are frames labeled by their start time."""
    n_bins, n_frames = magnitudes.shape
    columns = [f"t={i * params.hop / sample_rate:.9g}" for i in range(n_frames)]
    frame = pd.DataFrame(magnitudes, columns=columns)
    frame.insert(0, "frequency_hz", np.arange(n_bins) * sample_rate / params.window_length)
    return frame
