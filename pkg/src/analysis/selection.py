"""
Mother wavelet selection by time-domain cross-correlation.

Each candidate is sampled at ``wavelet_samples`` points over its support
(unit scale) and slid across the trace; at every lag the Pearson coefficient
between the trace segment and the sampled wavelet is taken. Candidates are
ranked by the largest |r| seen over all lags of all windows.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from src.data.trace import Trace
from src.exceptions import SelectionError
from src.logging import get_logger
from src.transforms.wavelets import WaveletSpec, eval_wavelet
from src.utils.math_utils import rolling_window

logger = get_logger(__name__)

DEGENERATE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class XcorrSequence:
    """Normalised correlation per lag; ``degenerate`` marks zero-variance segments (r = 0)."""
    values: np.ndarray
    degenerate: np.ndarray

    def __len__(self) -> int:
        return int(self.values.size)


def sampled_wavelet(wavelet: WaveletSpec, wavelet_samples: int) -> np.ndarray:
    """Unit-scale mother wavelet at ``wavelet_samples`` points over its support."""
    if wavelet_samples < 2:
        raise SelectionError(f"wavelet_samples must be >= 2, got {wavelet_samples}")
    return eval_wavelet(wavelet, wavelet_samples)[1]


def xcorr_sequence(window, wavelet: WaveletSpec, wavelet_samples: int = 100) -> XcorrSequence:
    """
    Pearson sliding correlation between a signal window and a mother wavelet.

    Args:
        window: Signal samples (length >= wavelet_samples)
        wavelet: Candidate mother wavelet
        wavelet_samples: Points the wavelet is sampled at

    Returns:
        XcorrSequence with one value per valid lag (len(window) - n + 1);
        every lag of a constant window is degenerate
    """
    x = np.asarray(window, dtype=np.float64)
    psi = sampled_wavelet(wavelet, wavelet_samples)
    n = psi.size
    if x.ndim != 1 or x.size < n:
        raise SelectionError(f"window of {x.size} samples is shorter than the {n}-sample wavelet")
    n_lags = x.size - n + 1
    if np.ptp(x) == 0.0:
        return XcorrSequence(np.zeros(n_lags), np.ones(n_lags, dtype=bool))
    scale = float(np.max(np.abs(x)))

    psi_centered = psi - psi.mean()
    psi_norm = np.sqrt(np.sum(psi_centered ** 2))

    segments = rolling_window(x, n)
    centered = segments - segments.mean(axis=1, keepdims=True)
    segment_norm = np.sqrt(np.sum(centered ** 2, axis=1))
    degenerate = segment_norm <= DEGENERATE_TOLERANCE * scale * np.sqrt(n)

    numerator = centered @ psi_centered
    values = np.zeros(segments.shape[0])
    ok = ~degenerate
    values[ok] = numerator[ok] / (segment_norm[ok] * psi_norm)
    return XcorrSequence(values, degenerate)


@dataclass(frozen=True)
class XcorrReport:
    """
    Per-wavelet |r| statistics and the resulting ranking.

    Attributes:
        stats: wavelet name -> (mean |r|, max |r|)
        ranking: wavelet names, best first
        n_windows: Trace windows aggregated
    """
    stats: Dict[str, Tuple[float, float]]
    ranking: Tuple[str, ...]
    n_windows: int = 0

    def mean_abs(self, name: str) -> float:
        return self.stats[name][0]

    def max_abs(self, name: str) -> float:
        return self.stats[name][1]

    def to_frame(self) -> pd.DataFrame:
        """Rows in ranking order: wavelet, mean_abs_xcorr, max_abs_xcorr, rank."""
        return pd.DataFrame([
            {
                "wavelet": name,
                "mean_abs_xcorr": self.stats[name][0],
                "max_abs_xcorr": self.stats[name][1],
                "rank": rank,
            }
            for rank, name in enumerate(self.ranking, start=1)
        ])


def _candidate_stats(
    windows: np.ndarray,
    wavelet: WaveletSpec,
    wavelet_samples: int,
) -> Tuple[float, float]:
    total = 0.0
    count = 0
    peak = 0.0
    for window in windows:
        magnitudes = np.abs(xcorr_sequence(window, wavelet, wavelet_samples).values)
        total += float(magnitudes.sum())
        count += magnitudes.size
        peak = max(peak, float(magnitudes.max()))
    return total / count, peak


def rank_wavelets(
    trace: Union[Trace, np.ndarray],
    candidates: Sequence[WaveletSpec],
    window_length: int = 500,
    wavelet_samples: int = 100,
    n_jobs: int = 1,
) -> XcorrReport:
    """
    Rank candidate wavelets by cross-correlation with a trace.

    The trace is cut into consecutive ``window_length`` windows (a trailing
    remainder is ignored); mean and max of |r| are taken over every lag of
    every window, flat windows counting as r = 0. Ranking: max descending,
    then mean descending, then name. Only a fully constant trace is an error.
    """
    if not candidates:
        raise SelectionError("no candidate wavelets")
    samples = trace.samples if isinstance(trace, Trace) else np.asarray(trace, dtype=np.float64)
    if window_length < wavelet_samples:
        raise SelectionError(
            f"window_length {window_length} is shorter than wavelet_samples {wavelet_samples}"
        )
    n_windows = samples.size // window_length
    if n_windows < 1:
        raise SelectionError(
            f"trace of {samples.size} samples is shorter than one {window_length}-sample window"
        )
    if np.ptp(samples) == 0.0:
        raise SelectionError("trace is constant; correlation is undefined")
    windows = samples[:n_windows * window_length].reshape(n_windows, window_length)

    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_candidate_stats)(windows, wavelet, wavelet_samples) for wavelet in candidates
    )
    stats = {wavelet.name: result for wavelet, result in zip(candidates, results)}
    ranking = tuple(sorted(
        stats,
        key=lambda name: (-round(stats[name][1], 12), -round(stats[name][0], 12), name),
    ))
    logger.info(
        f"Ranked {len(candidates)} wavelets over {n_windows} windows; best {ranking[0]} "
        f"(max |r| {stats[ranking[0]][1]:.3f})"
    )
    return XcorrReport(stats, ranking, n_windows)


def pulse_train(
    wavelet: WaveletSpec,
    n_windows: int = 10,
    window_length: int = 500,
    wavelet_samples: int = 100,
    noise_sigma: float = 1e-3,
    seed: int = 0,
) -> np.ndarray:
    """
    Synthetic signal made of a wavelet's own pulses.

    Every ``window_length`` window holds one unit-amplitude copy of the
    sampled wavelet at a random position, plus small Gaussian noise.
    """
    psi = sampled_wavelet(wavelet, wavelet_samples)
    psi = psi / np.max(np.abs(psi))
    if window_length < psi.size:
        raise SelectionError("window_length must be >= wavelet_samples")
    rng = np.random.default_rng(seed)
    signal = rng.normal(0.0, noise_sigma, size=n_windows * window_length)
    for w in range(n_windows):
        start = w * window_length + int(rng.integers(0, window_length - psi.size + 1))
        signal[start:start + psi.size] += psi
    return signal


def selection_matrix(
    candidates: Sequence[WaveletSpec],
    window_length: int = 500,
    wavelet_samples: int = 100,
    n_windows: int = 4,
    seed: int = 0,
) -> List[Tuple[str, str]]:
    """(generating wavelet, top-ranked wavelet) for a pulse train of every candidate."""
    pairs = []
    for index, wavelet in enumerate(candidates):
        signal = pulse_train(wavelet, n_windows, window_length, wavelet_samples, seed=seed + index)
        report = rank_wavelets(signal, candidates, window_length, wavelet_samples)
        pairs.append((wavelet.name, report.ranking[0]))
    return pairs
