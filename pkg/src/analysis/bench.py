"""
Coefficient-calculation timing harness.

Each (wavelet, max_scale, trial) cell times ``cwt_batch`` over a fixed,
seeded set of windows with ``time.perf_counter`` after one untimed warm-up
call. In ``single`` timing mode only scale S is computed (cost linear in S
on the reference path); ``cumulative`` computes every scale 1..S.
"""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from configs.config import BENCH
from src.exceptions import BenchmarkError
from src.logging import get_logger
from src.transforms.cwt import PATHS, ScaleSet, cwt_batch
from src.transforms.wavelets import WaveletSpec
from src.utils.math_utils import r_squared

logger = get_logger(__name__)

TIMING_MODES = ("single", "cumulative")
RESULT_COLUMNS = ["wavelet", "path", "max_scale", "n_windows", "window_length", "trial", "seconds"]


@dataclass(frozen=True)
class BenchResult:
    """Raw timing rows plus run metadata (n_jobs, timing mode, checksum, ...)."""
    rows: pd.DataFrame
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        missing = [c for c in RESULT_COLUMNS if c not in self.rows.columns]
        if missing:
            raise BenchmarkError(f"benchmark rows are missing columns {missing}")
        if len(self.rows) and not (self.rows["seconds"] > 0).all():
            raise BenchmarkError("benchmark wall times must be > 0")

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LinearFit:
    """Least-squares line time = slope * max_scale + intercept."""
    slope: float
    intercept: float
    r_squared: float

    def __post_init__(self):
        if not 0.0 <= self.r_squared <= 1.0:
            raise BenchmarkError(f"r_squared must be in [0, 1], got {self.r_squared}")


def _bench_scales(max_scale: int, timing_mode: str) -> ScaleSet:
    if timing_mode == "single":
        return ScaleSet((float(max_scale),))
    return ScaleSet.range(1, max_scale)


def _run(windows: np.ndarray, wavelet: WaveletSpec, scales: ScaleSet, path: str, n_jobs: int):
    if n_jobs == 1:
        return cwt_batch(windows, wavelet, scales, path)
    parts = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(cwt_batch)(chunk, wavelet, scales, path)
        for chunk in np.array_split(windows, min(len(windows), max(n_jobs, 1) * 4))
    )
    return np.concatenate(parts, axis=0)


def time_cwt(
    wavelets: Sequence[WaveletSpec],
    max_scales: Sequence[int] = BENCH["max_scales"],
    n_windows: int = BENCH["n_windows"],
    window_length: int = BENCH["window_length"],
    trials: int = BENCH["trials"],
    path: str = BENCH["path"],
    timing_mode: str = BENCH["timing_mode"],
    n_jobs: int = BENCH["n_jobs"],
    seed: int = BENCH["seed"],
) -> BenchResult:
    """
    Time CWT coefficient calculation.

    Args:
        wavelets: Mother wavelets to time
        max_scales: Scale S values
        n_windows: Windows per timed call
        window_length: Samples per window
        trials: Timed repetitions per cell
        path: ``reference`` or ``fast``
        timing_mode: ``single`` (scale S only) or ``cumulative`` (1..S)
        n_jobs: joblib workers (1 keeps timings stable)
        seed: Seed of the synthetic input windows

    Returns:
        BenchResult with one row per (wavelet, max_scale, trial)
    """
    if path not in PATHS:
        raise BenchmarkError(f"Unknown CWT path: {path} (expected one of {PATHS})")
    if timing_mode not in TIMING_MODES:
        raise BenchmarkError(
            f"Unknown timing mode: {timing_mode} (expected one of {TIMING_MODES})"
        )
    if trials < 1 or n_windows < 1 or window_length < 2:
        raise BenchmarkError("trials and n_windows must be >= 1 and window_length >= 2")
    if not max_scales or min(max_scales) < 1:
        raise BenchmarkError(f"max_scales must be >= 1, got {list(max_scales)}")

    windows = np.random.default_rng(seed).normal(size=(n_windows, window_length))
    rows = []
    checksum = 0.0
    for wavelet in wavelets:
        for max_scale in max_scales:
            scales = _bench_scales(int(max_scale), timing_mode)
            _run(windows[:1], wavelet, scales, path, 1)
            for trial in range(trials):
                start = time.perf_counter()
                coefficients = _run(windows, wavelet, scales, path, n_jobs)
                elapsed = time.perf_counter() - start
                checksum += float(coefficients[:, :, ::97].sum())
                rows.append({
                    "wavelet": wavelet.name,
                    "path": path,
                    "max_scale": int(max_scale),
                    "n_windows": n_windows,
                    "window_length": window_length,
                    "trial": trial,
                    "seconds": elapsed,
                })
            logger.debug(f"Timed {wavelet.name} S={max_scale} ({path}, {trials} trials)")
    metadata = {
        "timing_mode": timing_mode,
        "n_jobs": n_jobs,
        "parallel": n_jobs != 1,
        "seed": seed,
        "checksum": checksum,
    }
    if n_jobs != 1:
        logger.warning("Benchmark ran with parallel workers; timings are less stable")
    logger.info(f"Benchmarked {len(wavelets)} wavelets x {len(max_scales)} scales ({path})")
    return BenchResult(pd.DataFrame(rows, columns=RESULT_COLUMNS), metadata)


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """Least-squares line through (x, y) points with standard R^2 (0 for constant y)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if np.unique(x).size < 3:
        raise BenchmarkError(f"a linear fit needs >= 3 distinct x values, got {np.unique(x).size}")
    slope, intercept = np.polyfit(x, y, 1)
    return LinearFit(float(slope), float(intercept), r_squared(y, slope * x + intercept))


def fit_linear(result: BenchResult, wavelet: str, path: Optional[str] = None) -> LinearFit:
    """Fit mean time against max_scale for one wavelet (and path)."""
    rows = result.rows[result.rows["wavelet"] == wavelet]
    if path is not None:
        rows = rows[rows["path"] == path]
    if rows.empty:
        raise BenchmarkError(f"no timings for wavelet {wavelet!r}")
    means = rows.groupby("max_scale")["seconds"].mean()
    return linear_fit(means.index.to_numpy(dtype=np.float64), means.to_numpy())


def summarize(result: BenchResult) -> pd.DataFrame:
    """Mean, min and std seconds per (wavelet, path, max_scale)."""
    grouped = result.rows.groupby(["wavelet", "path", "max_scale"], sort=False)["seconds"]
    summary = grouped.agg(mean_seconds="mean", min_seconds="min", std_seconds="std", trials="count")
    return summary.reset_index().fillna({"std_seconds": 0.0})


def fit_summary(result: BenchResult) -> pd.DataFrame:
    """Slope, intercept and R^2 per (wavelet, path)."""
    rows = []
    for (wavelet, path), _ in result.rows.groupby(["wavelet", "path"], sort=False):
        fit = fit_linear(result, wavelet, path)
        rows.append({
            "wavelet": wavelet,
            "path": path,
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
        })
    return pd.DataFrame(rows)


def gaussian_order_report(result: BenchResult, path: str = "reference") -> pd.DataFrame:
    """
    Mean time of gaus1..gaus8 per max_scale and whether it rises with order.

    Reported only; timing order on arbitrary hardware is not guaranteed.
    """
    rows = result.rows[(result.rows["path"] == path)
                       & result.rows["wavelet"].str.fullmatch(r"gaus[1-8]")]
    if rows.empty:
        return pd.DataFrame(columns=["max_scale", "non_decreasing"])
    table = rows.pivot_table(index="max_scale", columns="wavelet", values="seconds", aggfunc="mean")
    ordered = sorted(table.columns, key=lambda name: int(name[4:]))
    table = table[ordered]
    table["non_decreasing"] = (table.diff(axis=1).iloc[:, 1:] >= 0).all(axis=1)
    return table.reset_index()
