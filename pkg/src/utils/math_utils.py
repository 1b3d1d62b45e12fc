"""
Mathematical utility functions.
"""

from typing import Sequence, Tuple, Union

import numpy as np

__all__ = ["rms", "rolling_window", "mean_std", "r_squared"]


def rms(data: Union[np.ndarray, Sequence[float]]) -> float:
    """Root mean square of an array."""
    data = np.asarray(data, dtype=np.float64)
    return float(np.sqrt(np.mean(data ** 2)))


def rolling_window(data: np.ndarray, window: int) -> np.ndarray:
    """
    Create rolling windows from array.

    Args:
        data: Input array
        window: Window size

    Returns:
        Read-only 2D view where each row is a window (stride 1)
    """
    if window < 1 or window > data.shape[-1]:
        raise ValueError(f"window {window} does not fit an array of length {data.shape[-1]}")
    return np.lib.stride_tricks.sliding_window_view(data, window, axis=-1)


def mean_std(values: Union[np.ndarray, Sequence[float]]) -> Tuple[float, float]:
    """Mean and population standard deviation (0 for a single value)."""
    values = np.asarray(values, dtype=np.float64)
    return float(np.mean(values)), float(np.std(values))


def r_squared(y: np.ndarray, fitted: np.ndarray) -> float:
    """
    Coefficient of determination, clipped to [0, 1].

    Returns 0 when ``y`` has no variance (nothing to explain).
    """
    y = np.asarray(y, dtype=np.float64)
    fitted = np.asarray(fitted, dtype=np.float64)
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot == 0.0:
        return 0.0
    ss_res = float(np.sum((y - fitted) ** 2))
    return float(min(1.0, max(0.0, 1.0 - ss_res / ss_tot)))
