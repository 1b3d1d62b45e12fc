"""
Classification experiments: repeated trials, wavelet and colormap
comparisons, noise sweeps and the windowed scale sweep.

Every experiment returns a pandas DataFrame ready to be written as CSV.
Trial t uses split seed ``seed + t``; results are reduced in trial order.
"""

import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from configs.config import CLASSIFICATION, SWEEP, SYNTHESIS
from src.analysis.classify import (
    Dataset,
    SplitSpec,
    accuracy,
    build_dataset,
    build_dataset_from_coefficients,
    cwt_windows,
    select_windows,
    split,
    train_centroid,
    window_labels,
)
from src.data.segmentation import segment
from src.data.synth import default_params, synthesize_trace
from src.data.trace import AcquisitionMeta, LabeledWindow, ProgramLoop, stack_windows
from src.exceptions import DatasetError
from src.imaging.colormaps import Colormap, get_colormap
from src.imaging.scalogram import feature_memory_bytes, render_scalogram
from src.logging import get_logger
from src.transforms.cwt import ScaleSet
from src.transforms.wavelets import WaveletSpec
from src.utils.math_utils import mean_std

logger = get_logger(__name__)


def evaluate(dataset: Dataset, spec: SplitSpec) -> float:
    """Split, fit a centroid model on the train part and score the test part."""
    train, test = split(dataset, spec)
    return accuracy(train_centroid(train), test)


def run_trials(
    dataset: Dataset,
    trials: int = CLASSIFICATION["trials"],
    seed: int = 0,
    train_fraction: float = CLASSIFICATION["train_fraction"],
    stratified: bool = CLASSIFICATION["stratified"],
) -> pd.DataFrame:
    """One row per trial: trial, seed, accuracy."""
    if trials < 1:
        raise DatasetError(f"trials must be >= 1, got {trials}")
    rows = []
    for trial in range(trials):
        spec = SplitSpec(train_fraction, seed + trial, stratified)
        rows.append({"trial": trial, "seed": spec.seed, "accuracy": evaluate(dataset, spec)})
    return pd.DataFrame(rows)


def _summary(accuracies: Sequence[float]) -> Dict[str, float]:
    mean, std = mean_std(accuracies)
    return {"mean_acc": mean, "std_acc": std, "trials": len(accuracies)}


def _scale_text(scales: Union[ScaleSet, str, Sequence[float]]) -> str:
    if isinstance(scales, str):
        return scales
    values = list(scales)
    return f"{values[0]:g}:{values[-1]:g}" if len(values) > 1 else f"{values[0]:g}"


def compare_wavelets(
    windows: Sequence[LabeledWindow],
    wavelets: Sequence[WaveletSpec],
    scales: Union[ScaleSet, str, Sequence[float]],
    cmap: Union[Colormap, str] = "grayscale",
    trials: int = CLASSIFICATION["trials"],
    seed: int = 0,
    **dataset_options,
) -> pd.DataFrame:
    """Mean/std test accuracy per mother wavelet."""
    rows = []
    for wavelet in wavelets:
        dataset = build_dataset(windows, wavelet, scales, cmap, **dataset_options)
        accuracies = run_trials(dataset, trials, seed)["accuracy"]
        cmap_name = cmap if isinstance(cmap, str) else cmap.name
        rows.append({
            "wavelet": wavelet.name,
            "scales": _scale_text(scales),
            "cmap": cmap_name,
            **_summary(accuracies),
        })
        logger.info(f"{wavelet.name}: mean accuracy {rows[-1]['mean_acc']:.3f}")
    return pd.DataFrame(rows)


def compare_colormaps(
    windows: Sequence[LabeledWindow],
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, str, Sequence[float]],
    cmaps: Sequence[Union[Colormap, str]],
    trials: int = CLASSIFICATION["trials"],
    seed: int = 0,
    label_mode: str = CLASSIFICATION["label_mode"],
    exclude: Sequence[str] = CLASSIFICATION["exclude"],
    normalize_mode: str = "per_window",
    resize_to: Optional[Tuple[int, int]] = CLASSIFICATION["resize"],
    use_abs: bool = False,
    path: str = "fast",
    n_jobs: int = 1,
) -> pd.DataFrame:
    """
    Mean/std test accuracy per colormap, with its class and feature memory.

    The CWT is computed once and re-rendered for every colormap.
    """
    kept = select_windows(windows, exclude)
    if not kept:
        raise DatasetError("no windows to build a dataset from")
    labels = window_labels(kept, label_mode)
    coefficients = cwt_windows(stack_windows(kept), wavelet, scales, path, n_jobs)
    rows = []
    for cmap in cmaps:
        if isinstance(cmap, str):
            cmap = get_colormap(cmap)
        dataset = build_dataset_from_coefficients(
            coefficients, labels, cmap, normalize_mode, None, use_abs, resize_to
        )
        # pixel layout only; values do not affect the size
        sample = render_scalogram(coefficients[0], cmap, "per_window", None, use_abs, resize_to)
        accuracies = run_trials(dataset, trials, seed)["accuracy"]
        rows.append({
            "cmap": cmap.name,
            "cmap_class": cmap.cmap_class.value,
            "channels": cmap.channels,
            "feature_bytes": feature_memory_bytes(sample),
            **_summary(accuracies),
        })
        logger.info(
            f"{cmap.name} ({cmap.cmap_class.value}): mean accuracy {rows[-1]['mean_acc']:.3f}"
        )
    return pd.DataFrame(rows)


def synthetic_windows(
    loop: ProgramLoop,
    meta: AcquisitionMeta,
    n_loops: int,
    noise_sigma: float = SYNTHESIS["noise_sigma"],
    seed: int = SYNTHESIS["seed"],
    template_rms: float = SYNTHESIS["template_rms"],
    harmonic_band: Tuple[int, int] = SYNTHESIS["harmonic_band"],
    shared_fraction: float = SYNTHESIS["shared_fraction"],
    cycle_fraction: float = SYNTHESIS["cycle_fraction"],
    **model,
) -> List[LabeledWindow]:
    """Synthesise ``n_loops`` loops with the built-in templates and segment them."""
    params = default_params(
        loop, meta,
        template_rms=template_rms,
        harmonic_band=harmonic_band,
        shared_fraction=shared_fraction,
        cycle_fraction=cycle_fraction,
        noise_sigma=noise_sigma,
        seed=seed,
        **model,
    )
    return segment(synthesize_trace(loop, params, n_loops, meta), loop)


def noise_sweep(
    loop: ProgramLoop,
    meta: AcquisitionMeta,
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, str, Sequence[float]],
    noise_multiples: Sequence[float] = (0.0, 0.5, 1.0, 2.0),
    seeds: Sequence[int] = tuple(range(10)),
    n_loops: int = 10,
    template_rms: float = SYNTHESIS["template_rms"],
    harmonic_band: Tuple[int, int] = SYNTHESIS["harmonic_band"],
    shared_fraction: float = SYNTHESIS["shared_fraction"],
    cycle_fraction: float = SYNTHESIS["cycle_fraction"],
    cmap: Union[Colormap, str] = "grayscale",
    **dataset_options,
) -> pd.DataFrame:
    """
    Mean test accuracy against noise level.

    Noise sigma is ``multiple * template_rms``; every seed draws a fresh
    trace and uses the same seed for its split.
    """
    rows = []
    for multiple in noise_multiples:
        accuracies = []
        for seed in seeds:
            windows = synthetic_windows(
                loop, meta, n_loops,
                noise_sigma=multiple * template_rms,
                seed=seed,
                template_rms=template_rms,
                harmonic_band=harmonic_band,
                shared_fraction=shared_fraction,
                cycle_fraction=cycle_fraction,
            )
            dataset = build_dataset(windows, wavelet, scales, cmap, **dataset_options)
            accuracies.append(evaluate(dataset, SplitSpec(seed=seed)))
        rows.append({
            "noise_multiple": multiple,
            "noise_sigma": multiple * template_rms,
            **_summary(accuracies),
        })
        logger.info(f"Noise {multiple:g}x: mean accuracy {rows[-1]['mean_acc']:.3f}")
    return pd.DataFrame(rows)


def sweep_positions(scale_lo: int, scale_hi: int, window_width: int, stride: int) -> List[int]:
    """
    First scale of every sweep window.

    There are floor((hi - width - lo) / stride) + 1 windows [s, s + width).
    """
    if window_width < 1 or stride < 1:
        raise DatasetError("window_width and stride must be >= 1")
    if scale_lo < 1:
        raise DatasetError(f"scale_lo must be >= 1, got {scale_lo}")
    span = scale_hi - window_width - scale_lo
    if span < 0:
        raise DatasetError(
            f"scale range {scale_lo}..{scale_hi} is narrower than the window width {window_width}"
        )
    count = math.floor(span / stride) + 1
    return [scale_lo + i * stride for i in range(count)]


def scale_window_sweep(
    windows: Sequence[LabeledWindow],
    wavelet: WaveletSpec,
    scale_lo: int = SWEEP["scale_lo"],
    scale_hi: int = SWEEP["scale_hi"],
    window_width: int = SWEEP["window_width"],
    stride: int = SWEEP["stride"],
    trials: int = SWEEP["trials"],
    seed: int = 0,
    cmap: Union[Colormap, str] = "grayscale",
    label_mode: str = CLASSIFICATION["label_mode"],
    exclude: Sequence[str] = CLASSIFICATION["exclude"],
    normalize_mode: str = "per_window",
    resize_to: Optional[Tuple[int, int]] = CLASSIFICATION["resize"],
    use_abs: bool = False,
    path: str = "fast",
    n_jobs: int = 1,
) -> pd.DataFrame:
    """
    Accuracy of classifiers restricted to sliding windows of integer scales.

    Coefficient rows are computed once per scale and kept only while a
    window still needs them.

    Returns:
        One row per window position: scale_lo, scale_hi (last scale,
        inclusive), mean_acc, std_acc, trials
    """
    starts = sweep_positions(scale_lo, scale_hi, window_width, stride)
    if trials < 1:
        raise DatasetError(f"trials must be >= 1, got {trials}")
    kept = select_windows(windows, exclude)
    if not kept:
        raise DatasetError("no windows to build a dataset from")
    labels = window_labels(kept, label_mode)
    stacked = stack_windows(kept)

    rows: Dict[int, np.ndarray] = {}
    results = []
    for index, start in enumerate(starts):
        needed = list(range(start, start + window_width))
        for scale in [a for a in rows if a < start]:
            del rows[scale]
        missing = [a for a in needed if a not in rows]
        if missing:
            fresh = cwt_windows(stacked, wavelet, ScaleSet(tuple(missing)), path, n_jobs)
            for column, scale in enumerate(missing):
                rows[scale] = fresh[:, column, :]
        block = np.stack([rows[a] for a in needed], axis=1)
        dataset = build_dataset_from_coefficients(
            block, labels, cmap, normalize_mode, None, use_abs, resize_to
        )
        accuracies = run_trials(dataset, trials, seed)["accuracy"]
        results.append({"scale_lo": start, "scale_hi": needed[-1], **_summary(accuracies)})
        logger.info(
            f"Sweep window {index + 1}/{len(starts)} scales {start}-{needed[-1]}: "
            f"mean accuracy {results[-1]['mean_acc']:.3f}"
        )
    return pd.DataFrame(results)
