"""
Analyses built on the transforms: wavelet selection, classification
experiments and coefficient timing benchmarks.
"""

from .bench import (
    BenchResult,
    LinearFit,
    fit_linear,
    fit_summary,
    gaussian_order_report,
    linear_fit,
    summarize,
    time_cwt,
)
from .classify import (
    CentroidModel,
    Dataset,
    SplitSpec,
    accuracy,
    build_dataset,
    build_dataset_from_coefficients,
    predict,
    split,
    train_centroid,
)
from .experiments import (
    compare_colormaps,
    compare_wavelets,
    evaluate,
    noise_sweep,
    run_trials,
    scale_window_sweep,
    sweep_positions,
    synthetic_windows,
)
from .selection import XcorrReport, XcorrSequence, pulse_train, rank_wavelets, xcorr_sequence

__all__ = [
    'BenchResult',
    'LinearFit',
    'fit_linear',
    'fit_summary',
    'gaussian_order_report',
    'linear_fit',
    'summarize',
    'time_cwt',
    'CentroidModel',
    'Dataset',
    'SplitSpec',
    'accuracy',
    'build_dataset',
    'build_dataset_from_coefficients',
    'predict',
    'split',
    'train_centroid',
    'compare_colormaps',
    'compare_wavelets',
    'evaluate',
    'noise_sweep',
    'run_trials',
    'scale_window_sweep',
    'sweep_positions',
    'synthetic_windows',
    'XcorrReport',
    'XcorrSequence',
    'pulse_train',
    'rank_wavelets',
    'xcorr_sequence',
]
