"""
Spectral and wavelet transforms.
"""

from .cwt import (
    CoefficientMatrix,
    ScaleSet,
    cwt,
    cwt_batch,
    cwt_fast,
    cwt_reference,
    pseudo_frequency,
    scale_curve,
    scale_for_frequency,
)
from .spectral import (
    Spectrum,
    StftParams,
    dft,
    fft,
    spectrum_to_frame,
    stft,
    stft_to_frame,
)
from .wavelets import (
    BUILTIN_WAVELETS,
    Symmetry,
    WaveletKind,
    WaveletSpec,
    center_frequency,
    eval_wavelet,
    get_wavelet,
    resolve_wavelets,
    symmetry_check,
    wavelet_attributes,
    zero_mean_defect,
)

__all__ = [
    "BUILTIN_WAVELETS",
    "CoefficientMatrix",
    "ScaleSet",
    "Spectrum",
    "StftParams",
    "Symmetry",
    "WaveletKind",
    "WaveletSpec",
    "center_frequency",
    "cwt",
    "cwt_batch",
    "cwt_fast",
    "cwt_reference",
    "dft",
    "eval_wavelet",
    "fft",
    "get_wavelet",
    "pseudo_frequency",
    "resolve_wavelets",
    "scale_curve",
    "scale_for_frequency",
    "spectrum_to_frame",
    "stft",
    "stft_to_frame",
    "symmetry_check",
    "wavelet_attributes",
    "zero_mean_defect",
]
