"""
Scalogram rendering: normalise CWT coefficients to [0, 1], colour them and
resize to the classifier input size.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from src.exceptions import ImageError
from src.imaging.colormaps import Colormap, get_colormap
from src.transforms.cwt import CoefficientMatrix, ScaleSet

NORMALIZE_MODES = ("per_window", "global")


@dataclass(frozen=True)
class Scalogram:
    """
    8-bit image of a coefficient matrix.

    ``pixels`` is (height, width) for grayscale and (height, width, 3)
    otherwise. Rows follow ``source_scales`` when it is set; it is dropped
    once rows have been duplicated by an upsampling resize.
    """
    pixels: np.ndarray
    cmap_name: str = "grayscale"
    source_scales: Optional[ScaleSet] = None

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.dtype != np.uint8:
            raise ImageError(f"scalogram pixels must be uint8, got {pixels.dtype}")
        if pixels.ndim not in (2, 3) or (pixels.ndim == 3 and pixels.shape[2] != 3):
            raise ImageError(f"scalogram pixels have unsupported shape {pixels.shape}")
        if pixels.shape[0] == 0 or pixels.shape[1] == 0:
            raise ImageError("scalogram is empty")
        if self.source_scales is not None and len(self.source_scales) != pixels.shape[0]:
            raise ImageError(
                f"scalogram height {pixels.shape[0]} does not match "
                f"{len(self.source_scales)} scales"
            )
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    def features(self) -> np.ndarray:
        """Flattened pixels scaled to [0, 1]."""
        return self.pixels.reshape(-1).astype(np.float64) / 255.0


def _values(coefficients: Union[CoefficientMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(coefficients, CoefficientMatrix):
        return coefficients.values
    values = np.asarray(coefficients, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ImageError("coefficients hold non-finite values")
    return values


def normalize(
    coefficients: Union[CoefficientMatrix, np.ndarray],
    mode: str = "per_window",
    bounds: Optional[Tuple[float, float]] = None,
) -> np.ndarray:
    """
    Map coefficients to [0, 1].

    Args:
        coefficients: Matrix to normalise
        mode: ``per_window`` uses this matrix's own min/max (a constant matrix
            maps to 0.5); ``global`` clamps to ``bounds`` and scales by them
        bounds: (min, max) for ``global`` mode

    Returns:
        float64 array of the same shape
    """
    mode = mode.replace("-", "_")
    if mode not in NORMALIZE_MODES:
        raise ImageError(f"Unknown normalize mode: {mode} (expected one of {NORMALIZE_MODES})")
    values = _values(coefficients)
    if mode == "global":
        if bounds is None:
            raise ImageError("global normalisation needs (min, max) bounds")
        lo, hi = float(bounds[0]), float(bounds[1])
        if lo >= hi:
            raise ImageError(f"global bounds need min < max, got ({lo}, {hi})")
        return (np.clip(values, lo, hi) - lo) / (hi - lo)
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi == lo:
        return np.full(values.shape, 0.5)
    return (values - lo) / (hi - lo)


def apply_colormap(
    normalized: np.ndarray,
    cmap: Union[Colormap, str],
    source_scales: Optional[ScaleSet] = None,
) -> Scalogram:
    """Colour a normalised (scales x time) matrix."""
    if isinstance(cmap, str):
        cmap = get_colormap(cmap)
    normalized = np.asarray(normalized, dtype=np.float64)
    if normalized.ndim != 2:
        raise ImageError(f"expected a 2-D matrix, got shape {normalized.shape}")
    return Scalogram(cmap(normalized), cmap.name, source_scales)


def resize(scalogram: Scalogram, width: int, height: int) -> Scalogram:
    """
    Nearest-neighbour resize.

    Target pixel k along an axis samples source index floor(k * source / target).
    """
    if width < 1 or height < 1:
        raise ImageError(f"resize target must be >= 1x1, got {width}x{height}")
    if (width, height) == (scalogram.width, scalogram.height):
        return scalogram
    rows = (np.arange(height) * scalogram.height) // height
    cols = (np.arange(width) * scalogram.width) // width
    pixels = scalogram.pixels[rows][:, cols]
    scales = None
    if scalogram.source_scales is not None and height <= scalogram.height:
        scales = ScaleSet(tuple(scalogram.source_scales.scales[r] for r in rows))
    return Scalogram(np.ascontiguousarray(pixels), scalogram.cmap_name, scales)


def render_scalogram(
    coefficients: Union[CoefficientMatrix, np.ndarray],
    cmap: Union[Colormap, str] = "grayscale",
    mode: str = "per_window",
    bounds: Optional[Tuple[float, float]] = None,
    use_abs: bool = False,
    size: Optional[Tuple[int, int]] = None,
) -> Scalogram:
    """
    Coefficients -> (optional |C|) -> normalise -> colormap -> (optional) resize.

    Args:
        size: (width, height) of the output, or None to keep the matrix shape
    """
    values = _values(coefficients)
    if use_abs:
        values = np.abs(values)
    scales = coefficients.scale_set if isinstance(coefficients, CoefficientMatrix) else None
    image = apply_colormap(normalize(values, mode, bounds), cmap, scales)
    if size is not None:
        image = resize(image, *size)
    return image


def feature_memory_bytes(scalogram: Scalogram) -> int:
    """Bytes needed to hold the scalogram pixels; RGB maps take three times grayscale."""
    return int(scalogram.pixels.nbytes)
