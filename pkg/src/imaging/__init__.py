"""
Colormaps, scalogram rendering and PGM/PPM image files.
"""

from .colormaps import (
    BUILTIN_COLORMAPS,
    Colormap,
    ColormapClass,
    Interpolation,
    get_colormap,
    resolve_colormaps,
)
from .pnm import read_image, write_image
from .scalogram import (
    Scalogram,
    apply_colormap,
    feature_memory_bytes,
    normalize,
    render_scalogram,
    resize,
)

__all__ = [
    "BUILTIN_COLORMAPS",
    "Colormap",
    "ColormapClass",
    "Interpolation",
    "Scalogram",
    "apply_colormap",
    "feature_memory_bytes",
    "get_colormap",
    "normalize",
    "read_image",
    "render_scalogram",
    "resize",
    "resolve_colormaps",
    "write_image",
]
