"""
Exception hierarchy for the wavelet disassembly toolkit.

Every error raised on bad input derives from ``ToolkitError``, which is also a
``ValueError`` so callers that only know about built-in exceptions still catch
it. The CLI maps ``ToolkitError`` to exit code 2.
"""

from typing import Optional


class ToolkitError(ValueError):
    """Base class for data and parameter errors raised by the toolkit."""


class MetadataError(ToolkitError):
    """Acquisition metadata is missing or inconsistent."""


class TraceFormatError(ToolkitError):
    """A trace file could not be parsed.

    Carries the 1-based ``line`` (CSV) or the ``byte_offset`` (raw) of the
    first offending record when known.
    """

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        byte_offset: Optional[int] = None,
    ):
        location = ""
        if line is not None:
            location = f" (line {line})"
        elif byte_offset is not None:
            location = f" (byte offset {byte_offset})"
        super().__init__(f"{message}{location}")
        self.line = line
        self.byte_offset = byte_offset


class SegmentationError(ToolkitError):
    """A trace cannot be cut into clock-cycle windows as requested."""


class WaveletError(ToolkitError):
    """Invalid mother wavelet definition or evaluation request."""


class TransformError(ToolkitError):
    """Invalid input to a spectral or wavelet transform."""


class ImageError(ToolkitError):
    """Invalid colormap, scalogram or image file."""


class SelectionError(ToolkitError):
    """Cross-correlation based wavelet selection failed."""


class DatasetError(ToolkitError):
    """Dataset assembly, splitting or classification failed."""


class BenchmarkError(ToolkitError):
    """Invalid benchmark request or fit."""


class SynthesisError(ToolkitError):
    """Synthetic trace generation cannot proceed (e.g. a missing template)."""
