"""
Binary PGM (P5) and PPM (P6) images with maxval 255.
"""

from pathlib import Path
from typing import Optional, Union

import numpy as np

from src.exceptions import ImageError
from src.imaging.scalogram import Scalogram

PathLike = Union[str, Path]
MAGIC = {"pgm": b"P5", "ppm": b"P6"}


def write_image(
    image: Union[Scalogram, np.ndarray],
    path: PathLike,
    fmt: Optional[str] = None,
) -> Path:
    """
    Write a scalogram as PGM (1 channel) or PPM (3 channels).

    The header is ``P5\\n{width} {height}\\n255\\n`` (``P6`` for colour)
    followed by the raw row-major bytes.
    """
    pixels = image.pixels if isinstance(image, Scalogram) else np.asarray(image)
    if pixels.dtype != np.uint8:
        raise ImageError(f"image pixels must be uint8, got {pixels.dtype}")
    natural = "pgm" if pixels.ndim == 2 else "ppm"
    if pixels.ndim == 3 and pixels.shape[2] != 3:
        raise ImageError(f"unsupported image shape {pixels.shape}")
    fmt = fmt or natural
    if fmt not in MAGIC:
        raise ImageError(f"Unknown image format: {fmt} (expected pgm or ppm)")
    if fmt != natural:
        raise ImageError(f"{pixels.ndim}-D pixels cannot be written as {fmt}")
    height, width = pixels.shape[:2]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = MAGIC[fmt] + f"\n{width} {height}\n255\n".encode("ascii")
    path.write_bytes(header + np.ascontiguousarray(pixels).tobytes())
    return path


def _tokens(payload: bytes, count: int, pos: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    while len(tokens) < count:
        while pos < len(payload) and payload[pos:pos + 1].isspace():
            pos += 1
        if payload[pos:pos + 1] == b"#":
            while pos < len(payload) and payload[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(payload) and not payload[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ImageError("truncated image header")
        tokens.append(payload[start:pos])
    return tokens, pos


def read_image(path: PathLike) -> np.ndarray:
    """Read a binary PGM/PPM written by ``write_image`` (or any maxval-255 P5/P6)."""
    payload = Path(path).read_bytes()
    magic = payload[:2]
    if magic not in MAGIC.values():
        raise ImageError(f"{path} is not a binary PGM/PPM file")
    (width, height, maxval), pos = _tokens(payload, 3, 2)
    try:
        width, height, maxval = int(width), int(height), int(maxval)
    except ValueError:
        raise ImageError(f"malformed header in {path}") from None
    if maxval != 255:
        raise ImageError(f"{path}: only maxval 255 is supported, got {maxval}")
    pos += 1
    channels = 1 if magic == b"P5" else 3
    expected = width * height * channels
    data = payload[pos:pos + expected]
    if len(data) != expected:
        raise ImageError(f"{path} holds {len(data)} pixel bytes, expected {expected}")
    pixels = np.frombuffer(data, dtype=np.uint8)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return pixels.reshape(shape).copy()
