"""
Trace file readers and writers.

Two formats are supported:

- ``csv``: two columns ``time,voltage`` (seconds, volts), optional header,
  '.' decimal separator. Metadata comes from a sidecar if present, otherwise
  the sample rate is inferred from the time column and the clock rate must be
  given.
- ``raw``: little-endian float64 samples with a mandatory JSON sidecar
  ``<path>.json`` holding ``sample_rate_hz`` and ``clock_hz``.
"""

import json
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from configs.config import TRACE_IO
from src.data.schema import sidecar as sidecar_schema
from src.data.trace import AcquisitionMeta, Trace
from src.exceptions import MetadataError, TraceFormatError
from src.logging import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]
FORMATS = ("csv", "raw")
_RAW_DTYPE = np.dtype("<f8")
TIME_COLUMN, VOLTAGE_COLUMN = TRACE_IO["csv_columns"]
SIDECAR_SUFFIX = TRACE_IO["sidecar_suffix"]


def sidecar_path(path: PathLike) -> Path:
    """Location of the JSON sidecar belonging to a trace file."""
    path = Path(path)
    return path.with_name(path.name + SIDECAR_SUFFIX)


def infer_format(path: PathLike) -> str:
    return "csv" if Path(path).suffix.lower() in (".csv", ".txt") else "raw"


def read_sidecar(path: PathLike) -> dict:
    """Read and validate a sidecar file."""
    path = Path(path)
    try:
        metadata = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise MetadataError(f"sidecar metadata file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise TraceFormatError(
            f"sidecar {path} is not valid JSON: {exc.msg}", line=exc.lineno
        ) from None
    if not isinstance(metadata, dict):
        raise MetadataError(f"sidecar {path} must hold a JSON object")
    missing = sidecar_schema.missing_fields(metadata)
    if missing:
        raise MetadataError(f"sidecar {path} is missing required fields: {', '.join(missing)}")
    return metadata


def write_sidecar(path: PathLike, meta: AcquisitionMeta, **extra) -> Path:
    """Write the sidecar for the trace at ``path``; returns the sidecar path."""
    target = sidecar_path(path)
    metadata = dict(meta.to_sidecar())
    metadata.update({k: v for k, v in extra.items() if v is not None})
    target.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


def _meta_from_sidecar(metadata: dict) -> AcquisitionMeta:
    return AcquisitionMeta(
        sample_rate=float(metadata["sample_rate_hz"]),
        clock_rate=float(metadata["clock_hz"]),
    )


def _first_line_is_header(path: Path) -> bool:
    with path.open("r", encoding="utf-8") as handle:
        first = handle.readline()
    field = first.split(",", 1)[0].strip()
    try:
        float(field)
    except ValueError:
        return True
    return False


def _read_csv_columns(path: Path, header: bool) -> pd.DataFrame:
    read_kwargs = dict(
        header=None,
        names=[TIME_COLUMN, VOLTAGE_COLUMN],
        skiprows=1 if header else 0,
        skip_blank_lines=False,
    )
    try:
        frame = pd.read_csv(path, float_precision="round_trip", **read_kwargs)
    except pd.errors.ParserError as exc:
        raise TraceFormatError(f"malformed CSV trace {path}: {exc}") from None
    except pd.errors.EmptyDataError:
        raise TraceFormatError(f"CSV trace {path} holds no rows") from None

    first_data_line = 2 if header else 1
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna().any(axis=1) | ~np.isfinite(numeric.to_numpy(dtype=np.float64)).all(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        values = ",".join(str(v) for v in frame.iloc[row].tolist())
        raise TraceFormatError(
            f"malformed or non-finite row {values!r} in {path}", line=first_data_line + row
        )
    if numeric.empty:
        raise TraceFormatError(f"CSV trace {path} holds no rows")
    return numeric.astype(np.float64)


def _infer_sample_rate(times: np.ndarray, path: Path) -> float:
    if times.size < 2:
        raise MetadataError(
            f"cannot infer the sample rate of {path} from a single row; pass sample_rate"
        )
    steps = np.diff(times)
    step = float(np.median(steps))
    if step <= 0:
        raise MetadataError(f"time column of {path} is not increasing")
    if np.max(np.abs(steps - step)) > 0.01 * step:
        logger.warning(f"Time column of {path} is not uniformly spaced; using median step")
    rate = 1.0 / step
    return float(round(rate)) if rate >= 1 else rate


def load_trace(
    path: PathLike,
    fmt: Optional[str] = None,
    sample_rate: Optional[float] = None,
    clock_rate: Optional[float] = None,
    header: Optional[bool] = None,
) -> Trace:
    """
    Load a trace from disk.

    Args:
        path: Trace file
        fmt: ``csv`` or ``raw``; inferred from the suffix when None
        sample_rate: Override/supply the sample rate (Hz)
        clock_rate: Override/supply the DUT clock rate (Hz)
        header: Whether the CSV has a header row; auto-detected when None

    Returns:
        Trace with finite samples and populated metadata
    """
    path = Path(path)
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise ValueError(f"Unknown trace format: {fmt} (expected one of {FORMATS})")
    if not path.exists():
        raise FileNotFoundError(f"trace file not found: {path}")

    side = sidecar_path(path)
    metadata = read_sidecar(side) if side.exists() else None

    if fmt == "raw":
        if metadata is None:
            raise MetadataError(f"raw trace {path} requires a sidecar file {side}")
        payload = path.read_bytes()
        usable = len(payload) - len(payload) % _RAW_DTYPE.itemsize
        if usable != len(payload):
            raise TraceFormatError(
                f"raw trace {path} has {len(payload)} bytes, not a multiple of 8",
                byte_offset=usable,
            )
        samples = np.frombuffer(payload, dtype=_RAW_DTYPE).astype(np.float64)
        if samples.size == 0:
            raise TraceFormatError(f"raw trace {path} is empty")
        bad = np.flatnonzero(~np.isfinite(samples))
        if bad.size:
            raise TraceFormatError(
                f"non-finite sample in raw trace {path}",
                byte_offset=int(bad[0]) * _RAW_DTYPE.itemsize,
            )
        expected = metadata.get("n_samples")
        if expected is not None and int(expected) != samples.size:
            raise MetadataError(
                f"sidecar declares {expected} samples but {path} holds {samples.size}"
            )
        meta = _meta_from_sidecar(metadata)
        if sample_rate is not None or clock_rate is not None:
            meta = AcquisitionMeta(sample_rate or meta.sample_rate, clock_rate or meta.clock_rate)
    else:
        if header is None:
            header = _first_line_is_header(path)
        frame = _read_csv_columns(path, header)
        samples = frame[VOLTAGE_COLUMN].to_numpy()
        if sample_rate is None:
            sample_rate = (
                float(metadata["sample_rate_hz"]) if metadata
                else _infer_sample_rate(frame[TIME_COLUMN].to_numpy(), path)
            )
        if clock_rate is None:
            if metadata is None:
                raise MetadataError(
                    f"clock rate of {path} unknown: pass clock_rate or provide sidecar {side}"
                )
            clock_rate = float(metadata["clock_hz"])
        meta = AcquisitionMeta(sample_rate, clock_rate)

    logger.debug(f"Loaded {samples.size} samples from {path} ({fmt})")
    return Trace(samples, meta)


def save_trace(
    trace: Trace,
    path: PathLike,
    fmt: Optional[str] = None,
    **sidecar_extra,
) -> Path:
    """
    Write a trace and its sidecar.

    CSV files get a ``time,voltage`` header; values are written with
    round-trip precision so ``load_trace`` restores them exactly.

    Args:
        trace: Trace to write
        path: Destination file
        fmt: ``csv`` or ``raw``; inferred from the suffix when None
        **sidecar_extra: Optional sidecar fields (see ``schema.sidecar``)

    Returns:
        Path of the written trace
    """
    path = Path(path)
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise ValueError(f"Unknown trace format: {fmt} (expected one of {FORMATS})")
    path.parent.mkdir(parents=True, exist_ok=True)

    if fmt == "raw":
        trace.samples.astype(_RAW_DTYPE).tofile(path)
        write_sidecar(
            path, trace.meta, n_samples=len(trace), dtype="float64", byte_order="little",
            **sidecar_extra,
        )
    else:
        frame = pd.DataFrame({
            TIME_COLUMN: np.arange(len(trace)) * trace.meta.sample_period,
            VOLTAGE_COLUMN: trace.samples,
        })
        frame.to_csv(path, index=False, float_format="%.17g")
        write_sidecar(path, trace.meta, n_samples=len(trace), **sidecar_extra)

    logger.info(f"Wrote {len(trace)} samples to {path} ({fmt})")
    return path
