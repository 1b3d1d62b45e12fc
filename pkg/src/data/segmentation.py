"""
Clock-cycle segmentation of traces into labeled windows, and loop averaging.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from src.data.trace import (
    InstructionLabel,
    LabeledWindow,
    ProgramLoop,
    Trace,
    samples_per_cycle,
)
from src.exceptions import SegmentationError
from src.logging import get_logger

logger = get_logger(__name__)


def complete_loops(trace: Trace, loop: ProgramLoop, offset: int = 0) -> int:
    """Number of complete program loops in ``trace`` starting at ``offset``."""
    if offset < 0:
        raise SegmentationError(f"offset must be >= 0, got {offset}")
    loop_samples = loop.total_cycles * samples_per_cycle(trace.meta)
    return max(0, (len(trace) - offset) // loop_samples)


def segment_array(
    trace: Trace,
    loop: ProgramLoop,
    offset: int = 0,
) -> Tuple[np.ndarray, List[InstructionLabel]]:
    """
    Cut a trace into a (loops, cycles, samples_per_cycle) array view.

    Only complete loops are kept; the trailing partial loop is discarded.

    Returns:
        (windows, labels) where labels[c] is the label of cycle position c
    """
    n_loops = complete_loops(trace, loop, offset)
    if n_loops < 1:
        raise SegmentationError(
            f"trace of {len(trace)} samples holds no complete loop of "
            f"{loop.total_cycles} cycles x {samples_per_cycle(trace.meta)} samples "
            f"after offset {offset}"
        )
    spc = samples_per_cycle(trace.meta)
    consumed = n_loops * loop.total_cycles * spc
    windows = trace.samples[offset:offset + consumed].reshape(n_loops, loop.total_cycles, spc)
    return windows, loop.cycle_labels()


def segment(
    trace: Trace,
    loop: ProgramLoop,
    offset: int = 0,
    source: int = 0,
) -> List[LabeledWindow]:
    """
    Segment a trace into labeled clock-cycle windows.

    Windows are emitted in execution order; concatenating them reproduces the
    consumed prefix ``trace.samples[offset:offset + n_loops * loop_samples]``.

    Args:
        trace: Trace to segment
        loop: Program loop the DUT executed
        offset: Sample index where the first loop starts
        source: Index of the trace among several files (kept on each window)

    Returns:
        List of LabeledWindow
    """
    windows, labels = segment_array(trace, loop, offset)
    n_loops, n_cycles, _ = windows.shape
    result = [
        LabeledWindow(windows[i, p], labels[p], loop_index=i, position=p, source=source)
        for i in range(n_loops)
        for p in range(n_cycles)
    ]
    logger.debug(f"Segmented {n_loops} loops into {len(result)} windows (source {source})")
    return result


def segment_many(
    traces: Sequence[Trace],
    loop: ProgramLoop,
    offsets: Optional[Sequence[int]] = None,
    n_jobs: int = 1,
) -> List[LabeledWindow]:
    """
    Segment several trace files; output order follows input order.

    Args:
        traces: Traces to segment
        loop: Program loop shared by all traces
        offsets: Per-trace loop start (default 0 for each)
        n_jobs: joblib worker count
    """
    if offsets is None:
        offsets = [0] * len(traces)
    if len(offsets) != len(traces):
        raise SegmentationError(f"{len(traces)} traces but {len(offsets)} offsets")
    parts = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(segment)(trace, loop, offset, index)
        for index, (trace, offset) in enumerate(zip(traces, offsets))
    )
    windows = [w for part in parts for w in part]
    logger.info(f"Segmented {len(traces)} traces into {len(windows)} clock-cycle windows")
    return windows


def count_labels(windows: Sequence[LabeledWindow]) -> Dict[InstructionLabel, int]:
    """Window count per (mnemonic, cycle_index) label."""
    counts: Dict[InstructionLabel, int] = {}
    for window in windows:
        counts[window.label] = counts.get(window.label, 0) + 1
    return counts


def windows_by_position(windows: Sequence[LabeledWindow]) -> List[List[LabeledWindow]]:
    """
    Group windows by their cycle position within the loop.

    Windows from every loop (and every source trace) that share a position
    land in the same group, in input order.
    """
    groups: Dict[int, List[LabeledWindow]] = {}
    for window in windows:
        if window.position is None:
            raise SegmentationError("window has no loop position; segment the trace first")
        groups.setdefault(window.position, []).append(window)
    return [groups[p] for p in sorted(groups)]


def average_loops(
    groups: Sequence[Sequence[LabeledWindow]],
    k: int,
) -> List[LabeledWindow]:
    """
    Average the first ``k`` windows of every loop-position group.

    Averaging k noisy repetitions of the same cycle shrinks the variance of
    the noise component by a factor of k.

    Args:
        groups: Windows grouped by loop position (see ``windows_by_position``)
        k: Number of windows to average per position

    Returns:
        One averaged window per position, labeled like the group
    """
    if k < 1:
        raise SegmentationError(f"k must be >= 1, got {k}")
    averaged: List[LabeledWindow] = []
    for index, group in enumerate(groups):
        if len(group) < k:
            raise SegmentationError(
                f"position group {index} has {len(group)} windows, fewer than k={k}"
            )
        chosen = group[:k]
        lengths = {len(w) for w in chosen}
        if len(lengths) != 1:
            raise SegmentationError(
                f"position group {index} has ragged window lengths {sorted(lengths)}"
            )
        labels = {w.label for w in chosen}
        if len(labels) != 1:
            raise SegmentationError(f"position group {index} mixes labels {sorted(labels)}")
        mean = np.mean(np.stack([w.samples for w in chosen]), axis=0)
        averaged.append(LabeledWindow(mean, chosen[0].label, position=chosen[0].position))
    return averaged
