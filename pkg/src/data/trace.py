"""
Core trace types: acquisition metadata, traces, program loops and labeled
clock-cycle windows.

All types are frozen dataclasses; array fields are stored as read-only
float64 copies so values can be shared between threads.
"""

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.exceptions import MetadataError, SegmentationError, TraceFormatError


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class AcquisitionMeta:
    """
    Sampling setup of a captured (or synthesised) trace.

    Attributes:
        sample_rate: Oscilloscope sample rate in Hz
        clock_rate: DUT clock frequency in Hz
    """
    sample_rate: float
    clock_rate: float

    def __post_init__(self):
        if not np.isfinite(self.sample_rate) or self.sample_rate <= 0:
            raise MetadataError(f"sample_rate must be > 0, got {self.sample_rate}")
        if not np.isfinite(self.clock_rate) or self.clock_rate <= 0:
            raise MetadataError(f"clock_rate must be > 0, got {self.clock_rate}")
        ratio = self.sample_rate / self.clock_rate
        if ratio < 1 or abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise MetadataError(
                f"sample_rate {self.sample_rate} Hz is not an integer multiple "
                f"of clock_rate {self.clock_rate} Hz"
            )

    @property
    def sample_period(self) -> float:
        """Seconds between samples (Δ)."""
        return 1.0 / self.sample_rate

    def to_sidecar(self) -> Dict[str, float]:
        return {"sample_rate_hz": self.sample_rate, "clock_hz": self.clock_rate}


def samples_per_cycle(meta: AcquisitionMeta) -> int:
    """Number of samples in one DUT clock cycle (sample_rate / clock_rate)."""
    return int(round(meta.sample_rate / meta.clock_rate))


@dataclass(frozen=True)
class Trace:
    """A sampled voltage sequence with its acquisition metadata."""
    samples: np.ndarray
    meta: AcquisitionMeta

    def __post_init__(self):
        samples = _frozen_array(self.samples)
        if samples.ndim != 1 or samples.size == 0:
            raise TraceFormatError("trace samples must be a non-empty 1-D sequence")
        bad = np.flatnonzero(~np.isfinite(samples))
        if bad.size:
            raise TraceFormatError(f"non-finite sample at index {int(bad[0])}")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration(self) -> float:
        """Trace length in seconds."""
        return len(self) * self.meta.sample_period

    def scaled(self, factor: float) -> "Trace":
        """Return a copy with every sample multiplied by ``factor``."""
        return Trace(self.samples * factor, self.meta)


class Instruction(NamedTuple):
    """One program-loop entry: mnemonic and its clock length."""
    mnemonic: str
    clock_length: int


class InstructionLabel(NamedTuple):
    """Class label of a clock-cycle window."""
    mnemonic: str
    cycle_index: int

    def key(self, mode: str = "cycle") -> str:
        """String class key: ``"sbi:1"`` in cycle mode, ``"sbi"`` in mnemonic mode."""
        if mode == "mnemonic":
            return self.mnemonic
        if mode == "cycle":
            return f"{self.mnemonic}:{self.cycle_index}"
        raise ValueError(f"Unknown label mode: {mode}")


@dataclass(frozen=True)
class ProgramLoop:
    """Ordered instruction sequence executed repeatedly by the DUT."""
    instruction_sequence: Tuple[Instruction, ...]

    def __post_init__(self):
        sequence = tuple(Instruction(str(m), int(c)) for m, c in self.instruction_sequence)
        if not sequence:
            raise SegmentationError("program loop must contain at least one instruction")
        lengths: Dict[str, int] = {}
        for position, (mnemonic, clock_length) in enumerate(sequence):
            if clock_length not in (1, 2):
                raise SegmentationError(
                    f"instruction {position} ({mnemonic}) has clock_length "
                    f"{clock_length}; expected 1 or 2"
                )
            previous = lengths.setdefault(mnemonic, clock_length)
            if previous != clock_length:
                raise SegmentationError(
                    f"mnemonic {mnemonic} appears with clock lengths {previous} and {clock_length}"
                )
        object.__setattr__(self, "instruction_sequence", sequence)

    @property
    def n_instructions(self) -> int:
        return len(self.instruction_sequence)

    @property
    def total_cycles(self) -> int:
        return sum(instruction.clock_length for instruction in self.instruction_sequence)

    @property
    def mnemonics(self) -> List[str]:
        """Distinct mnemonics in first-appearance order."""
        return list(dict.fromkeys(i.mnemonic for i in self.instruction_sequence))

    def clock_length(self, mnemonic: str) -> int:
        for instruction in self.instruction_sequence:
            if instruction.mnemonic == mnemonic:
                return instruction.clock_length
        raise KeyError(mnemonic)

    def cycle_labels(self) -> List[InstructionLabel]:
        """Label of every clock cycle of one loop, in execution order."""
        return [
            InstructionLabel(instruction.mnemonic, cycle)
            for instruction in self.instruction_sequence
            for cycle in range(instruction.clock_length)
        ]

    def occurrences(self) -> Dict[str, int]:
        """Instruction count per mnemonic within one loop."""
        counts: Dict[str, int] = {}
        for instruction in self.instruction_sequence:
            counts[instruction.mnemonic] = counts.get(instruction.mnemonic, 0) + 1
        return counts


@dataclass(frozen=True)
class LabeledWindow:
    """
    One clock-cycle window of samples and its instruction label.

    ``loop_index`` and ``position`` record where the window came from
    (loop number within the trace and cycle position within the loop);
    they are optional for hand-built windows.
    """
    samples: np.ndarray
    label: InstructionLabel
    loop_index: Optional[int] = None
    position: Optional[int] = None
    source: int = field(default=0, compare=False)

    def __post_init__(self):
        samples = self.samples
        if not isinstance(samples, np.ndarray) or samples.dtype != np.float64:
            samples = np.asarray(samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise SegmentationError("window samples must be a non-empty 1-D sequence")
        if samples.flags.writeable:
            samples = samples.copy()
            samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "label", InstructionLabel(*self.label))
        if self.label.cycle_index < 0:
            raise SegmentationError(f"negative cycle_index in label {self.label}")

    def __len__(self) -> int:
        return int(self.samples.size)


def stack_windows(windows: Sequence[LabeledWindow]) -> np.ndarray:
    """Stack equal-length windows into a (n_windows, samples) array."""
    if not windows:
        raise SegmentationError("no windows to stack")
    lengths = {len(w) for w in windows}
    if len(lengths) != 1:
        raise SegmentationError(f"windows have ragged lengths {sorted(lengths)}")
    return np.stack([w.samples for w in windows])
