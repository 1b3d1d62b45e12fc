"""Trace types, program loops and loop presets."""

import numpy as np
import pytest

from src.data.presets import (
    LOOP_RESTART,
    get_loop_preset,
    load_program_loop,
    resolve_loop,
    save_program_loop,
    table1_loop,
)
from src.data.trace import (
    AcquisitionMeta,
    InstructionLabel,
    LabeledWindow,
    ProgramLoop,
    Trace,
    samples_per_cycle,
    stack_windows,
)
from src.exceptions import MetadataError, SegmentationError, TraceFormatError


def test_samples_per_cycle():
    assert samples_per_cycle(AcquisitionMeta(500e6, 1e6)) == 500
    assert AcquisitionMeta(500e6, 1e6).sample_period == pytest.approx(2e-9)


@pytest.mark.parametrize("sample_rate, clock_rate", [(0.0, 1e6), (500e6, -1.0), (1.5e6, 1e6)])
def test_invalid_acquisition_meta(sample_rate, clock_rate):
    with pytest.raises(MetadataError):
        AcquisitionMeta(sample_rate, clock_rate)


def test_trace_is_read_only_and_finite():
    trace = Trace([0.1, 0.2, 0.3], AcquisitionMeta(4e6, 1e6))
    assert len(trace) == 3
    assert trace.duration == pytest.approx(3 / 4e6)
    with pytest.raises(ValueError):
        trace.samples[0] = 1.0
    with pytest.raises(TraceFormatError):
        Trace([0.1, np.nan], AcquisitionMeta(4e6, 1e6))
    with pytest.raises(TraceFormatError):
        Trace([], AcquisitionMeta(4e6, 1e6))


def test_label_keys():
    label = InstructionLabel("sbi", 1)
    assert label.key("cycle") == "sbi:1"
    assert label.key("mnemonic") == "sbi"
    with pytest.raises(ValueError):
        label.key("opcode")


def test_program_loop_validation():
    with pytest.raises(SegmentationError):
        ProgramLoop(())
    with pytest.raises(SegmentationError):
        ProgramLoop((("mul", 3),))
    with pytest.raises(SegmentationError):
        ProgramLoop((("mul", 2), ("mul", 1)))


def test_program_loop_cycles(small_loop):
    assert small_loop.total_cycles == 8
    assert small_loop.mnemonics == ["add", "sbi", "nop", "mul", "rjmp"]
    sbi = [InstructionLabel("sbi", 0), InstructionLabel("sbi", 1)]
    assert small_loop.cycle_labels()[1:3] == sbi
    assert small_loop.clock_length("mul") == 2


def test_table1_loop_shape():
    loop = table1_loop()
    assert loop.n_instructions == 191
    assert loop.total_cycles == 287
    occurrences = loop.occurrences()
    assert occurrences.pop(LOOP_RESTART) == 1
    assert set(occurrences.values()) == {19}
    assert len(occurrences) == 10
    assert loop.instruction_sequence[-1].mnemonic == LOOP_RESTART


def test_unknown_preset():
    with pytest.raises(ValueError, match="Unknown loop preset"):
        get_loop_preset("aes-round")


def test_loop_file_round_trip(tmp_path, small_loop):
    path = save_program_loop(small_loop, tmp_path / "loop.txt")
    assert load_program_loop(path) == small_loop
    assert resolve_loop("table1-loop", path) == small_loop


def test_loop_file_comments_and_errors(tmp_path):
    path = tmp_path / "loop.txt"
    path.write_text("# header\nadd 1\n\nsbi 2  # bit set\n")
    assert load_program_loop(path).total_cycles == 3

    path.write_text("add 1\nsbi two\n")
    with pytest.raises(TraceFormatError) as excinfo:
        load_program_loop(path)
    assert excinfo.value.line == 2


def test_labeled_window_and_stack():
    a = LabeledWindow([1.0, 2.0], ("add", 0))
    b = LabeledWindow(np.array([3.0, 4.0]), InstructionLabel("nop", 0))
    assert a.label == InstructionLabel("add", 0)
    np.testing.assert_array_equal(stack_windows([a, b]), [[1.0, 2.0], [3.0, 4.0]])
    with pytest.raises(SegmentationError):
        stack_windows([a, LabeledWindow([1.0], ("add", 0))])
    with pytest.raises(SegmentationError):
        LabeledWindow([1.0], ("add", -1))
