"""
AVR instruction subset and program-loop presets.

The loop description file has one instruction per line, ``mnemonic clock_length``;
blank lines and ``#`` comments are ignored.
"""

from pathlib import Path
from typing import Callable, Dict, List, Union

from src.data.trace import Instruction, ProgramLoop
from src.exceptions import TraceFormatError

# Instruction -> (clock length, type)
INSTRUCTION_SET: Dict[str, tuple] = {
    "sbi": (2, "bit / IO"),
    "nop": (1, "control"),
    "add": (1, "arithmetic"),
    "sub": (1, "arithmetic"),
    "cbi": (2, "bit / IO"),
    "push": (2, "transfer"),
    "pop": (2, "transfer"),
    "mul": (2, "arithmetic"),
    "eor": (1, "logic"),
    "movw": (1, "transfer"),
    "rjmp": (2, "program flow"),
}

LOOP_RESTART = "rjmp"


def table1_loop() -> ProgramLoop:
    """
    Build the benchmark program loop (191 instructions, 287 clock cycles).

    For each instruction X other than rjmp, the block ``X Y1 X Y2 ... Y9 X``
    pairs X with one instance of every other instruction; each mnemonic then
    occurs 10 times in its own block and once in each of the other nine,
    19 times per loop. A single rjmp restarts the loop.
    """
    subset = [m for m in INSTRUCTION_SET if m != LOOP_RESTART]
    sequence: List[Instruction] = []
    for first in subset:
        sequence.append(Instruction(first, INSTRUCTION_SET[first][0]))
        for other in subset:
            if other == first:
                continue
            sequence.append(Instruction(other, INSTRUCTION_SET[other][0]))
            sequence.append(Instruction(first, INSTRUCTION_SET[first][0]))
    sequence.append(Instruction(LOOP_RESTART, INSTRUCTION_SET[LOOP_RESTART][0]))
    return ProgramLoop(tuple(sequence))


LOOP_PRESETS: Dict[str, Callable[[], ProgramLoop]] = {
    "table1-loop": table1_loop,
}


def get_loop_preset(name: str) -> ProgramLoop:
    """Return a named program loop preset."""
    try:
        return LOOP_PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"Unknown loop preset: {name} (available: {', '.join(sorted(LOOP_PRESETS))})"
        ) from None


def load_program_loop(path: Union[str, Path]) -> ProgramLoop:
    """
    Read a loop description file.

    Args:
        path: File with one ``mnemonic clock_length`` pair per line

    Returns:
        ProgramLoop in file order
    """
    instructions: List[Instruction] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise TraceFormatError(
                    f"expected 'mnemonic clock_length', got {raw.strip()!r}", line=line_number
                )
            mnemonic, length = parts
            try:
                clock_length = int(length)
            except ValueError:
                raise TraceFormatError(
                    f"clock length {length!r} is not an integer", line=line_number
                ) from None
            instructions.append(Instruction(mnemonic, clock_length))
    if not instructions:
        raise TraceFormatError(f"no instructions found in {path}")
    return ProgramLoop(tuple(instructions))


def save_program_loop(loop: ProgramLoop, path: Union[str, Path]) -> Path:
    """Write a loop description file readable by ``load_program_loop``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{i.mnemonic} {i.clock_length}" for i in loop.instruction_sequence]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def resolve_loop(preset: str = None, loop_file: Union[str, Path, None] = None) -> ProgramLoop:
    """Pick a loop from a description file if given, else from a preset name."""
    if loop_file is not None:
        return load_program_loop(loop_file)
    return get_loop_preset(preset or "table1-loop")
