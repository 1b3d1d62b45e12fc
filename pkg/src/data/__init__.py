"""
Trace data: acquisition types, file I/O, synthetic generation and
clock-cycle segmentation.
"""

from .trace import (
    AcquisitionMeta,
    Instruction,
    InstructionLabel,
    LabeledWindow,
    ProgramLoop,
    Trace,
    samples_per_cycle,
    stack_windows,
)
from .presets import (
    INSTRUCTION_SET,
    get_loop_preset,
    load_program_loop,
    save_program_loop,
    table1_loop,
)
from .synth import (
    TraceModelParams,
    build_templates,
    default_params,
    measured_snr_db,
    synthesize_trace,
)
from .loaders import load_trace, save_trace
from .segmentation import (
    average_loops,
    count_labels,
    segment,
    segment_array,
    segment_many,
    windows_by_position,
)

__all__ = [
    'AcquisitionMeta',
    'Instruction',
    'InstructionLabel',
    'LabeledWindow',
    'ProgramLoop',
    'Trace',
    'samples_per_cycle',
    'stack_windows',
    'INSTRUCTION_SET',
    'get_loop_preset',
    'load_program_loop',
    'save_program_loop',
    'table1_loop',
    'TraceModelParams',
    'build_templates',
    'default_params',
    'measured_snr_db',
    'synthesize_trace',
    'load_trace',
    'save_trace',
    'average_loops',
    'count_labels',
    'segment',
    'segment_array',
    'segment_many',
    'windows_by_position',
]
