"""
Trace Sidecar Schema

Fields of the JSON metadata file written next to every raw trace
(``<trace>.json``) and, optionally, next to CSV traces.
"""

# Example: {"sample_rate_hz": 500000000, "clock_hz": 1000000, "n_samples": 717500}

REQUIRED_FIELDS = [
    "sample_rate_hz",         # Oscilloscope sample rate (Hz)
    "clock_hz",               # DUT clock frequency (Hz)
]

OPTIONAL_FIELDS = [
    "n_samples",              # Number of samples in the trace file
    "dtype",                  # Always "float64" for raw traces
    "byte_order",             # Always "little" for raw traces
    "loop_preset",            # Program loop the trace was captured/synthesised with
    "n_loops",                # Complete loops written by the synthesiser
    "seed",                   # Synthesiser seed
    "noise_sigma",            # Synthesiser additive noise (volts)
]

ALL_FIELDS = REQUIRED_FIELDS + OPTIONAL_FIELDS


def missing_fields(metadata: dict) -> list:
    """Required fields absent from a sidecar dictionary."""
    return [name for name in REQUIRED_FIELDS if name not in metadata]
