"""
Wavelet Disassembly Toolkit

A research toolkit for power side-channel disassembly: synthetic and
captured traces, clock-cycle segmentation, continuous wavelet transforms,
scalogram rendering, mother wavelet selection, instruction classification
and coefficient timing benchmarks.
"""

__version__ = "0.1.0"
