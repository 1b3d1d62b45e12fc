"""
Shared fixtures: a small program loop, a 64-samples-per-cycle acquisition
and noise-free synthetic windows built from them.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.analysis.experiments import synthetic_windows  # noqa: E402
from src.data.trace import AcquisitionMeta, ProgramLoop  # noqa: E402


@pytest.fixture
def small_loop() -> ProgramLoop:
    """Five instructions, eight cycles; rjmp closes the loop."""
    return ProgramLoop((
        ("add", 1),
        ("sbi", 2),
        ("nop", 1),
        ("mul", 2),
        ("rjmp", 2),
    ))


@pytest.fixture
def meta64() -> AcquisitionMeta:
    return AcquisitionMeta(sample_rate=64e6, clock_rate=1e6)


@pytest.fixture
def clean_windows(small_loop, meta64):
    return synthetic_windows(small_loop, meta64, n_loops=6, noise_sigma=0.0, seed=3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
