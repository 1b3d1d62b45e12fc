"""Synthetic trace generation."""

import numpy as np
import pytest

from src.data.synth import (
    TraceModelParams,
    build_templates,
    clean_loop_waveform,
    default_params,
    measured_snr_db,
    synthesize_trace,
)
from src.data.trace import AcquisitionMeta, InstructionLabel, samples_per_cycle
from src.exceptions import SynthesisError
from src.utils.math_utils import rms


def test_noise_free_trace_is_tiled_loop(small_loop, meta64):
    params = default_params(small_loop, meta64)
    trace = synthesize_trace(small_loop, params, 3, meta64)
    loop_wave = clean_loop_waveform(small_loop, params)
    assert len(trace) == 3 * small_loop.total_cycles * samples_per_cycle(meta64)
    np.testing.assert_array_equal(trace.samples, np.tile(loop_wave, 3))


def test_seed_determinism(small_loop, meta64):
    def noisy(seed):
        params = default_params(small_loop, meta64, noise_sigma=0.01, seed=seed)
        return synthesize_trace(small_loop, params, 2, meta64)

    first, again, other = noisy(5), noisy(5), noisy(6)
    np.testing.assert_array_equal(first.samples, again.samples)
    assert not np.array_equal(first.samples, other.samples)


def test_snr_matches_noise_level(small_loop, meta64):
    params = default_params(small_loop, meta64, template_rms=0.1, noise_sigma=0.01, seed=1)
    trace = synthesize_trace(small_loop, params, 200, meta64)
    clean = np.tile(clean_loop_waveform(small_loop, params), 200)
    assert measured_snr_db(trace.samples, clean) == pytest.approx(20.0, abs=0.3)
    assert measured_snr_db(clean, clean) == float("inf")


def test_templates_are_distinct_with_requested_rms(small_loop):
    templates = build_templates(small_loop.cycle_labels(), 64, template_rms=0.2)
    assert len(templates) == small_loop.total_cycles
    for waveform in templates.values():
        assert rms(waveform) == pytest.approx(0.2)
    sbi0 = templates[InstructionLabel("sbi", 0)]
    sbi1 = templates[InstructionLabel("sbi", 1)]
    assert not np.allclose(sbi0, sbi1)


def test_shared_fraction_raises_template_similarity(small_loop):
    labels = small_loop.cycle_labels()
    apart = build_templates(labels, 64, shared_fraction=0.0)
    close = build_templates(labels, 64, shared_fraction=0.99)
    a, b = InstructionLabel("add", 0), InstructionLabel("nop", 0)
    corr_apart = abs(np.corrcoef(apart[a], apart[b])[0, 1])
    corr_close = np.corrcoef(close[a], close[b])[0, 1]
    assert corr_close > 0.8
    assert corr_close > corr_apart


def test_cycles_of_a_mnemonic_share_most_of_their_template(small_loop):
    labels = small_loop.cycle_labels()
    templates = build_templates(labels, 64)
    sbi0, sbi1 = templates[InstructionLabel("sbi", 0)], templates[InstructionLabel("sbi", 1)]
    add = templates[InstructionLabel("add", 0)]
    assert np.corrcoef(sbi0, sbi1)[0, 1] > 0.7
    assert not np.allclose(sbi0, sbi1)
    same_mnemonic = np.linalg.norm(sbi0 - sbi1)
    assert same_mnemonic < np.linalg.norm(sbi0 - add)
    assert same_mnemonic < np.linalg.norm(sbi1 - add)


def test_quantisation_and_gain(small_loop, meta64):
    params = default_params(
        small_loop, meta64, noise_sigma=0.01, measurement_quant_step=0.005,
        measurement_gain_error=0.02, device_drift_amplitude=0.1, seed=2,
    )
    samples = synthesize_trace(small_loop, params, 2, meta64).samples
    np.testing.assert_allclose(samples / 0.005, np.round(samples / 0.005), atol=1e-9)


def test_invalid_model_parameters(small_loop, meta64):
    with pytest.raises(SynthesisError):
        default_params(small_loop, meta64, noise_sigma=-1.0)
    with pytest.raises(SynthesisError):
        default_params(small_loop, meta64, measurement_gain_error=1.5)
    with pytest.raises(SynthesisError):
        build_templates(small_loop.cycle_labels(), 16, harmonic_band=(1, 8))
    with pytest.raises(SynthesisError):
        build_templates(small_loop.cycle_labels(), 64, cycle_fraction=0.0)
    with pytest.raises(SynthesisError):
        synthesize_trace(small_loop, default_params(small_loop, meta64), 0, meta64)


def test_missing_template_and_length_mismatch(small_loop, meta64):
    partial = TraceModelParams(signal_templates={InstructionLabel("add", 0): np.zeros(64)})
    with pytest.raises(SynthesisError, match="sbi"):
        synthesize_trace(small_loop, partial, 1, meta64)
    params = default_params(small_loop, meta64)
    with pytest.raises(SynthesisError):
        synthesize_trace(small_loop, params, 1, AcquisitionMeta(32e6, 1e6))
