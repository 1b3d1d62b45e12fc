"""
Synthetic power traces following the additive measurement model

    T_meas = S + N + M + V

where S is the per-cycle signal template of the executing instruction, N is
i.i.d. Gaussian noise, M models the measurement chain (gain error and
quantisation) and V a slow multiplicative device drift.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from configs.config import SYNTHESIS
from src.data.trace import (
    AcquisitionMeta,
    InstructionLabel,
    ProgramLoop,
    Trace,
    samples_per_cycle,
)
from src.exceptions import SynthesisError
from src.logging import get_logger
from src.utils.math_utils import rms

logger = get_logger(__name__)

N_HARMONICS = 3


@dataclass(frozen=True)
class TraceModelParams:
    """
    Parameters of the synthetic measurement model.

    Attributes:
        signal_templates: Per-cycle base waveform S for each label
        noise_sigma: Standard deviation of the additive noise N (volts)
        measurement_quant_step: Quantisation step of M (volts, 0 disables)
        measurement_gain_error: Relative gain deviation of M
        device_drift_amplitude: Amplitude of the slow multiplicative drift V
        seed: RNG seed; the generator is fully deterministic given it
    """
    signal_templates: Mapping[InstructionLabel, np.ndarray] = field(repr=False)
    noise_sigma: float = SYNTHESIS["noise_sigma"]
    measurement_quant_step: float = SYNTHESIS["measurement_quant_step"]
    measurement_gain_error: float = SYNTHESIS["measurement_gain_error"]
    device_drift_amplitude: float = SYNTHESIS["device_drift_amplitude"]
    seed: int = SYNTHESIS["seed"]

    def __post_init__(self):
        if self.noise_sigma < 0:
            raise SynthesisError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.measurement_quant_step < 0:
            raise SynthesisError(
                f"measurement_quant_step must be >= 0, got {self.measurement_quant_step}"
            )
        if abs(self.measurement_gain_error) >= 1:
            raise SynthesisError(
                f"|measurement_gain_error| must be < 1, got {self.measurement_gain_error}"
            )
        if self.device_drift_amplitude < 0:
            raise SynthesisError(
                f"device_drift_amplitude must be >= 0, got {self.device_drift_amplitude}"
            )
        templates: Dict[InstructionLabel, np.ndarray] = {}
        for label, waveform in self.signal_templates.items():
            array = np.array(waveform, dtype=np.float64)
            array.setflags(write=False)
            templates[InstructionLabel(*label)] = array
        lengths = {t.size for t in templates.values()}
        if len(lengths) > 1:
            raise SynthesisError(f"signal templates have different lengths {sorted(lengths)}")
        object.__setattr__(self, "signal_templates", templates)

    @property
    def template_length(self) -> int:
        return next(iter(self.signal_templates.values())).size if self.signal_templates else 0


def _label_seed(salt: str, *parts) -> int:
    key = "|".join(str(part) for part in (salt, *parts))
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _harmonic_waveform(
    rng: np.random.Generator,
    length: int,
    harmonic_band: Tuple[int, int],
) -> np.ndarray:
    lo, hi = harmonic_band
    harmonics = rng.choice(np.arange(lo, hi + 1), size=N_HARMONICS, replace=False)
    amplitudes = rng.uniform(0.5, 1.0, size=N_HARMONICS)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=N_HARMONICS)
    k = np.arange(length) / length
    waveform = np.zeros(length)
    for h, a, phi in zip(harmonics, amplitudes, phases):
        waveform += a * np.sin(2.0 * np.pi * h * k + phi)
    return waveform / rms(waveform)


def build_templates(
    labels: Iterable[InstructionLabel],
    samples_per_cycle: int,
    template_rms: float = SYNTHESIS["template_rms"],
    harmonic_band: Tuple[int, int] = SYNTHESIS["harmonic_band"],
    shared_fraction: float = SYNTHESIS["shared_fraction"],
    cycle_fraction: float = SYNTHESIS["cycle_fraction"],
    salt: str = "",
) -> Dict[InstructionLabel, np.ndarray]:
    """
    Built-in signal templates: each label is a mix of three-harmonic waveforms.

    A label's template mixes a component shared by every label with one
    shared by the cycles of its mnemonic; a smaller cycle-specific part keeps
    the cycles of one mnemonic apart. Harmonic numbers, amplitudes and phases
    are drawn from RNGs seeded by a hash of the mnemonic or label, so classes
    are distinct by construction and identical across runs. The mnemonic
    component dominates, which keeps mnemonic classes separable when their
    cycles are pooled.

    Args:
        labels: Labels needing a template
        samples_per_cycle: Template length
        template_rms: RMS of every template (volts)
        harmonic_band: Inclusive range of clock harmonics to draw from
        shared_fraction: Fraction of template energy common to all labels
        cycle_fraction: Fraction of the remaining energy specific to the cycle
            rather than the mnemonic
        salt: Changes every template when varied

    Returns:
        Mapping label -> template of length samples_per_cycle
    """
    lo, hi = harmonic_band
    if lo < 1 or hi - lo + 1 < N_HARMONICS:
        raise SynthesisError(
            f"harmonic_band {harmonic_band} must hold at least {N_HARMONICS} harmonics >= 1"
        )
    if 2 * hi >= samples_per_cycle:
        raise SynthesisError(
            f"harmonic {hi} is at or above Nyquist for {samples_per_cycle} samples per cycle"
        )
    if not 0.0 <= shared_fraction < 1.0:
        raise SynthesisError(f"shared_fraction must be in [0, 1), got {shared_fraction}")
    if not 0.0 < cycle_fraction <= 1.0:
        raise SynthesisError(f"cycle_fraction must be in (0, 1], got {cycle_fraction}")

    def draw(*parts) -> np.ndarray:
        rng = np.random.default_rng(_label_seed(salt, *parts))
        return _harmonic_waveform(rng, samples_per_cycle, harmonic_band)

    shared = draw("*shared*", 0)
    templates: Dict[InstructionLabel, np.ndarray] = {}
    for label in labels:
        label = InstructionLabel(*label)
        if label in templates:
            continue
        specific = (
            np.sqrt(1.0 - cycle_fraction) * draw("*mnemonic*", label.mnemonic)
            + np.sqrt(cycle_fraction) * draw(label.mnemonic, label.cycle_index)
        )
        specific /= rms(specific)
        waveform = np.sqrt(shared_fraction) * shared + np.sqrt(1.0 - shared_fraction) * specific
        waveform *= template_rms / rms(waveform)
        templates[label] = waveform
    return templates


def clean_loop_waveform(loop: ProgramLoop, params: TraceModelParams) -> np.ndarray:
    """Noise-free signal S of one loop: the cycle templates concatenated."""
    parts = []
    for position, label in enumerate(loop.cycle_labels()):
        template = params.signal_templates.get(label)
        if template is None:
            raise SynthesisError(
                f"no signal template for mnemonic {label.mnemonic!r} cycle "
                f"{label.cycle_index} (loop position {position})"
            )
        parts.append(template)
    return np.concatenate(parts)


def synthesize_trace(
    loop: ProgramLoop,
    params: TraceModelParams,
    n_loops: int,
    meta: AcquisitionMeta,
) -> Trace:
    """
    Generate a synthetic trace of ``n_loops`` repetitions of ``loop``.

    Args:
        loop: Program loop to execute
        params: Measurement model parameters and templates
        n_loops: Number of loop repetitions
        meta: Acquisition metadata; templates must be samples_per_cycle long

    Returns:
        Trace of n_loops * total_cycles * samples_per_cycle samples
    """
    if n_loops < 1:
        raise SynthesisError(f"n_loops must be >= 1, got {n_loops}")
    spc = samples_per_cycle(meta)
    if params.signal_templates and params.template_length != spc:
        raise SynthesisError(
            f"templates have {params.template_length} samples but the acquisition "
            f"gives {spc} samples per cycle"
        )

    samples = np.tile(clean_loop_waveform(loop, params), n_loops)
    n = samples.size
    rng = np.random.default_rng(params.seed)

    if params.device_drift_amplitude > 0:
        t = np.arange(n) / n
        samples = samples * (1.0 + params.device_drift_amplitude * np.sin(2.0 * np.pi * t))
    if params.noise_sigma > 0:
        samples = samples + rng.normal(0.0, params.noise_sigma, size=n)
    if params.measurement_gain_error != 0:
        samples = samples * (1.0 + params.measurement_gain_error)
    if params.measurement_quant_step > 0:
        step = params.measurement_quant_step
        samples = np.round(samples / step) * step

    logger.info(
        f"Synthesised {n_loops} loops ({n} samples, noise sigma {params.noise_sigma:g} V, "
        f"seed {params.seed})"
    )
    return Trace(samples, meta)


def measured_snr_db(measured: np.ndarray, clean: np.ndarray) -> float:
    """SNR in dB of ``measured`` against the known clean signal."""
    measured = np.asarray(measured, dtype=np.float64)
    clean = np.asarray(clean, dtype=np.float64)
    if measured.shape != clean.shape:
        raise SynthesisError(f"shape mismatch {measured.shape} vs {clean.shape}")
    noise_power = np.mean((measured - clean) ** 2)
    if noise_power == 0:
        return float("inf")
    return float(10.0 * np.log10(np.mean(clean ** 2) / noise_power))


def default_params(
    loop: ProgramLoop,
    meta: AcquisitionMeta,
    template_rms: float = SYNTHESIS["template_rms"],
    harmonic_band: Tuple[int, int] = SYNTHESIS["harmonic_band"],
    shared_fraction: float = SYNTHESIS["shared_fraction"],
    cycle_fraction: float = SYNTHESIS["cycle_fraction"],
    **model,
) -> TraceModelParams:
    """TraceModelParams with built-in templates for every cycle of ``loop``."""
    templates = build_templates(
        loop.cycle_labels(),
        samples_per_cycle(meta),
        template_rms=template_rms,
        harmonic_band=harmonic_band,
        shared_fraction=shared_fraction,
        cycle_fraction=cycle_fraction,
    )
    return TraceModelParams(signal_templates=templates, **model)
