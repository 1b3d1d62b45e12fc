"""
Default settings for trace synthesis, transforms, experiments and the CLI.

Every CLI flag default is read from these dictionaries; edit them to change
project-wide defaults instead of passing the same flags on every run.
"""

# Acquisition setup (1 MHz DUT clock captured at 500 MSa/s)
ACQUISITION = {
    "sample_rate_hz": 500_000_000,
    "clock_hz": 1_000_000,
}

# Synthetic trace model
SYNTHESIS = {
    "preset": "table1-loop",
    "n_loops": 5,
    "template_rms": 0.1,           # volts
    "harmonic_band": (1, 8),       # clock harmonics templates are drawn from
    "shared_fraction": 0.0,        # energy shared by all classes
    "cycle_fraction": 0.1,         # energy of a cycle not shared with its mnemonic
    "noise_sigma": 0.0,            # volts
    "measurement_quant_step": 0.0, # volts, 0 disables
    "measurement_gain_error": 0.0,
    "device_drift_amplitude": 0.0,
    "seed": 0,
}

# Trace file formats
TRACE_IO = {
    "csv_columns": ("time", "voltage"),
    "sidecar_suffix": ".json",
}

# Spectral analysis
SPECTRAL = {
    "window_length": 60,
    "overlap_fraction": 0.8,
    "window_kind": "rectangular",
}

# Mother wavelets
WAVELETS = {
    "resolution_exponent": 10,     # 2**p points for the center frequency DFT
    "table_exponent": 12,          # 2**p points for tabulation and zero-mean checks
    "dump_points": 1024,
}

# Continuous wavelet transform
CWT = {
    "wavelet": "gaus1",
    "scales": "1:21",
    "path": "fast",
    "sample_period_s": 2e-9,
}

# Scalogram rendering
SCALOGRAM = {
    "cmap": "grayscale",
    "normalize": "per_window",
    "use_abs": False,
}

# Wavelet selection by cross-correlation
SELECTION = {
    "candidates": "all",
    "window_length": 500,
    "wavelet_samples": 100,
}

# Classification experiments
CLASSIFICATION = {
    "train_fraction": 0.7,
    "stratified": True,
    "trials": 15,
    "label_mode": "mnemonic",
    "exclude": ("rjmp",),
    "resize": None,                # (width, height) or None
}

# Windowed scale sweep
SWEEP = {
    "wavelet": "morl",
    "scale_lo": 1,
    "scale_hi": 596,
    "window_width": 100,
    "stride": 5,
    "trials": 10,
}

# Coefficient timing benchmark
BENCH = {
    "wavelets": "all",
    "max_scales": (10, 50, 100, 200),
    "n_windows": 1000,
    "window_length": 500,
    "trials": 5,
    "path": "reference",
    "timing_mode": "single",
    "n_jobs": 1,
    "seed": 0,
}

# Command line
CLI = {
    "seed": 0,
    "out_dir": ".",
    "threads": -1,                 # joblib convention: all cores
    "log_level": "INFO",
}
