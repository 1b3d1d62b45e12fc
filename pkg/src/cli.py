"""
Command line entry point.

    wavedis synth --preset table1-loop --loops 5 --noise 0.01 --seed 7 --out t.bin
    wavedis classify --wavelet gaus1 --scales 1:21 --cmap grayscale --trials 15
    wavedis scale-curve --wavelets all --scales 1:50 --dt 2e-9

Every run writes ``<out-dir>/<command>.manifest.json`` (argv, resolved
configuration, toolkit version, outputs); ``--from-manifest`` replays it.
Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from configs.config import (
    ACQUISITION,
    BENCH,
    CLASSIFICATION,
    CLI,
    CWT,
    SCALOGRAM,
    SELECTION,
    SPECTRAL,
    SWEEP,
    SYNTHESIS,
    WAVELETS,
)
from src import __version__
from src.analysis.bench import fit_summary, gaussian_order_report, summarize, time_cwt
from src.analysis.classify import build_dataset
from src.analysis.experiments import run_trials, scale_window_sweep
from src.analysis.selection import rank_wavelets
from src.data.loaders import load_trace, save_trace
from src.data.presets import LOOP_PRESETS, resolve_loop
from src.data.segmentation import count_labels, segment_many
from src.data.synth import default_params, synthesize_trace
from src.data.trace import AcquisitionMeta, LabeledWindow, Trace, samples_per_cycle
from src.exceptions import ToolkitError
from src.imaging.colormaps import get_colormap
from src.imaging.pnm import write_image
from src.imaging.scalogram import NORMALIZE_MODES, render_scalogram
from src.logging import get_logger, setup_logging
from src.transforms.cwt import ScaleSet, cwt, scale_curve
from src.transforms.spectral import (
    StftParams,
    dft,
    fft,
    spectrum_to_frame,
    stft,
    stft_to_frame,
)
from src.transforms.wavelets import (
    eval_wavelet,
    get_wavelet,
    resolve_wavelets,
    wavelet_attributes,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    """Raised instead of exiting when the command line does not parse."""


class ToolkitArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors through ``UsageError``."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _size(text: str):
    try:
        width, height = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from None
    return width, height


def _bounds(text: str):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN,MAX, got {text!r}") from None
    return lo, hi


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _add_trace_args(parser: argparse.ArgumentParser, many: bool = False) -> None:
    parser.add_argument('--trace', nargs='+' if many else None, required=True,
                        help='Trace file(s) (CSV time,voltage or raw f64-LE with sidecar)')
    parser.add_argument('--format', choices=['csv', 'raw'], default=None,
                        help='Trace format (default: from suffix)')
    parser.add_argument('--sample-rate', type=float, default=None,
                        help='Sample rate in Hz when the trace has no sidecar')
    parser.add_argument('--clock', type=float, default=None,
                        help='DUT clock in Hz when the trace has no sidecar')


def _add_window_source_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--trace', nargs='+', default=None,
                        help='Trace files to segment (default: synthesise one)')
    parser.add_argument('--format', choices=['csv', 'raw'], default=None)
    parser.add_argument('--sample-rate', type=float, default=None)
    parser.add_argument('--clock', type=float, default=None)
    parser.add_argument('--offsets', type=_int_list, default=None,
                        help='Loop start sample per trace, comma separated (default: 0)')
    _add_loop_args(parser)
    _add_model_args(parser)


def _add_loop_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--preset', choices=sorted(LOOP_PRESETS), default=SYNTHESIS["preset"],
                        help='Program loop preset (default: %(default)s)')
    parser.add_argument('--loop-file', default=None,
                        help='Loop description file, one "mnemonic clock_length" per line')


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('synthetic trace model')
    group.add_argument('--loops', type=int, default=SYNTHESIS["n_loops"],
                       help='Loop repetitions (default: %(default)s)')
    group.add_argument('--noise', type=float, default=SYNTHESIS["noise_sigma"],
                       help='Noise sigma in volts (default: %(default)s)')
    group.add_argument('--quant-step', type=float, default=SYNTHESIS["measurement_quant_step"])
    group.add_argument('--gain-error', type=float, default=SYNTHESIS["measurement_gain_error"])
    group.add_argument('--drift', type=float, default=SYNTHESIS["device_drift_amplitude"])
    group.add_argument('--template-rms', type=float, default=SYNTHESIS["template_rms"])
    group.add_argument('--shared-fraction', type=float, default=SYNTHESIS["shared_fraction"],
                       help='Template energy common to all classes (default: %(default)s)')
    group.add_argument('--cycle-fraction', type=float, default=SYNTHESIS["cycle_fraction"],
                       help='Template energy specific to one cycle of a mnemonic '
                            '(default: %(default)s)')
    group.add_argument('--synth-sample-rate', type=float, default=ACQUISITION["sample_rate_hz"])
    group.add_argument('--synth-clock', type=float, default=ACQUISITION["clock_hz"])


def _add_render_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--normalize', type=lambda text: text.replace('-', '_'),
                        choices=NORMALIZE_MODES, default=SCALOGRAM["normalize"],
                        help='per-window or global (default: per-window)')
    parser.add_argument('--bounds', type=_bounds, default=None,
                        help='MIN,MAX for --normalize global (default: data range)')
    parser.add_argument('--abs', dest='use_abs', action='store_true',
                        default=SCALOGRAM["use_abs"], help='Use |C| instead of signed coefficients')
    parser.add_argument('--resize', type=_size, default=CLASSIFICATION["resize"],
                        help='Resize scalograms to WIDTHxHEIGHT')


def _add_classify_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--cmap', default=SCALOGRAM["cmap"],
                        help='Colormap name(s), comma separated (default: %(default)s)')
    parser.add_argument('--trials', type=int, default=CLASSIFICATION["trials"])
    parser.add_argument('--train-fraction', type=float, default=CLASSIFICATION["train_fraction"])
    parser.add_argument('--label-mode', choices=['mnemonic', 'cycle'],
                        default=CLASSIFICATION["label_mode"])
    parser.add_argument('--exclude', default=",".join(CLASSIFICATION["exclude"]),
                        help='Mnemonics left out of the dataset (default: %(default)s)')
    parser.add_argument('--path', choices=['fast', 'reference'], default=CWT["path"])
    _add_render_args(parser)


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subparser per command."""
    common = ToolkitArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=CLI["seed"], help='RNG seed')
    common.add_argument('--out-dir', default=CLI["out_dir"], help='Output directory')
    common.add_argument('--threads', type=int, default=None,
                        help='Worker threads (default: all cores, 1 for bench)')
    common.add_argument('--log-level', default=CLI["log_level"],
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])
    common.add_argument('--log-file', default=None, help='Also log to this file')

    parser = ToolkitArgumentParser(
        prog='wavedis',
        description='Wavelet-based power side-channel disassembly toolkit',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Synthesise five benchmark loops with 10 mV noise
  wavedis synth --preset table1-loop --loops 5 --noise 0.01 --seed 7 --out t.bin

  # Fifteen classification trials with gaus1 over scales 1-21
  wavedis classify --wavelet gaus1 --scales 1:21 --cmap grayscale --trials 15

  # Re-run a previous command from its manifest
  wavedis --from-manifest out/classify.manifest.json
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--from-manifest', default=None,
                        help='Replay the command recorded in a manifest file')
    sub = parser.add_subparsers(dest='command', parser_class=ToolkitArgumentParser)

    p = sub.add_parser('synth', parents=[common], help='Generate a synthetic trace')
    _add_loop_args(p)
    _add_model_args(p)
    p.add_argument('--out', required=True, help='Trace file to write (.csv or raw)')
    p.add_argument('--format', choices=['csv', 'raw'], default=None)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser('segment', parents=[common], help='Count clock-cycle windows')
    _add_trace_args(p, many=True)
    _add_loop_args(p)
    p.add_argument('--offsets', type=_int_list, default=None,
                   help='Loop start sample per trace, comma separated (default: 0)')
    p.add_argument('--out', default=None, help='Label count CSV')
    p.set_defaults(handler=cmd_segment)

    p = sub.add_parser('cwt', parents=[common], help='Continuous wavelet transform of a trace')
    _add_trace_args(p)
    p.add_argument('--wavelet', default=CWT["wavelet"])
    p.add_argument('--scales', default=CWT["scales"], help='lo:hi[:step] or a,b,c')
    p.add_argument('--path', choices=['fast', 'reference'], default=CWT["path"])
    p.add_argument('--start', type=int, default=0, help='First sample')
    p.add_argument('--length', type=int, default=None, help='Samples (default: to the end)')
    p.add_argument('--out', default=None, help='Coefficient CSV')
    p.set_defaults(handler=cmd_cwt)

    p = sub.add_parser('stft', parents=[common], help='Magnitude STFT of a trace')
    _add_trace_args(p)
    p.add_argument('--window', type=int, default=SPECTRAL["window_length"])
    p.add_argument('--overlap', type=float, default=SPECTRAL["overlap_fraction"])
    p.add_argument('--window-kind', choices=['rectangular', 'hann'],
                   default=SPECTRAL["window_kind"])
    p.add_argument('--start', type=int, default=0)
    p.add_argument('--length', type=int, default=None)
    p.add_argument('--out', default=None)
    p.set_defaults(handler=cmd_stft)

    p = sub.add_parser('fft', parents=[common], help='Spectrum of a trace')
    _add_trace_args(p)
    p.add_argument('--dft', action='store_true', help='Use the literal O(n^2) DFT')
    p.add_argument('--start', type=int, default=0)
    p.add_argument('--length', type=int, default=None)
    p.add_argument('--out', default=None)
    p.set_defaults(handler=cmd_fft)

    p = sub.add_parser('wavelet', parents=[common], help='Dump a wavelet or its attributes')
    p.add_argument('action', choices=['dump', 'attrs'])
    p.add_argument('name', nargs='?', default=None, help='Wavelet for dump')
    p.add_argument('--wavelets', default='all', help='Wavelets for attrs')
    p.add_argument('--points', type=int, default=WAVELETS["dump_points"])
    p.add_argument('--out', default=None)
    p.add_argument('--plot', default=None, help='Also save a figure here')
    p.set_defaults(handler=cmd_wavelet)

    p = sub.add_parser('scalogram', parents=[common], help='Render one clock-cycle scalogram')
    _add_trace_args(p)
    p.add_argument('--wavelet', default=CWT["wavelet"])
    p.add_argument('--scales', default=CWT["scales"])
    p.add_argument('--cmap', default=SCALOGRAM["cmap"])
    p.add_argument('--offset', type=int, default=0, help='Sample where the first loop starts')
    p.add_argument('--cycle', type=int, default=0, help='Clock-cycle index after the offset')
    p.add_argument('--length', type=int, default=None, help='Samples (default: one cycle)')
    _add_render_args(p)
    p.add_argument('--out', default=None, help='PGM/PPM image')
    p.add_argument('--plot', default=None)
    p.set_defaults(handler=cmd_scalogram)

    p = sub.add_parser('select', parents=[common], help='Rank wavelets by cross-correlation')
    _add_trace_args(p)
    p.add_argument('--candidates', default=SELECTION["candidates"])
    p.add_argument('--window-length', type=int, default=SELECTION["window_length"])
    p.add_argument('--wavelet-samples', type=int, default=SELECTION["wavelet_samples"])
    p.add_argument('--out', default=None)
    p.set_defaults(handler=cmd_select)

    p = sub.add_parser('classify', parents=[common], help='Nearest-centroid classification trials')
    _add_window_source_args(p)
    p.add_argument('--wavelet', default=CWT["wavelet"], help='Wavelet name(s), comma separated')
    p.add_argument('--scales', default=CWT["scales"])
    _add_classify_args(p)
    p.add_argument('--out', default=None, help='Per-trial CSV')
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser('sweep-scales', parents=[common], help='Accuracy per sliding scale window')
    _add_window_source_args(p)
    p.add_argument('--wavelet', default=SWEEP["wavelet"])
    p.add_argument('--scale-lo', type=int, default=SWEEP["scale_lo"])
    p.add_argument('--scale-hi', type=int, default=SWEEP["scale_hi"])
    p.add_argument('--width', type=int, default=SWEEP["window_width"])
    p.add_argument('--stride', type=int, default=SWEEP["stride"])
    _add_classify_args(p)
    p.set_defaults(trials=SWEEP["trials"])
    p.add_argument('--out', default=None)
    p.add_argument('--plot', default=None)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser('bench', parents=[common], help='Time CWT coefficient calculation')
    p.add_argument('--wavelets', default=BENCH["wavelets"])
    p.add_argument('--scales', type=_int_list,
                   default=list(BENCH["max_scales"]), help='Max scales S, comma separated')
    p.add_argument('--windows', type=int, default=BENCH["n_windows"])
    p.add_argument('--window-length', type=int, default=BENCH["window_length"])
    p.add_argument('--trials', type=int, default=BENCH["trials"])
    p.add_argument('--path', choices=['fast', 'reference'], default=BENCH["path"])
    p.add_argument('--timing-mode', choices=['single', 'cumulative'],
                   default=BENCH["timing_mode"])
    p.add_argument('--out', default=None)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser('scale-curve', parents=[common], help='Pseudo-frequency per scale')
    p.add_argument('--wavelets', default='all')
    p.add_argument('--scales', default='1:50')
    p.add_argument('--dt', type=float, default=CWT["sample_period_s"], help='Sample period (s)')
    p.add_argument('--out', default=None)
    p.add_argument('--plot', default=None)
    p.set_defaults(handler=cmd_scale_curve)

    return parser


# ---------------------------------------------------------------------------
# Shared steps
# ---------------------------------------------------------------------------

def _out_path(args, default_name: str) -> Path:
    path = Path(args.out) if getattr(args, 'out', None) else Path(args.out_dir) / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_csv(frame: pd.DataFrame, path: Path, outputs: List[str]) -> None:
    frame.to_csv(path, index=False, float_format="%.10g")
    outputs.append(str(path))
    logger.info(f"Wrote {len(frame)} rows to {path}")


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return BENCH["n_jobs"] if args.command == 'bench' else CLI["threads"]


def _load(args, path) -> Trace:
    return load_trace(path, args.format, args.sample_rate, args.clock)


def _single_trace(args) -> Trace:
    return _load(args, args.trace)


def _slice(args, trace: Trace):
    stop = None if args.length is None else args.start + args.length
    samples = trace.samples[args.start:stop]
    if samples.size == 0:
        raise ToolkitError(f"empty selection: start {args.start}, length {args.length}")
    return samples


def _synth_meta(args) -> AcquisitionMeta:
    return AcquisitionMeta(args.synth_sample_rate, args.synth_clock)


def _synthesise(args, loop) -> Trace:
    meta = _synth_meta(args)
    params = default_params(
        loop, meta,
        template_rms=args.template_rms,
        shared_fraction=args.shared_fraction,
        cycle_fraction=args.cycle_fraction,
        noise_sigma=args.noise,
        measurement_quant_step=args.quant_step,
        measurement_gain_error=args.gain_error,
        device_drift_amplitude=args.drift,
        seed=args.seed,
    )
    return synthesize_trace(loop, params, args.loops, meta)


def _windows(args) -> List[LabeledWindow]:
    loop = resolve_loop(args.preset, args.loop_file)
    if args.trace:
        traces = [_load(args, path) for path in args.trace]
    else:
        traces = [_synthesise(args, loop)]
    return segment_many(traces, loop, args.offsets, n_jobs=_threads(args))


def _excluded(args) -> tuple:
    return tuple(m.strip() for m in args.exclude.split(",") if m.strip())


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_synth(args, outputs: List[str]) -> None:
    loop = resolve_loop(args.preset, args.loop_file)
    trace = _synthesise(args, loop)
    path = save_trace(
        trace, args.out, args.format,
        seed=args.seed, loop_preset=None if args.loop_file else args.preset,
        n_loops=args.loops, noise_sigma=args.noise,
    )
    outputs.append(str(path))


def cmd_segment(args, outputs: List[str]) -> None:
    loop = resolve_loop(args.preset, args.loop_file)
    traces = [_load(args, path) for path in args.trace]
    windows = segment_many(traces, loop, args.offsets, n_jobs=_threads(args))
    counts = count_labels(windows)
    frame = pd.DataFrame(
        [{"mnemonic": label.mnemonic, "cycle_index": label.cycle_index, "windows": n}
         for label, n in counts.items()]
    )
    n_loops = len(windows) // loop.total_cycles
    logger.info(f"{n_loops} complete loops, {len(windows)} windows")
    _write_csv(frame, _out_path(args, 'segment.csv'), outputs)


def cmd_cwt(args, outputs: List[str]) -> None:
    trace = _single_trace(args)
    samples = _slice(args, trace)
    coefficients = cwt(samples, get_wavelet(args.wavelet), ScaleSet.parse(args.scales),
                       trace.meta.sample_period, args.path)
    _write_csv(coefficients.to_frame(), _out_path(args, 'cwt.csv'), outputs)


def cmd_stft(args, outputs: List[str]) -> None:
    trace = _single_trace(args)
    params = StftParams(args.window, args.overlap, args.window_kind)
    magnitudes = stft(_slice(args, trace), params)
    frame = stft_to_frame(magnitudes, params, trace.meta.sample_rate)
    _write_csv(frame, _out_path(args, 'stft.csv'), outputs)


def cmd_fft(args, outputs: List[str]) -> None:
    trace = _single_trace(args)
    transform = dft if args.dft else fft
    spectrum = transform(_slice(args, trace), trace.meta.sample_rate)
    _write_csv(spectrum_to_frame(spectrum), _out_path(args, 'fft.csv'), outputs)


def cmd_wavelet(args, outputs: List[str]) -> None:
    if args.action == 'dump':
        if not args.name:
            raise UsageError("wavedis wavelet dump: error: a wavelet name is required")
        wavelet = get_wavelet(args.name)
        x, psi = eval_wavelet(wavelet, args.points)
        _write_csv(pd.DataFrame({"x": x, "psi": psi}),
                   _out_path(args, f'wavelet_{wavelet.name}.csv'), outputs)
        specs = [wavelet]
    else:
        specs = resolve_wavelets(args.wavelets)
        _write_csv(wavelet_attributes(specs), _out_path(args, 'wavelet_attrs.csv'), outputs)
    if args.plot:
        from src.utils.plotting import plot_wavelets, save_figure
        save_figure(plot_wavelets(specs, args.points), args.plot)
        outputs.append(args.plot)


def cmd_scalogram(args, outputs: List[str]) -> None:
    trace = _single_trace(args)
    spc = samples_per_cycle(trace.meta)
    start = args.offset + args.cycle * spc
    length = args.length or spc
    samples = trace.samples[start:start + length]
    if samples.size < length:
        raise ToolkitError(f"cycle {args.cycle} after offset {args.offset} runs past the trace")
    coefficients = cwt(samples, get_wavelet(args.wavelet), ScaleSet.parse(args.scales),
                       trace.meta.sample_period)
    cmap = get_colormap(args.cmap)
    image = render_scalogram(coefficients, cmap, args.normalize, args.bounds,
                             args.use_abs, args.resize)
    default_name = 'scalogram.pgm' if cmap.channels == 1 else 'scalogram.ppm'
    outputs.append(str(write_image(image, _out_path(args, default_name))))
    if args.plot:
        from src.utils.plotting import plot_scalogram, save_figure
        save_figure(plot_scalogram(coefficients, title=f'{args.wavelet} cycle {args.cycle}'),
                    args.plot)
        outputs.append(args.plot)


def cmd_select(args, outputs: List[str]) -> None:
    trace = _single_trace(args)
    report = rank_wavelets(trace, resolve_wavelets(args.candidates), args.window_length,
                           args.wavelet_samples, n_jobs=_threads(args))
    _write_csv(report.to_frame(), _out_path(args, 'select.csv'), outputs)


def cmd_classify(args, outputs: List[str]) -> None:
    windows = _windows(args)
    scales = ScaleSet.parse(args.scales)
    trial_frames = []
    for wavelet in resolve_wavelets(args.wavelet):
        for cmap_name in [c.strip() for c in args.cmap.split(",") if c.strip()]:
            dataset = build_dataset(
                windows, wavelet, scales, get_colormap(cmap_name), args.normalize,
                resize_to=args.resize, label_mode=args.label_mode, exclude=_excluded(args),
                use_abs=args.use_abs, bounds=args.bounds, path=args.path,
                n_jobs=_threads(args),
            )
            trials = run_trials(dataset, args.trials, args.seed, args.train_fraction)
            trials.insert(0, "cmap", cmap_name)
            trials.insert(0, "scales", args.scales)
            trials.insert(0, "wavelet", wavelet.name)
            trial_frames.append(trials)
    per_trial = pd.concat(trial_frames, ignore_index=True)
    _write_csv(per_trial, _out_path(args, 'classify.csv'), outputs)
    summary = (
        per_trial.groupby(["wavelet", "scales", "cmap"], sort=False)["accuracy"]
        .agg(mean_acc="mean", std_acc=lambda s: float(s.std(ddof=0)), trials="count")
        .reset_index()
    )
    _write_csv(summary, Path(args.out_dir) / 'classify_summary.csv', outputs)


def cmd_sweep(args, outputs: List[str]) -> None:
    windows = _windows(args)
    frame = scale_window_sweep(
        windows, get_wavelet(args.wavelet), args.scale_lo, args.scale_hi, args.width,
        args.stride, args.trials, args.seed, get_colormap(args.cmap),
        label_mode=args.label_mode, exclude=_excluded(args),
        normalize_mode=args.normalize, resize_to=args.resize, use_abs=args.use_abs,
        path=args.path, n_jobs=_threads(args),
    )
    _write_csv(frame, _out_path(args, 'sweep_scales.csv'), outputs)
    if args.plot:
        from src.utils.plotting import plot_sweep, save_figure
        save_figure(plot_sweep(frame), args.plot)
        outputs.append(args.plot)


def cmd_bench(args, outputs: List[str]) -> None:
    result = time_cwt(
        resolve_wavelets(args.wavelets), args.scales, args.windows, args.window_length,
        args.trials, args.path, args.timing_mode, _threads(args), args.seed,
    )
    _write_csv(result.rows, _out_path(args, 'bench.csv'), outputs)
    out_dir = Path(args.out_dir)
    _write_csv(summarize(result), out_dir / 'bench_summary.csv', outputs)
    if len(set(args.scales)) >= 3:
        _write_csv(fit_summary(result), out_dir / 'bench_fit.csv', outputs)
        _write_csv(gaussian_order_report(result, args.path), out_dir / 'bench_gauss_order.csv',
                   outputs)
    meta_path = out_dir / 'bench_meta.json'
    meta_path.write_text(json.dumps(result.metadata, indent=2, sort_keys=True) + "\n")
    outputs.append(str(meta_path))


def cmd_scale_curve(args, outputs: List[str]) -> None:
    frame = scale_curve(resolve_wavelets(args.wavelets), ScaleSet.parse(args.scales), args.dt)
    _write_csv(frame, _out_path(args, 'scale_curve.csv'), outputs)
    if args.plot:
        from src.utils.plotting import plot_scale_curves, save_figure
        save_figure(plot_scale_curves(frame), args.plot)
        outputs.append(args.plot)


# ---------------------------------------------------------------------------
# Manifest and entry point
# ---------------------------------------------------------------------------

def _manifest(args, argv: Sequence[str], outputs: List[str]) -> Dict:
    config = {
        key: (list(value) if isinstance(value, tuple) else value)
        for key, value in sorted(vars(args).items())
        if key not in ('handler', 'from_manifest')
    }
    config['threads'] = _threads(args)
    return {
        "command": args.command,
        "argv": list(argv),
        "config": config,
        "version": __version__,
        "outputs": outputs,
    }


def write_manifest(args, argv: Sequence[str], outputs: List[str]) -> Path:
    """Write ``<out_dir>/<command>.manifest.json``."""
    path = Path(args.out_dir) / f"{args.command}.manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(_manifest(args, argv, outputs), indent=2, sort_keys=True, default=str)
    path.write_text(payload + "\n", encoding="utf-8")
    return path


def read_manifest_argv(path) -> List[str]:
    """argv recorded in a manifest."""
    try:
        manifest = json.loads(Path(path).read_text(encoding="utf-8"))
        return [str(a) for a in manifest["argv"]]
    except (json.JSONDecodeError, KeyError, TypeError):
        raise ToolkitError(f"{path} is not a valid run manifest") from None


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        if args.from_manifest:
            argv = read_manifest_argv(args.from_manifest)
            args = parser.parse_args(argv)
        if args.command is None:
            parser.error("a command is required")

        setup_logging(level=args.log_level, log_file=args.log_file)
        outputs: List[str] = []
        args.handler(args, outputs)
        manifest = write_manifest(args, argv, outputs)
        logger.info(f"Manifest written to {manifest}")
        return EXIT_OK
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ToolkitError, OSError) as exc:
        print(f"wavedis: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
