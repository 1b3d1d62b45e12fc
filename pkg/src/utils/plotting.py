"""
Plotting and visualization utilities.

Figures are returned, never shown; the CLI saves them with the Agg backend.
"""

from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from src.transforms.cwt import CoefficientMatrix  # noqa: E402
from src.transforms.wavelets import WaveletSpec, eval_wavelet  # noqa: E402


def plot_wavelets(
    wavelets: Sequence[WaveletSpec],
    n_points: int = 1024,
    figsize: Tuple[int, int] = (14, 8)
) -> plt.Figure:
    """
    Plot mother wavelets over their default supports, one panel each.

    Args:
        wavelets: Mother wavelets
        n_points: Samples per wavelet
        figsize: Figure size
    """
    n_cols = min(5, len(wavelets))
    n_rows = int(np.ceil(len(wavelets) / n_cols))
    fig, axes = plt.subplots(n_rows, n_cols, figsize=figsize, squeeze=False)

    for ax, wavelet in zip(axes.flat, wavelets):
        x, psi = eval_wavelet(wavelet, n_points)
        ax.plot(x, psi, linewidth=1.5)
        ax.axhline(0, color='gray', linestyle='--', alpha=0.5)
        ax.set_title(wavelet.name)
        ax.grid(True, alpha=0.3)
    for ax in list(axes.flat)[len(wavelets):]:
        ax.set_visible(False)

    plt.tight_layout()
    return fig


def plot_scale_curves(
    curve: pd.DataFrame,
    figsize: Tuple[int, int] = (10, 6)
) -> plt.Figure:
    """
    Plot pseudo-frequency against scale for every wavelet in a scale curve.

    Args:
        curve: Output of ``scale_curve`` (wavelet, scale, pseudo_frequency_hz)
        figsize: Figure size
    """
    fig, ax = plt.subplots(figsize=figsize)

    for name, rows in curve.groupby('wavelet', sort=False):
        ax.plot(rows['scale'], rows['pseudo_frequency_hz'] / 1e6, linewidth=2, label=name)

    ax.set_xlabel('Scale')
    ax.set_ylabel('Pseudo-frequency (MHz)')
    ax.set_title('Wavelet Scale vs. Pseudo-frequency')
    ax.grid(True, alpha=0.3)
    ax.legend()

    return fig


def plot_scalogram(
    coefficients: CoefficientMatrix,
    cmap: str = 'gray',
    title: Optional[str] = None,
    figsize: Tuple[int, int] = (12, 4)
) -> plt.Figure:
    """
    Plot a coefficient matrix as an image (scale on y, time on x).

    Args:
        coefficients: CWT output
        cmap: Matplotlib colormap name
        title: Figure title
        figsize: Figure size
    """
    fig, ax = plt.subplots(figsize=figsize)
    scales = list(coefficients.scale_set)
    times = coefficients.times()
    extent = [times[0], times[-1] if len(times) > 1 else 1.0, scales[-1], scales[0]]

    image = ax.imshow(coefficients.values, aspect='auto', cmap=cmap, extent=extent)
    ax.set_xlabel('Time (s)')
    ax.set_ylabel('Scale')
    ax.set_title(title or 'Scalogram')
    fig.colorbar(image, ax=ax)

    return fig


def plot_sweep(
    sweep: pd.DataFrame,
    figsize: Tuple[int, int] = (10, 6)
) -> plt.Figure:
    """
    Plot mean accuracy (with a one-sigma band) per scale window.

    Args:
        sweep: Output of ``scale_window_sweep``
        figsize: Figure size
    """
    fig, ax = plt.subplots(figsize=figsize)

    x = sweep['scale_lo']
    ax.plot(x, sweep['mean_acc'], 'b-', linewidth=2, label='Mean accuracy')
    ax.fill_between(x, sweep['mean_acc'] - sweep['std_acc'],
                    sweep['mean_acc'] + sweep['std_acc'], alpha=0.2)

    ax.set_xlabel('First scale of window')
    ax.set_ylabel('Test accuracy')
    ax.set_title('Accuracy per Scale Window')
    ax.set_ylim(0, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend()

    return fig


def save_figure(fig: plt.Figure, path) -> None:
    """Save and close a figure."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
