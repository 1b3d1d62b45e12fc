"""
Control-point colormaps.

A colormap is an ordered list of (position, R, G, B) control points on
[0, 1]. ``linear`` maps interpolate channel-wise between the bracketing
points; ``discrete`` maps take the colour of the nearest control point at or
below the value. Grayscale is single-channel.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence, Tuple

import numpy as np

from src.exceptions import ImageError

ControlPoint = Tuple[float, int, int, int]

QUALITATIVE_MAX_COLORS = 32


class ColormapClass(str, Enum):
    SEQUENTIAL = "sequential"
    DIVERGING = "diverging"
    CYCLIC = "cyclic"
    QUALITATIVE = "qualitative"
    GRAYSCALE = "grayscale"
    MISCELLANEOUS = "miscellaneous"


class Interpolation(str, Enum):
    LINEAR = "linear"
    DISCRETE = "discrete"


def _round_half_up(values: np.ndarray) -> np.ndarray:
    return np.floor(values + 0.5).astype(np.uint8)


@dataclass(frozen=True)
class Colormap:
    """
    A named colormap.

    Attributes:
        name: Identifier used on the command line
        cmap_class: Colormap class
        control_points: (position, R, G, B) with positions strictly increasing
            from 0 to 1 and 8-bit channels
        interpolation: ``linear`` or ``discrete``
    """
    name: str
    cmap_class: ColormapClass
    control_points: Tuple[ControlPoint, ...]
    interpolation: Interpolation = Interpolation.LINEAR

    def __post_init__(self):
        object.__setattr__(self, "cmap_class", ColormapClass(self.cmap_class))
        object.__setattr__(self, "interpolation", Interpolation(self.interpolation))
        points = tuple(
            (float(p), int(r), int(g), int(b)) for p, r, g, b in self.control_points
        )
        if len(points) < 2:
            raise ImageError(f"colormap {self.name} needs at least 2 control points")
        positions = [p[0] for p in points]
        if positions[0] != 0.0 or positions[-1] != 1.0:
            raise ImageError(f"colormap {self.name}: positions must start at 0 and end at 1")
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ImageError(f"colormap {self.name}: positions must be strictly increasing")
        if any(not 0 <= c <= 255 for point in points for c in point[1:]):
            raise ImageError(f"colormap {self.name}: channels must be in 0..255")
        if (self.cmap_class is ColormapClass.QUALITATIVE
                and self.interpolation is not Interpolation.DISCRETE):
            raise ImageError(f"qualitative colormap {self.name} must use discrete interpolation")
        object.__setattr__(self, "control_points", points)

    @property
    def channels(self) -> int:
        return 1 if self.cmap_class is ColormapClass.GRAYSCALE else 3

    @property
    def positions(self) -> np.ndarray:
        return np.array([p[0] for p in self.control_points])

    @property
    def colors(self) -> np.ndarray:
        """Control-point colours, shape (n_points, 3)."""
        return np.array([p[1:] for p in self.control_points], dtype=np.float64)

    def __call__(self, values: np.ndarray) -> np.ndarray:
        """
        Map values in [0, 1] to 8-bit pixels.

        Returns:
            uint8 array shaped like ``values`` (grayscale) or with a trailing
            RGB axis
        """
        values = np.asarray(values, dtype=np.float64)
        if values.size and (np.min(values) < 0.0 or np.max(values) > 1.0 or np.isnan(values).any()):
            raise ImageError(f"colormap {self.name} expects values in [0, 1]")
        if self.cmap_class is ColormapClass.GRAYSCALE:
            return _round_half_up(values * 255.0)
        if self.interpolation is Interpolation.DISCRETE:
            index = np.searchsorted(self.positions, values, side="right") - 1
            index = np.clip(index, 0, len(self.control_points) - 1)
            return self.colors[index].astype(np.uint8)
        colors = self.colors
        channels = [np.interp(values, self.positions, colors[:, c]) for c in range(3)]
        return _round_half_up(np.stack(channels, axis=-1))

    @classmethod
    def from_matplotlib(
        cls,
        name: str,
        cmap_class: ColormapClass = ColormapClass.SEQUENTIAL,
        n_points: int = 256,
    ) -> "Colormap":
        """
        Sample a matplotlib colormap into control points.

        Short listed colormaps (tab10, Set1, ...) become discrete maps with one
        bin per colour and the qualitative class; others are sampled at
        ``n_points`` positions.
        """
        from matplotlib import colormaps
        from matplotlib.colors import ListedColormap

        try:
            source = colormaps[name]
        except KeyError:
            raise ImageError(f"Unknown matplotlib colormap: {name}") from None

        if isinstance(source, ListedColormap) and source.N <= QUALITATIVE_MAX_COLORS:
            rgb = np.asarray(source.colors, dtype=np.float64)[:, :3]
            n = rgb.shape[0]
            positions = np.append(np.arange(n) / n, 1.0)
            rgb = np.vstack([rgb, rgb[-1:]])
            interpolation = Interpolation.DISCRETE
            cmap_class = ColormapClass.QUALITATIVE
        else:
            positions = np.linspace(0.0, 1.0, n_points)
            rgb = source(positions)[:, :3]
            interpolation = Interpolation.LINEAR
        points = tuple(
            (float(p), *(int(v) for v in np.floor(c * 255.0 + 0.5)))
            for p, c in zip(positions, rgb)
        )
        return cls(name, cmap_class, points, interpolation)


def _cubehelix_points(
    n_points: int = 9,
    start: float = 0.5,
    rotations: float = -1.5,
    hue: float = 1.0,
) -> Tuple[ControlPoint, ...]:
    lam = np.linspace(0.0, 1.0, n_points)
    phi = 2.0 * np.pi * (start / 3.0 + rotations * lam)
    amp = hue * lam * (1.0 - lam) / 2.0
    red = lam + amp * (-0.14861 * np.cos(phi) + 1.78277 * np.sin(phi))
    green = lam + amp * (-0.29227 * np.cos(phi) - 0.90649 * np.sin(phi))
    blue = lam + amp * (1.97294 * np.cos(phi))
    rgb = np.clip(np.stack([red, green, blue], axis=1), 0.0, 1.0)
    rgb = np.floor(rgb * 255.0 + 0.5).astype(int)
    return tuple((float(p), *map(int, c)) for p, c in zip(lam, rgb))


_QUALITATIVE_HUES = (
    (228, 26, 28),
    (55, 126, 184),
    (255, 255, 51),
    (77, 175, 74),
    (247, 129, 191),
    (152, 78, 163),
    (255, 127, 0),
    (166, 86, 40),
)

BUILTIN_COLORMAPS: Dict[str, Colormap] = {
    "grayscale": Colormap(
        "grayscale", ColormapClass.GRAYSCALE, ((0.0, 0, 0, 0), (1.0, 255, 255, 255))
    ),
    "ember": Colormap(
        "ember",
        ColormapClass.SEQUENTIAL,
        ((0.0, 0, 0, 4), (1 / 3, 120, 28, 109), (2 / 3, 237, 105, 37), (1.0, 252, 255, 164)),
    ),
    "coolwarm": Colormap(
        "coolwarm",
        ColormapClass.DIVERGING,
        ((0.0, 59, 76, 192), (0.5, 255, 255, 255), (1.0, 180, 4, 38)),
    ),
    "dusk": Colormap(
        "dusk",
        ColormapClass.CYCLIC,
        ((0.0, 226, 217, 226), (1 / 3, 94, 125, 188), (2 / 3, 121, 45, 85), (1.0, 226, 217, 226)),
    ),
    "qual8": Colormap(
        "qual8",
        ColormapClass.QUALITATIVE,
        tuple((i / 8, *rgb) for i, rgb in enumerate(_QUALITATIVE_HUES))
        + ((1.0, *_QUALITATIVE_HUES[-1]),),
        Interpolation.DISCRETE,
    ),
    "helix": Colormap("helix", ColormapClass.MISCELLANEOUS, _cubehelix_points()),
}


def get_colormap(name: str) -> Colormap:
    """Built-in colormap by name, or ``mpl:<name>`` for any matplotlib colormap."""
    if name.startswith("mpl:"):
        return Colormap.from_matplotlib(name[4:])
    try:
        return BUILTIN_COLORMAPS[name]
    except KeyError:
        raise ImageError(
            f"Unknown colormap: {name} (available: {', '.join(BUILTIN_COLORMAPS)}, mpl:<name>)"
        ) from None


def resolve_colormaps(names) -> Sequence[Colormap]:
    """``"all"``, a comma-separated string, or an iterable of names -> colormaps."""
    if isinstance(names, str):
        if names.strip() == "all":
            return list(BUILTIN_COLORMAPS.values())
        names = [n.strip() for n in names.split(",") if n.strip()]
    return [get_colormap(n) for n in names]
