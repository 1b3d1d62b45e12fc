"""
Real continuous mother wavelets and their attributes.

Built-ins are the Gaussian derivatives gaus1-gaus8, the Mexican hat (mexh)
and the real Morlet (morl):

    gausN(x) = (-1)^N d^N/dx^N exp(-x^2) = H_N(x) exp(-x^2), L2-normalised on the grid
    mexh(t)  = 2 / (sqrt(3) pi^(1/4)) (1 - t^2) exp(-t^2 / 2)
    morl(t)  = exp(-t^2 / 2) cos(5 t)

on supports [-5, 5] (Gaussian family) and [-8, 8] (mexh, morl). Custom
mother wavelets can be supplied as tabulated (grid, values) pairs.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from numpy.polynomial import hermite

from configs.config import WAVELETS
from src.exceptions import WaveletError
from src.transforms.spectral import fft

TABLE_EXPONENT = WAVELETS["table_exponent"]
SYMMETRY_TOLERANCE = 1e-9


class WaveletKind(str, Enum):
    GAUSSIAN_DERIVATIVE = "gaussian_derivative"
    MEXICAN_HAT = "mexican_hat"
    MORLET = "morlet"
    CUSTOM = "custom"


class Symmetry(str, Enum):
    SYMMETRIC = "symmetric"
    ANTI_SYMMETRIC = "anti_symmetric"


FAMILY_NAMES = {
    WaveletKind.GAUSSIAN_DERIVATIVE: "Gaussian",
    WaveletKind.MEXICAN_HAT: "Mexican Hat",
    WaveletKind.MORLET: "Morlet",
    WaveletKind.CUSTOM: "Custom",
}


@dataclass(frozen=True)
class WaveletSpec:
    """
    A real mother wavelet.

    Attributes:
        name: Identifier, e.g. ``gaus3``
        kind: Closed form used for evaluation
        lower_bound: Lower end of the support (dimensionless time)
        upper_bound: Upper end of the support
        symmetry: Declared symmetry (checked by ``symmetry_check``)
        order: Derivative order for the Gaussian family
    """
    name: str
    kind: WaveletKind
    lower_bound: float
    upper_bound: float
    symmetry: Optional[Symmetry] = None
    order: int = 0
    custom_grid: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    custom_values: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", WaveletKind(self.kind))
        if self.symmetry is not None:
            object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        if not self.lower_bound < self.upper_bound:
            raise WaveletError(
                f"{self.name}: lower_bound {self.lower_bound} must be < upper_bound "
                f"{self.upper_bound}"
            )
        if self.kind is WaveletKind.GAUSSIAN_DERIVATIVE and not 1 <= self.order <= 8:
            raise WaveletError(f"{self.name}: Gaussian derivative order must be in 1..8")
        if self.kind is WaveletKind.CUSTOM:
            if self.custom_grid is None or self.custom_values is None:
                raise WaveletError(f"{self.name}: custom wavelets need a grid and values")

    @classmethod
    def from_table(
        cls,
        name: str,
        grid: Sequence[float],
        values: Sequence[float],
        symmetry: Optional[Union[Symmetry, str]] = None,
    ) -> "WaveletSpec":
        """Custom mother wavelet from tabulated samples (linear interpolation)."""
        grid = np.array(grid, dtype=np.float64)
        values = np.array(values, dtype=np.float64)
        if grid.ndim != 1 or grid.shape != values.shape or grid.size < 2:
            raise WaveletError(f"{name}: grid and values must be equal-length 1-D, >= 2 points")
        if np.any(np.diff(grid) <= 0):
            raise WaveletError(f"{name}: grid must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise WaveletError(f"{name}: tabulated values must be finite")
        grid.setflags(write=False)
        values.setflags(write=False)
        return cls(
            name=name,
            kind=WaveletKind.CUSTOM,
            lower_bound=float(grid[0]),
            upper_bound=float(grid[-1]),
            symmetry=symmetry,
            custom_grid=grid,
            custom_values=values,
        )

    @property
    def family(self) -> str:
        return FAMILY_NAMES[self.kind]

    @property
    def support_width(self) -> float:
        return self.upper_bound - self.lower_bound

    def grid(self, n_points: int) -> np.ndarray:
        """``n_points`` equally spaced abscissae spanning the support, ends included."""
        return np.linspace(self.lower_bound, self.upper_bound, n_points)

    def closed_form(self, x: np.ndarray) -> np.ndarray:
        """Un-normalised ψ at arbitrary abscissae (zero outside a custom table)."""
        x = np.asarray(x, dtype=np.float64)
        if self.kind is WaveletKind.GAUSSIAN_DERIVATIVE:
            coefficients = np.zeros(self.order + 1)
            coefficients[-1] = 1.0
            return hermite.hermval(x, coefficients) * np.exp(-x ** 2)
        if self.kind is WaveletKind.MEXICAN_HAT:
            return 2.0 / (np.sqrt(3.0) * np.pi ** 0.25) * (1.0 - x ** 2) * np.exp(-x ** 2 / 2.0)
        if self.kind is WaveletKind.MORLET:
            return np.exp(-x ** 2 / 2.0) * np.cos(5.0 * x)
        return np.interp(x, self.custom_grid, self.custom_values, left=0.0, right=0.0)

    def norm_factor(self, n_points: int) -> float:
        """Scale applied to ``closed_form`` on an ``n_points`` grid.

        Only the Gaussian family is normalised (to unit L2 norm on the grid);
        the other closed forms are used as written.
        """
        if self.kind is not WaveletKind.GAUSSIAN_DERIVATIVE:
            return 1.0
        x = self.grid(n_points)
        dx = self.support_width / (n_points - 1)
        return 1.0 / np.sqrt(np.sum(self.closed_form(x) ** 2) * dx)

    @cached_property
    def table(self) -> Tuple[np.ndarray, np.ndarray]:
        """2^12-point tabulation used by the CWT (grid, ψ)."""
        grid, values = eval_wavelet(self, 2 ** TABLE_EXPONENT)
        grid.setflags(write=False)
        values.setflags(write=False)
        return grid, values

    @cached_property
    def center_frequency(self) -> float:
        """F_c in Hz (see ``center_frequency``)."""
        return center_frequency(self)


def _gaus(order: int) -> WaveletSpec:
    symmetry = Symmetry.SYMMETRIC if order % 2 == 0 else Symmetry.ANTI_SYMMETRIC
    return WaveletSpec(
        name=f"gaus{order}",
        kind=WaveletKind.GAUSSIAN_DERIVATIVE,
        lower_bound=-5.0,
        upper_bound=5.0,
        symmetry=symmetry,
        order=order,
    )


BUILTIN_WAVELETS: Dict[str, WaveletSpec] = {
    **{f"gaus{n}": _gaus(n) for n in range(1, 9)},
    "mexh": WaveletSpec("mexh", WaveletKind.MEXICAN_HAT, -8.0, 8.0, Symmetry.SYMMETRIC),
    "morl": WaveletSpec("morl", WaveletKind.MORLET, -8.0, 8.0, Symmetry.SYMMETRIC),
}


def get_wavelet(name: str) -> WaveletSpec:
    """Look up a built-in mother wavelet by name."""
    try:
        return BUILTIN_WAVELETS[name]
    except KeyError:
        raise WaveletError(
            f"Unknown wavelet: {name} (available: {', '.join(BUILTIN_WAVELETS)})"
        ) from None


def resolve_wavelets(names: Union[str, Iterable[str]]) -> List[WaveletSpec]:
    """``"all"``, a comma-separated string, or an iterable of names -> specs."""
    if isinstance(names, str):
        if names.strip() == "all":
            return list(BUILTIN_WAVELETS.values())
        names = [n.strip() for n in names.split(",") if n.strip()]
    specs = [get_wavelet(n) for n in names]
    if not specs:
        raise WaveletError("no wavelets selected")
    return specs


def eval_wavelet(spec: WaveletSpec, n_points: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sample a mother wavelet over its support.

    Args:
        spec: Mother wavelet
        n_points: Number of abscissae (>= 2), ends included

    Returns:
        (grid, ψ values)
    """
    if n_points < 2:
        raise WaveletError(f"n_points must be >= 2, got {n_points}")
    x = spec.grid(n_points)
    values = spec.closed_form(x) * spec.norm_factor(n_points)
    if not np.all(np.isfinite(values)):
        raise WaveletError(f"{spec.name}: non-finite wavelet values")
    return x, values


def center_frequency(
    spec: WaveletSpec, resolution_exponent: int = WAVELETS["resolution_exponent"]
) -> float:
    """
    Center frequency F_c of a mother wavelet.

    ψ is sampled at 2^p points over its support; F_c is the index of the
    largest positive-frequency DFT magnitude divided by the support width.
    """
    n_points = 2 ** resolution_exponent
    _, values = eval_wavelet(spec, n_points)
    magnitude = fft(values).magnitude()[1:n_points // 2 + 1]
    peak_bin = int(np.argmax(magnitude)) + 1
    return peak_bin / spec.support_width


def zero_mean_defect(spec: WaveletSpec) -> float:
    """|Σψ dx| / Σ|ψ| dx on the tabulation grid; near 0 for admissible wavelets."""
    _, values = eval_wavelet(spec, 2 ** TABLE_EXPONENT)
    return float(abs(np.sum(values)) / np.sum(np.abs(values)))


def symmetry_check(spec: WaveletSpec) -> Symmetry:
    """
    Classify a wavelet as symmetric or anti-symmetric about 0.

    Raises:
        WaveletError: support is not centred on 0, or neither relation holds
    """
    if not np.isclose(spec.lower_bound, -spec.upper_bound):
        raise WaveletError(f"{spec.name}: support is not symmetric about 0")
    n_points = 2 ** TABLE_EXPONENT
    x = spec.grid(n_points)
    scale = spec.norm_factor(n_points)
    forward = spec.closed_form(x) * scale
    mirrored = spec.closed_form(-x) * scale
    tolerance = SYMMETRY_TOLERANCE * max(np.max(np.abs(forward)), 1e-300)
    if np.max(np.abs(forward - mirrored)) <= tolerance:
        return Symmetry.SYMMETRIC
    if np.max(np.abs(forward + mirrored)) <= tolerance:
        return Symmetry.ANTI_SYMMETRIC
    raise WaveletError(f"{spec.name} is neither symmetric nor anti-symmetric")


def wavelet_attributes(specs: Iterable[WaveletSpec]) -> pd.DataFrame:
    """Attribute table: family, symmetry, center frequency, bounds, zero-mean defect."""
    rows = []
    for spec in specs:
        rows.append({
            "family": spec.family,
            "wavelet": spec.name,
            "symmetry": symmetry_check(spec).value,
            "center_frequency_hz": center_frequency(spec),
            "lower_bound": spec.lower_bound,
            "upper_bound": spec.upper_bound,
            "zero_mean_defect": zero_mean_defect(spec),
        })
    return pd.DataFrame(rows)
