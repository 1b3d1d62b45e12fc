"""
Scalogram datasets, train/test splitting and a nearest-centroid classifier.

Features are flattened scalogram pixels scaled to [0, 1]. The classifier
assigns the class whose training centroid is nearest in Euclidean distance;
ties go to the lexicographically first label.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, cpu_count, delayed
from sklearn.neighbors import NearestCentroid

from configs.config import CLASSIFICATION
from src.data.trace import LabeledWindow, stack_windows
from src.exceptions import DatasetError
from src.imaging.colormaps import Colormap, get_colormap
from src.imaging.scalogram import render_scalogram
from src.logging import get_logger
from src.transforms.cwt import ScaleSet, cwt_batch
from src.transforms.wavelets import WaveletSpec

logger = get_logger(__name__)

LABEL_MODES = ("mnemonic", "cycle")


@dataclass(frozen=True)
class Dataset:
    """
    Feature vectors and their string labels.

    Attributes:
        features: Array (n_items, n_features), values in [0, 1]
        labels: One class label per row
    """
    features: np.ndarray
    labels: Tuple[str, ...]

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = tuple(str(label) for label in self.labels)
        if features.ndim != 2:
            raise DatasetError(f"features must be 2-D (items, features), got {features.shape}")
        if features.shape[0] != len(labels):
            raise DatasetError(f"{features.shape[0]} feature rows but {len(labels)} labels")
        if features.shape[0] == 0:
            raise DatasetError("dataset is empty")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    @property
    def class_set(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    def class_counts(self) -> dict:
        counts: dict = {}
        for label in self.labels:
            counts[label] = counts.get(label, 0) + 1
        return dict(sorted(counts.items()))

    def subset(self, indices: Sequence[int]) -> "Dataset":
        indices = np.asarray(indices, dtype=int)
        return Dataset(self.features[indices], tuple(self.labels[i] for i in indices))


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split settings."""
    train_fraction: float = CLASSIFICATION["train_fraction"]
    seed: int = 0
    stratified: bool = CLASSIFICATION["stratified"]

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise DatasetError(f"train_fraction must be in (0, 1), got {self.train_fraction}")

    def n_train(self, count: int) -> int:
        """floor(train_fraction * count), keeping at least one item on each side."""
        return min(max(int(np.floor(self.train_fraction * count + 1e-9)), 1), count - 1)


@dataclass(frozen=True)
class CentroidModel:
    """Per-class mean feature vectors (rows of ``centroids`` follow ``classes``)."""
    classes: Tuple[str, ...]
    centroids: np.ndarray
    estimator: NearestCentroid

    @property
    def n_features(self) -> int:
        return int(self.centroids.shape[1])


def select_windows(
    windows: Iterable[LabeledWindow],
    exclude: Sequence[str] = CLASSIFICATION["exclude"],
) -> List[LabeledWindow]:
    """Drop windows whose mnemonic is in ``exclude``."""
    excluded = set(exclude or ())
    return [w for w in windows if w.label.mnemonic not in excluded]


def window_labels(windows: Sequence[LabeledWindow], label_mode: str) -> Tuple[str, ...]:
    if label_mode not in LABEL_MODES:
        raise DatasetError(f"Unknown label mode: {label_mode} (expected one of {LABEL_MODES})")
    return tuple(w.label.key(label_mode) for w in windows)


def cwt_windows(
    stacked: np.ndarray,
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, str, Iterable[float]],
    path: str = "fast",
    n_jobs: int = 1,
) -> np.ndarray:
    """``cwt_batch`` over row chunks of ``stacked``, one chunk per joblib worker."""
    n_chunks = 1 if n_jobs == 1 else min(len(stacked), cpu_count() if n_jobs < 0 else n_jobs)
    parts = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(cwt_batch)(chunk, wavelet, scales, path)
        for chunk in np.array_split(stacked, n_chunks)
    )
    return np.concatenate(parts, axis=0)


def build_dataset_from_coefficients(
    coefficients: np.ndarray,
    labels: Sequence[str],
    cmap: Union[Colormap, str] = "grayscale",
    normalize_mode: str = "per_window",
    bounds: Optional[Tuple[float, float]] = None,
    use_abs: bool = False,
    resize_to: Optional[Tuple[int, int]] = None,
) -> Dataset:
    """
    Render precomputed CWT coefficients into a Dataset.

    Args:
        coefficients: Array (n_windows, n_scales, n_samples)
        labels: One label per window
        cmap: Colormap (name or object)
        normalize_mode: ``per_window`` or ``global``; global without bounds
            uses the min/max over all windows
        bounds: Explicit global bounds
        use_abs: Take |C| before normalising
        resize_to: (width, height) classifier input size, or None
    """
    coefficients = np.asarray(coefficients, dtype=np.float64)
    if coefficients.ndim != 3 or coefficients.shape[0] == 0:
        raise DatasetError(
            f"coefficients must be (windows, scales, samples), got {coefficients.shape}"
        )
    if isinstance(cmap, str):
        cmap = get_colormap(cmap)
    if normalize_mode.replace("-", "_") == "global" and bounds is None:
        values = np.abs(coefficients) if use_abs else coefficients
        bounds = (float(values.min()), float(values.max()))
        if bounds[0] == bounds[1]:
            bounds = (bounds[0] - 0.5, bounds[1] + 0.5)
    features = np.stack([
        render_scalogram(c, cmap, normalize_mode, bounds, use_abs, resize_to).features()
        for c in coefficients
    ])
    return Dataset(features, tuple(labels))


def build_dataset(
    windows: Sequence[LabeledWindow],
    wavelet: WaveletSpec,
    scales: Union[ScaleSet, str, Iterable[float]],
    cmap: Union[Colormap, str] = "grayscale",
    normalize_mode: str = "per_window",
    resize_to: Optional[Tuple[int, int]] = CLASSIFICATION["resize"],
    label_mode: str = CLASSIFICATION["label_mode"],
    exclude: Sequence[str] = CLASSIFICATION["exclude"],
    use_abs: bool = False,
    bounds: Optional[Tuple[float, float]] = None,
    path: str = "fast",
    n_jobs: int = 1,
) -> Dataset:
    """
    Labeled windows -> CWT -> normalise -> colormap -> resize -> flatten.

    Returns:
        Dataset with one feature vector per kept window, in input order
    """
    kept = select_windows(windows, exclude)
    if not kept:
        raise DatasetError("no windows to build a dataset from")
    labels = window_labels(kept, label_mode)
    coefficients = cwt_windows(stack_windows(kept), wavelet, scales, path, n_jobs)
    dataset = build_dataset_from_coefficients(
        coefficients, labels, cmap, normalize_mode, bounds, use_abs, resize_to
    )
    logger.info(
        f"Built dataset of {len(dataset)} items x {dataset.n_features} features "
        f"({wavelet.name}, {len(dataset.class_set)} classes)"
    )
    return dataset


def split(ds: Dataset, spec: SplitSpec) -> Tuple[Dataset, Dataset]:
    """
    Split a dataset into (train, test).

    Stratified splits send n_train(count) items of every class to train;
    otherwise the whole dataset is shuffled and cut once. Row order inside
    each part follows the original dataset.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.stratified:
        train_idx: List[int] = []
        labels = np.array(ds.labels)
        for label in ds.class_set:
            members = np.flatnonzero(labels == label)
            if members.size < 2:
                raise DatasetError(
                    f"class {label!r} has {members.size} item; stratified split needs >= 2"
                )
            shuffled = rng.permutation(members)
            train_idx.extend(shuffled[:spec.n_train(members.size)].tolist())
    else:
        if len(ds) < 2:
            raise DatasetError("dataset needs >= 2 items to split")
        shuffled = rng.permutation(len(ds))
        train_idx = shuffled[:spec.n_train(len(ds))].tolist()
    train_mask = np.zeros(len(ds), dtype=bool)
    train_mask[train_idx] = True
    return ds.subset(np.flatnonzero(train_mask)), ds.subset(np.flatnonzero(~train_mask))


def train_centroid(train: Dataset) -> CentroidModel:
    """Fit one centroid per class present in ``train``."""
    if len(train.class_set) < 2:
        raise DatasetError(f"training set covers {len(train.class_set)} class; need >= 2")
    estimator = NearestCentroid()
    estimator.fit(train.features, np.array(train.labels))
    classes = tuple(str(c) for c in estimator.classes_)
    return CentroidModel(classes, np.asarray(estimator.centroids_), estimator)


def _check_features(model: CentroidModel, features: np.ndarray) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    if features.ndim == 1:
        features = features[np.newaxis, :]
    if features.shape[1] != model.n_features:
        raise DatasetError(
            f"feature length {features.shape[1]} does not match the model's {model.n_features}"
        )
    return features


def predict(model: CentroidModel, features: np.ndarray) -> Union[str, np.ndarray]:
    """Label of the nearest centroid for one vector, or an array of labels for a matrix."""
    single = np.asarray(features).ndim == 1
    labels = model.estimator.predict(_check_features(model, features))
    return str(labels[0]) if single else labels.astype(str)


def accuracy(model: CentroidModel, test: Dataset) -> float:
    """Fraction of ``test`` items predicted correctly."""
    predicted = predict(model, test.features)
    return float(np.mean(predicted == np.array(test.labels)))
