"""Synthetic M-QAM signals and the noisy transmission channel.

The channel model applies, per sample, a random phase rotation, a fixed
rotation offset, and circular additive Gaussian noise:

    received = exp(1j * (phi_b + Phi)) * sent + N

with Phi ~ Normal(0, sigma_phi^2) and N complex Gaussian with standard
deviation sigma_n on each of the I and Q components. Amplitude damping is
not modelled.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .seeding import derive_seed


class IQPoint(NamedTuple):
    """One complex baseband sample as an (in-phase, quadrature) pair."""

    i: float
    q: float


def as_complex(points) -> np.ndarray:
    """Coerce a point collection to a 1-D complex128 array.

    Accepts complex arrays, sequences of complex scalars, sequences of
    (i, q) pairs, and (n, 2) float arrays.
    """
    arr = np.asarray(points)
    if arr.size == 0:
        return np.zeros(0, dtype=np.complex128)
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128).ravel()
    arr = np.asarray(arr, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 2:
        return arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim == 1 and arr.shape[0] == 2:
        return np.array([arr[0] + 1j * arr[1]])
    return arr.astype(np.complex128).ravel()


@dataclass(frozen=True)
class ConstellationSpec:
    """Square M-QAM alphabet on a centered grid, labelled in row-major order."""

    order: int
    spacing: float

    def __post_init__(self) -> None:
        side = math.isqrt(self.order)
        if self.order < 4 or side * side != self.order:
            raise ValueError(
                f"invalid order {self.order}: must be a perfect square >= 4"
            )
        if not self.spacing > 0:
            raise ValueError("spacing must be positive")

    @property
    def side(self) -> int:
        return math.isqrt(self.order)

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.order)

    def ideal_points(self) -> np.ndarray:
        """Noiseless symbol positions, index = row * side + column."""
        idx = np.arange(self.order)
        half = (self.side - 1) / 2
        cols = idx % self.side
        rows = idx // self.side
        return (cols - half) * self.spacing + 1j * (rows - half) * self.spacing


def ideal_constellation(order: int, spacing: float | None = None) -> ConstellationSpec:
    """Build an M-QAM alphabet; the default spacing puts the corners at radius 1."""
    side = math.isqrt(order) if order >= 1 else 0
    if order < 4 or side * side != order:
        raise ValueError(f"invalid order {order}: must be a perfect square >= 4")
    if spacing is None:
        spacing = math.sqrt(2.0) / (side - 1)
    return ConstellationSpec(order=order, spacing=spacing)


@dataclass(frozen=True)
class ChannelParams:
    """Noise scales of the transmission model; fully determines the channel.

    sigma_phi and sigma_n are standard deviations (sigma_n per real
    component). phi_b is a fixed rotation of the whole constellation.
    """

    sigma_phi: float = 0.0
    sigma_n: float = 0.0
    phi_b: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.sigma_phi < 0 or self.sigma_n < 0:
            raise ValueError("noise scales must be non-negative")


@dataclass(frozen=True)
class Synthetic:
    """Provenance of a dataset produced by the channel model."""

    params: ChannelParams


@dataclass(frozen=True)
class Ingested:
    """Provenance of a dataset read from a file."""

    path: str


@dataclass
class LabeledDataset:
    """IQ samples with ground-truth symbol indices and their alphabet."""

    points: np.ndarray
    labels: np.ndarray
    constellation: ConstellationSpec
    provenance: Synthetic | Ingested

    def __post_init__(self) -> None:
        self.points = as_complex(self.points)
        self.labels = np.asarray(self.labels, dtype=int)
        if len(self.points) != len(self.labels):
            raise ValueError("points and labels must have the same length")
        if len(self.labels) and (
            self.labels.min() < 0 or self.labels.max() >= self.constellation.order
        ):
            raise ValueError("label out of range for the constellation order")

    def __len__(self) -> int:
        return len(self.points)


def apply_channel(clean, params: ChannelParams) -> np.ndarray:
    """Push samples through the noisy channel; deterministic given params.seed.

    Each sample gets its own RNG stream derived from (seed, sample index),
    so generation order (or parallelisation over samples) cannot change
    the output.
    """
    sent = as_complex(clean)
    if not np.all(np.isfinite(sent)):
        raise ValueError("channel input must be finite")
    n = len(sent)
    phases = np.empty(n)
    noise = np.empty(n, dtype=np.complex128)
    for k in range(n):
        rng = np.random.default_rng(derive_seed(params.seed, k))
        phases[k] = rng.normal(0.0, params.sigma_phi)
        re, im = rng.normal(0.0, params.sigma_n, 2)
        noise[k] = complex(re, im)
    return np.exp(1j * (params.phi_b + phases)) * sent + noise


def generate_dataset(
    spec: ConstellationSpec, per_symbol: int, params: ChannelParams
) -> LabeledDataset:
    """Generate per_symbol noisy copies of every alphabet symbol."""
    if per_symbol < 1:
        raise ValueError("per_symbol must be >= 1")
    clean = np.repeat(spec.ideal_points(), per_symbol)
    labels = np.repeat(np.arange(spec.order), per_symbol)
    return LabeledDataset(
        points=apply_channel(clean, params),
        labels=labels,
        constellation=spec,
        provenance=Synthetic(params),
    )


NORMALIZE_DIRECTIVE = "# normalize=max_radius"


def save_dataset(dataset: LabeledDataset, path: str | Path) -> None:
    """Write a dataset as CSV with header ``i,q,label``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "q", "label"])
        for p, lab in zip(dataset.points, dataset.labels):
            writer.writerow([repr(float(p.real)), repr(float(p.imag)), int(lab)])


def ingest_dataset(path: str | Path, spec: ConstellationSpec) -> LabeledDataset:
    """Read a CSV dataset (``i,q,label`` header, one sample per row).

    A leading comment line ``# normalize=max_radius`` requests rescaling of
    all samples by the dataset's maximum radius at ingestion time.
    """
    path = Path(path)
    points: list[complex] = []
    labels: list[int] = []
    normalize = False
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            first = row[0].strip()
            if first.startswith("#"):
                if ",".join(cell.strip() for cell in row) == NORMALIZE_DIRECTIVE:
                    normalize = True
                continue
            if first.lower() == "i":
                continue
            if len(row) != 3:
                raise ValueError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
            try:
                i_val = float(row[0])
                q_val = float(row[1])
                label = int(row[2])
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: malformed row: {exc}") from None
            if not (math.isfinite(i_val) and math.isfinite(q_val)):
                raise ValueError(f"{path}: line {lineno}: non-finite sample")
            if label < 0 or label >= spec.order:
                raise ValueError(
                    f"{path}: line {lineno}: label {label} out of range for order {spec.order}"
                )
            points.append(complex(i_val, q_val))
            labels.append(label)
    if not points:
        raise ValueError(f"{path}: empty dataset")
    arr = np.array(points, dtype=np.complex128)
    if normalize:
        r_max = float(np.abs(arr).max())
        if r_max > 0:
            arr = arr / r_max
    return LabeledDataset(
        points=arr,
        labels=np.array(labels),
        constellation=spec,
        provenance=Ingested(str(path)),
    )


def dbm_to_watts(p_dbm: float) -> float:
    """Convert a launch power from dBm to Watts."""
    if not math.isfinite(p_dbm):
        raise ValueError("power must be finite")
    return 10.0 ** ((p_dbm - 30.0) / 10.0)
