"""Pluggable point dissimilarities: Euclidean baseline and the swap-test loss.

The quantum variants embed both points on single qubits and use the
swap-test ancilla-1 probability as the dissimilarity. It is a trigonometric
loss, not a calibrated approximation of Euclidean distance; nearest-centroid
assignment only needs the ordering it induces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .embedding import (
    EmbeddingKind,
    amplitudes,
    embed,
    embed_batch,
    prepare_state,
)
from .signals import as_complex
from .swaptest import ShotPolicy, swap_test_exact, swap_test_sampled


@dataclass(frozen=True)
class Euclidean:
    """Plain Euclidean distance in the IQ plane."""


@dataclass(frozen=True)
class QuantumAnalytic:
    """Exact swap-test ancilla-1 probability between embedded points."""

    kind: EmbeddingKind


@dataclass(frozen=True)
class QuantumSampled:
    """Shot-estimated swap-test ancilla-1 probability."""

    kind: EmbeddingKind
    policy: ShotPolicy

    def __post_init__(self) -> None:
        if self.policy.analytic:
            raise ValueError("QuantumSampled requires a sampled ShotPolicy")


DistanceMetric = Euclidean | QuantumAnalytic | QuantumSampled


def _xy(p) -> tuple[float, float]:
    if isinstance(p, (complex, np.complexfloating)):
        return float(p.real), float(p.imag)
    x, y = p
    return float(x), float(y)


def dissimilarity(a, b, metric: DistanceMetric) -> float:
    """Dissimilarity between two plane points under the chosen metric."""
    ax, ay = _xy(a)
    bx, by = _xy(b)
    if isinstance(metric, Euclidean):
        return math.hypot(ax - bx, ay - by)
    psi = prepare_state(embed((ax, ay), metric.kind))
    phi = prepare_state(embed((bx, by), metric.kind))
    if isinstance(metric, QuantumAnalytic):
        return swap_test_exact(psi, phi)
    return swap_test_sampled(psi, phi, metric.policy).p1_estimate


def dlf_origin_closed_form(x_bar: float, y_bar: float) -> float:
    """Closed-form loss against the origin for rescaled coordinates in [-1, 1]^2."""
    if abs(x_bar) > 1.0 or abs(y_bar) > 1.0:
        raise ValueError("coordinates must lie in [-1, 1]")
    return 0.25 * (
        1.0 - math.cos(math.pi / 2 * x_bar) * math.cos(math.pi / 2 * y_bar)
    )


def pairwise_dissimilarity(
    points,
    refs,
    metric: DistanceMetric,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Dense (n_points, n_refs) dissimilarity matrix.

    For the sampled variant, shot counts for the whole matrix are drawn in
    one vectorized pass from ``rng`` (or a generator seeded from the
    metric's policy), which keeps results independent of evaluation order.
    """
    pts = as_complex(points)
    ref = as_complex(refs)
    if isinstance(metric, Euclidean):
        diff = pts[:, None] - ref[None, :]
        # np.hypot matches the scalar path (libm hypot) bit-for-bit
        return np.hypot(diff.real, diff.imag)
    th_p, ga_p = embed_batch(pts, metric.kind)
    th_r, ga_r = embed_batch(ref, metric.kind)
    psi = amplitudes(th_p, ga_p)
    phi = amplitudes(th_r, ga_r)
    ov = psi @ phi.conj().T
    p1 = np.maximum(0.0, (1.0 - np.abs(ov) ** 2) / 2.0)
    if isinstance(metric, QuantumAnalytic):
        return p1
    if rng is None:
        rng = np.random.default_rng(metric.policy.seed)
    return rng.binomial(metric.policy.shots, p1) / metric.policy.shots
