"""Angle embeddings from the IQ plane onto a single qubit.

Two variants: the standard angle embedding keeps only the direction of a
point (points on a radial line collide), while the rescaled variant divides
coordinates by a dataset-wide radius r_max and is injective on the disk of
that radius.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .signals import as_complex


@dataclass(frozen=True)
class StandardAngle:
    """Direction-only embedding; undefined at the origin."""


@dataclass(frozen=True)
class RescaledAngle:
    """Injective embedding with coordinates rescaled by r_max."""

    r_max: float = 1.0

    def __post_init__(self) -> None:
        if not self.r_max > 0:
            raise ValueError("r_max must be positive")


EmbeddingKind = StandardAngle | RescaledAngle


@dataclass(frozen=True)
class EmbeddedPoint:
    """Rotation-angle pair produced by an embedding, both in [0, pi]."""

    theta: float
    gamma: float
    kind: EmbeddingKind


@dataclass(frozen=True)
class QubitState:
    """Two complex amplitudes with unit norm."""

    a0: complex
    a1: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=np.complex128)

    def norm_sq(self) -> float:
        return abs(self.a0) ** 2 + abs(self.a1) ** 2


def _xy(p) -> tuple[float, float]:
    if isinstance(p, complex):
        return p.real, p.imag
    if isinstance(p, (int, float)):
        return float(p), 0.0
    if isinstance(p, np.complexfloating):
        return float(p.real), float(p.imag)
    x, y = p
    return float(x), float(y)


def embed(p, kind: EmbeddingKind) -> EmbeddedPoint:
    """Map a plane point to its preparation angles (theta, gamma).

    Both normalized coordinates are shifted from [-1, 1] into [0, pi]. The
    rescaled variant accepts any point whose coordinates are within
    +-r_max componentwise, which covers the full disk of radius r_max.
    """
    x, y = _xy(p)
    if isinstance(kind, StandardAngle):
        r = math.hypot(x, y)
        if r == 0.0:
            raise ValueError("standard angle embedding is undefined at the origin")
        xb, yb = x / r, y / r
    else:
        if max(abs(x), abs(y)) > kind.r_max:
            raise ValueError(
                f"point ({x}, {y}) outside the rescaled embedding domain "
                f"(coordinates must be within +-{kind.r_max})"
            )
        xb, yb = x / kind.r_max, y / kind.r_max
    return EmbeddedPoint(
        theta=math.pi / 2 * (xb + 1.0),
        gamma=math.pi / 2 * (yb + 1.0),
        kind=kind,
    )


def prepare_state(e: EmbeddedPoint) -> QubitState:
    """Apply the preparation unitary to |0>: (cos(theta/2), e^{i gamma} sin(theta/2))."""
    half = e.theta / 2.0
    return QubitState(
        a0=complex(math.cos(half)),
        a1=cmath.exp(1j * e.gamma) * math.sin(half),
    )


def dataset_rmax(points) -> float:
    """Maximum Euclidean norm over a non-empty point collection."""
    arr = as_complex(points)
    if len(arr) == 0:
        raise ValueError("r_max of an empty point set is undefined")
    return float(np.abs(arr).max())


def embed_batch(points: np.ndarray, kind: EmbeddingKind) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized embed over a complex array; returns (thetas, gammas)."""
    arr = as_complex(points)
    if isinstance(kind, StandardAngle):
        radii = np.abs(arr)
        if np.any(radii == 0.0):
            raise ValueError("standard angle embedding is undefined at the origin")
        xb, yb = arr.real / radii, arr.imag / radii
    else:
        if np.any(np.maximum(np.abs(arr.real), np.abs(arr.imag)) > kind.r_max):
            raise ValueError(
                f"point outside the rescaled embedding domain (+-{kind.r_max})"
            )
        xb, yb = arr.real / kind.r_max, arr.imag / kind.r_max
    return np.pi / 2 * (xb + 1.0), np.pi / 2 * (yb + 1.0)


def amplitudes(thetas: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """Stack prepared-state amplitudes as an (n, 2) complex array."""
    half = thetas / 2.0
    return np.stack([np.cos(half) + 0j, np.exp(1j * gammas) * np.sin(half)], axis=1)
