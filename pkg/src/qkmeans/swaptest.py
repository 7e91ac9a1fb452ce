"""Exact statevector simulation of the three-qubit swap test and shot sampling.

Circuit: Hadamard on the ancilla, controlled-SWAP of the two data qubits,
Hadamard on the ancilla, Z-basis measurement of the ancilla. The ancilla
reads 1 with probability (1 - |<psi|phi>|^2) / 2.

Statevector convention: the ancilla is the most significant qubit, so basis
index = 4*ancilla + 2*q1 + q2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import QubitState
from .seeding import derive_seed

_INV_SQRT2 = 1.0 / np.sqrt(2.0)
_SWAP_PERM = np.array([0, 2, 1, 3])  # |p,q> -> |q,p>

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class ShotPolicy:
    """How ancilla statistics are obtained: exactly, or from a finite shot count."""

    shots: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be >= 1")

    @property
    def analytic(self) -> bool:
        return self.shots is None


@dataclass(frozen=True)
class SwapTestOutcome:
    """Shot-sampled estimate of the ancilla-1 probability."""

    p1_estimate: float
    shots: int
    ones_count: int

    def __post_init__(self) -> None:
        if not 0 <= self.ones_count <= self.shots:
            raise ValueError("ones_count must lie in [0, shots]")
        if self.p1_estimate != self.ones_count / self.shots:
            raise ValueError("p1_estimate must equal ones_count / shots")


def _validated_vector(state: QubitState) -> np.ndarray:
    vec = state.vector
    if abs(state.norm_sq() - 1.0) > _NORM_TOL:
        raise ValueError(f"state is not normalized: |a0|^2 + |a1|^2 = {state.norm_sq()}")
    return vec


def overlap(psi: QubitState, phi: QubitState) -> complex:
    """Inner product <phi|psi> of two qubit states."""
    return complex(np.vdot(phi.vector, psi.vector))


def _joint_register(psi: np.ndarray, phi: np.ndarray) -> np.ndarray:
    # Outer product written out in real arithmetic: every partial product is
    # rounded separately (no fused multiply-add), which keeps the matrix
    # exactly swap-symmetric when psi == phi, so identical inputs cancel to
    # exactly zero in the ancilla-1 block.
    pr, pi_ = psi.real[:, None], psi.imag[:, None]
    qr, qi = phi.real[None, :], phi.imag[None, :]
    return ((pr * qr - pi_ * qi) + 1j * (pr * qi + pi_ * qr)).ravel()


def swap_test_state(psi: QubitState, phi: QubitState) -> np.ndarray:
    """Final 8-amplitude statevector of the swap-test circuit before measurement.

    Gates are applied elementwise rather than through one dense matrix so
    that exact cancellations survive floating-point evaluation.
    """
    joint = _joint_register(_validated_vector(psi), _validated_vector(phi))
    # Hadamard on the |0> ancilla duplicates the joint register.
    top = joint * _INV_SQRT2
    bottom = top[_SWAP_PERM]  # controlled swap acts only on the ancilla-1 block
    return np.concatenate([top + bottom, top - bottom]) * _INV_SQRT2


def ancilla_probabilities(state: np.ndarray) -> tuple[float, float]:
    """Marginal (P0, P1) of the ancilla from an 8-amplitude statevector."""
    probs = np.abs(state) ** 2
    return float(probs[:4].sum()), float(probs[4:].sum())


def swap_test_exact(psi: QubitState, phi: QubitState) -> float:
    """Ancilla-1 probability from full statevector simulation."""
    return ancilla_probabilities(swap_test_state(psi, phi))[1]


def swap_test_sampled(psi: QubitState, phi: QubitState, policy: ShotPolicy) -> SwapTestOutcome:
    """Estimate the ancilla-1 probability from independent Bernoulli shots."""
    if policy.analytic:
        raise ValueError("sampled swap test requires a shot count")
    p1 = swap_test_exact(psi, phi)
    rng = np.random.default_rng(policy.seed)
    ones = int(rng.binomial(policy.shots, p1))
    return SwapTestOutcome(p1_estimate=ones / policy.shots, shots=policy.shots, ones_count=ones)


def estimator_variance(overlap_sq: float, shots: int) -> float:
    """Variance of the shot-mean estimator of the ancilla-1 probability.

    A single shot has variance (1 - overlap_sq^2) / 4; averaging n
    independent shots divides it by n.
    """
    if not 0.0 <= overlap_sq <= 1.0:
        raise ValueError("overlap_sq must lie in [0, 1]")
    if shots < 1:
        raise ValueError("shots must be >= 1")
    return (1.0 - overlap_sq**2) / (4.0 * shots)


def pair_seed(master_seed: int, *indices: int) -> int:
    """Sub-seed for one point-centroid pair (or any indexed sampling site)."""
    return derive_seed(master_seed, *indices)
