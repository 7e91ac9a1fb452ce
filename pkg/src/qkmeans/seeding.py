"""Deterministic derivation of independent RNG sub-seeds from structured keys.

Every stochastic component takes one master seed and derives per-point,
per-iteration, or per-cell sub-seeds from it, so results do not depend on
execution order or worker count.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Hash an integer key path into a stable 64-bit seed."""
    entropy = [int(p) & _MASK64 for p in parts]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])
