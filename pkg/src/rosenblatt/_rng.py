"""Deterministic random-stream derivation.

All stochastic routines derive their generators from an integer seed plus a
fixed integer path (component index, block index, replicate index, ...).
A value therefore depends only on the seed and its own position, never on
how much work other threads have done, which makes every simulation
reproducible for any worker count.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the stream addressed by ``(seed, *path)``."""
    entropy = [int(seed) & _MASK64] + [int(p) & _MASK64 for p in path]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse ``(seed, *path)`` into a fresh 64-bit integer seed."""
    entropy = [int(seed) & _MASK64] + [int(p) & _MASK64 for p in path]
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])
