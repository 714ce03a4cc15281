"""Deterministic seed derivation shared by samplers, solvers, and the harness."""

from __future__ import annotations

import numpy as np


def derive_seed(master: int, *path: int) -> int:
    """Mix ``(master, *path)`` into a fresh 64-bit seed.

    Uses numpy's SeedSequence hashing, which is stable across platforms and
    library versions.  Trial ``t`` therefore gets the same seed no matter how
    many other trials run or in which order.
    """
    entropy = (int(master),) + tuple(int(x) for x in path)
    if any(x < 0 for x in entropy):
        raise ValueError("seeds and derivation indices must be non-negative")
    words = np.random.SeedSequence(entropy=entropy).generate_state(2, dtype=np.uint32)
    return (int(words[0]) << 32) | int(words[1])


def generator(seed: int) -> np.random.Generator:
    """A PCG64 generator seeded deterministically from ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))
