"""Splittable 64-bit seeding.

Every random stream in the toolkit is derived from a root seed through
`split64`, a SplitMix64-based hash over integer key paths. Derived seeds are
pure functions of their arguments, so episode generation, batch sampling and
evaluation cells stay deterministic under any execution order or sharding.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One SplitMix64 output step (finalizer included)."""
    x = (x + _GOLDEN) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def split64(root: int, *keys: int) -> int:
    """Derive a child seed from `root` and an integer key path.

    Deterministic, order-sensitive in the keys, and well mixed: adjacent
    roots or keys give unrelated outputs.
    """
    h = root & _MASK
    for k in keys:
        h = splitmix64(h ^ ((k & _MASK) * _GOLDEN & _MASK))
        h = splitmix64(h)
    return h


def rng_from_seed(seed: int) -> np.random.Generator:
    """PCG64 generator seeded with a 64-bit value."""
    return np.random.Generator(np.random.PCG64(seed & _MASK))


def torch_seed(seed: int) -> int:
    """Clamp a u64 seed into the signed range torch generators accept."""
    return (seed & _MASK) % ((1 << 63) - 1)
