"""Deterministic sub-seeds: trial inputs depend only on (seed, keys)."""
import numpy as np

__all__ = ["sub_seed", "rng_for"]


def sub_seed(seed, *keys):
    """A 64-bit seed derived from ``seed`` and integer ``keys`` via SeedSequence."""
    entropy = [int(seed)] + [int(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def rng_for(seed):
    """PCG64 generator for a (sub-)seed."""
    return np.random.default_rng(int(seed))
