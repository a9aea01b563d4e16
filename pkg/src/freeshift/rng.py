"""Counter-based draws for the resampling algorithm.

Every symbol is drawn from numpy's Philox4x64 keyed by the user seed, with
the counter set to ``(cell, epoch, 0, 0)``. A draw therefore depends only on
``(seed, cell, epoch)``, never on how many draws happened before it or on
which thread asked for it.
"""
import numpy as np

SEED_BITS = 64


def check_seed(seed):
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < 2 ** SEED_BITS:
        raise ValueError("seed must be an integer in [0, 2^64)")
    return int(seed)


def cell_symbol(seed, cell, epoch, k):
    """Uniform symbol in ``0..k-1`` for the given cell and resample epoch."""
    bitgen = np.random.Philox(key=seed, counter=[cell, epoch, 0, 0])
    return int(np.random.Generator(bitgen).integers(k))


def generator(seed, stream=0):
    """A full Generator for auxiliary randomness (e.g. random permutations)."""
    return np.random.Generator(np.random.Philox(key=check_seed(seed),
                                                counter=[0, 0, 0, stream]))
