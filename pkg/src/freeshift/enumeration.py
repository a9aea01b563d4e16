"""Exhaustive enumeration of configurations avoiding a list of patterns.

Configurations on cells ``0..n-1`` are encoded as integers
``code = Σ x_i k^i``. The enumeration grows valid prefixes one cell at a time
and discards a prefix as soon as a constraint whose last cell has just been
filled in occurs, so the work is proportional to the number of valid
prefixes rather than to ``k^n``.
"""
from __future__ import annotations

import numpy as np

from .errors import ScaleExceeded

MAX_LIVE = 1 << 24


def digit(codes, cell, k):
    return (codes // (k ** cell)) % k


def avoiding_codes(n_cells, k, constraints, limit=MAX_LIVE):
    """Sorted codes of all configurations in which no constraint occurs.

    ``constraints`` is a sequence of ``(cells, values)`` pairs. Raises
    :class:`ScaleExceeded` if more than ``limit`` prefixes are ever alive.
    """
    if k ** n_cells >= 2 ** 62:
        raise ScaleExceeded("configuration codes would overflow int64")
    by_last = [[] for _ in range(n_cells)]
    for cells, values in constraints:
        if not cells:
            continue
        order = np.argsort(cells)
        cells = np.asarray(cells)[order]
        values = np.asarray(values)[order]
        by_last[int(cells[-1])].append((cells, values))
    codes = np.zeros(1, dtype=np.int64)
    for d in range(n_cells):
        step = np.int64(k ** d)
        codes = (codes[None, :] + step * np.arange(k, dtype=np.int64)[:, None]).ravel()
        if by_last[d]:
            keep = np.ones(codes.shape, dtype=bool)
            for cells, values in by_last[d]:
                hit = np.ones(codes.shape, dtype=bool)
                for c, v in zip(cells, values):
                    hit &= digit(codes, int(c), k) == v
                keep &= ~hit
            codes = codes[keep]
        if codes.size > limit:
            raise ScaleExceeded(f"more than {limit} live configurations")
    return np.sort(codes)


def decode(code, n_cells, k):
    out = []
    for _ in range(n_cells):
        out.append(int(code % k))
        code //= k
    return tuple(out)


def project(codes, cells, k):
    """Codes of the restrictions to ``cells`` (listed in the given order)."""
    out = np.zeros(codes.shape, dtype=np.int64)
    for j, c in enumerate(cells):
        out += digit(codes, c, k) * np.int64(k ** j)
    return np.unique(out)
