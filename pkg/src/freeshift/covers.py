"""Width and breadth functionals of cylinder families.

For a family of cylinders ``U_φ`` with weights ``d(U_φ) = 2^-|φ|``::

    rho_h   = Σ d^h                         width = inf{h : rho_h <= 1}
    sigma_h = Σ log2(d) · log2(1 - d^h)     breadth = sup{h : h + sigma_h < log2 k}

Everything here only looks at the multiset of pattern sizes, exposed by
``size_counts()``, so families too large to list (the product families built
by :mod:`freeshift.constructor`) are handled exactly.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
import math

import numpy as np

from .errors import (DescriptorMismatch, ScaleExceeded, SupportOutsideWindow,
                     ValidationError)
from .patterns import Pattern

LN2 = math.log(2.0)


class CylinderFamily:
    """A finite set of patterns over a common group and alphabet."""

    def __init__(self, members, k, group=None):
        members = list(members)
        if group is None:
            if not members:
                raise ValidationError("an empty family needs an explicit group")
            group = members[0].group
        for m in members:
            if not isinstance(m, Pattern):
                raise ValidationError(f"{m!r} is not a Pattern")
            if m.group != group:
                raise DescriptorMismatch("family members live in different groups")
            if m.k != k:
                raise ValidationError("family members use different alphabets")
        self.group = group
        self.k = k
        self.members = tuple(sorted(set(members), key=Pattern.sort_key))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, p):
        return p in set(self.members)

    def __eq__(self, other):
        return (isinstance(other, CylinderFamily) and self.group == other.group
                and self.k == other.k and self.members == other.members)

    def __hash__(self):
        return hash((self.group, self.k, self.members))

    def __repr__(self):
        return f"CylinderFamily({len(self)} patterns, k={self.k}, {self.group!r})"

    def size_counts(self):
        return Counter(len(m) for m in self.members)

    def union(self, other):
        return CylinderFamily(self.members + tuple(other), self.k, self.group)

    @property
    def max_size(self):
        return max((len(m) for m in self.members), default=0)


def _sizes(family):
    counts = family.size_counts()
    sizes = np.array(sorted(counts), dtype=float)
    mult = np.array([counts[s] for s in sorted(counts)], dtype=float)
    return sizes, mult


def _rho_counts(counts, h):
    return math.fsum(c * 2.0 ** (-h * s) for s, c in counts.items())


def rho(family, h):
    """``Σ 2^(-h|φ|)`` over the family; 0 for the empty family."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    return _rho_counts(family.size_counts(), h)


def sigma_term(size, h):
    """Per-pattern cost ``|φ| · (-log2(1 - 2^(-h|φ|)))``."""
    return -size * math.log1p(-(2.0 ** (-h * size))) / LN2


def sigma(family, h):
    """``σ_h`` of the family; each term is strictly positive for ``h > 0``."""
    if h <= 0:
        raise ValueError("h must be positive")
    counts = family.size_counts()
    return math.fsum(c * sigma_term(s, h) for s, c in counts.items())


def family_width(family, tol=1e-9):
    """Unique ``h`` with ``rho_h = 1`` (or 0 when ``rho_0 <= 1``), by bisection."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _width_of_counts(family.size_counts(), tol)


def _width_of_counts(counts, tol):
    n = sum(counts.values())
    if n <= 1:
        return 0.0
    # every size is >= 1, so rho_h <= n 2^-h and rho_{log2 n} <= 1
    lo, hi = 0.0, math.log2(n)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _rho_counts(counts, mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return hi


def _g_on_grid(family, hs):
    sizes, mult = _sizes(family)
    if sizes.size == 0:
        return hs.copy()
    prod = np.outer(hs, sizes)
    terms = -sizes * np.log1p(-np.exp2(-prod)) / LN2
    return hs + terms @ mult


def breadth_profile(family, grid=4096):
    """Grid ``h_j = j log2(k)/grid`` (j = 1..grid) and ``g(h_j) = h_j + σ_h``."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    top = math.log2(family.k)
    hs = top * np.arange(1, grid + 1) / grid
    return hs, _g_on_grid(family, hs)


def largest_feasible_h(family, grid=4096):
    """Largest grid point with ``h + σ_h < log2 k``, or ``None``."""
    hs, g = breadth_profile(family, grid)
    ok = np.flatnonzero(g < math.log2(family.k))
    return None if ok.size == 0 else float(hs[ok[-1]])


def family_breadth(family, grid=4096, tol=1e-9):
    """``sup{h > 0 : h + σ_h < log2 k}`` by grid scan plus boundary bisection.

    ``h + σ_h`` need not be monotone, so the feasible set is located on a
    uniform grid over ``(0, log2 k]``; the largest feasible grid point is then
    pushed towards the next (infeasible) grid point by bisection. The value
    returned is always feasible. 0 when no grid point is feasible.
    """
    top = math.log2(family.k)
    hs, g = breadth_profile(family, grid)
    ok = np.flatnonzero(g < top)
    if ok.size == 0:
        return 0.0
    j = ok[-1]
    lo = float(hs[j])
    hi = float(hs[j + 1]) if j + 1 < len(hs) else top
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid + sigma(family, mid) < top:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class BreadthCertificate:
    """Witness that ``breadth(family) >= h``: ``slack = log2 k - h - σ_h > 0``."""
    h: float
    family: object
    slack: float
    sigma: float

    def __post_init__(self):
        if not self.slack > 0:
            raise ValidationError(f"nonpositive breadth slack {self.slack!r}")

    @classmethod
    def for_family(cls, family, h, extra_sigma=0.0):
        s = sigma(family, h) + extra_sigma
        return cls(h, family, math.log2(family.k) - h - s, s)

    def record(self):
        return {"h": self.h, "rho": rho(self.family, self.h), "sigma": self.sigma,
                "slack": self.slack}


def _check_in_window(family, window):
    for m in family:
        if not window.contains_all(m.support):
            raise SupportOutsideWindow("family member sticks out of the window")


def is_window_cover(family, configs):
    """Every configuration extends at least one member of the family."""
    configs = list(configs)
    if not configs:
        return True
    window = configs[0].window
    _check_in_window(family, window)
    compiled = [(window.cells_of(m.support), m.values) for m in family]
    for x in configs:
        v = x.values
        if not any(all(v[c] == s for c, s in zip(cells, vals))
                   for cells, vals in compiled):
            return False
    return True


MAX_WIDTH_WINDOW = 6
MAX_WIDTH_K = 3


def window_set_width(configs, max_support, tol=1e-9):
    """Exact minimum width over covers by patterns inside the window.

    Branch and bound: take the first configuration not yet covered and branch
    over every candidate pattern it extends. Minimal covers suffice because
    dropping a member only lowers ``rho``. A partial cover is pruned once
    ``rho_best >= 1``, i.e. once its width can no longer beat the incumbent.
    Restricted to windows of at most 6 cells and ``k <= 3``.
    """
    configs = list(configs)
    if not configs:
        return 0.0
    window, k = configs[0].window, configs[0].k
    if len(window) > MAX_WIDTH_WINDOW or k > MAX_WIDTH_K:
        raise ScaleExceeded("window_set_width is limited to |window| <= 6, k <= 3")
    if max_support < 1:
        raise ValueError("max_support must be positive")
    n = len(window)
    data = sorted({c.values for c in configs})
    supports = [s for r in range(1, min(max_support, n) + 1)
                for s in combinations(range(n), r)]
    # candidate (cells, values) pairs that occur somewhere in the data
    cand_of = []
    for x in data:
        cand_of.append([(s, tuple(x[i] for i in s)) for s in supports])

    def extends(x, cand):
        cells, vals = cand
        return all(x[i] == v for i, v in zip(cells, vals))

    best = [math.inf]

    def width_of(chosen):
        return _width_of_counts(Counter(len(c[0]) for c in chosen), tol)

    def rho_at(chosen, h):
        return math.fsum(2.0 ** (-h * len(c[0])) for c in chosen)

    def search(chosen, uncovered):
        if not uncovered:
            w = width_of(chosen)
            best[0] = min(best[0], w)
            return
        if best[0] < math.inf and rho_at(chosen, best[0]) >= 1.0:
            return
        i = uncovered[0]
        # larger patterns first: they tend to give small widths quickly
        for cand in sorted(cand_of[i], key=lambda c: -len(c[0])):
            if cand in chosen:
                continue
            chosen.append(cand)
            if best[0] == math.inf or rho_at(chosen, best[0]) < 1.0:
                rest = [j for j in uncovered if not extends(data[j], cand)]
                search(chosen, rest)
            chosen.pop()

    search([], list(range(len(data))))
    return best[0]

