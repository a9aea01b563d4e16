"""Moser–Tardos resampling on window instances, plus exact counting oracles.

The sampler draws every cell independently and uniformly, then repeatedly
picks the violated event of lowest index and redraws the cells it depends
on. Draws come from :func:`freeshift.rng.cell_symbol`, so the output is a
function of ``(instance, seed)`` alone; the optional thread pool only splits
the violation scans.

Besides the pattern constraints of a :class:`~freeshift.lll.WindowInstance`,
the sampler accepts extra events through ``inst.extra_events``: any object
with a ``cells`` tuple and an ``occurs(values)`` method (the product
families of :mod:`freeshift.constructor` provide these).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import heapq
import math

import numpy as np

from .covers import CylinderFamily
from .enumeration import avoiding_codes, project
from .errors import (NonAmenableGroup, ResampleBudgetExhausted, ScaleExceeded,
                     WindowMismatch)
from .lll import WindowInstance, brute_force_count  # noqa: F401  (re-export)
from .patterns import Window, WindowConfiguration
from .rng import cell_symbol, check_seed

RULES = ("lowest-index",)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    max_resamples: int = 1_000_000
    resample_rule: str = "lowest-index"

    def __post_init__(self):
        check_seed(self.seed)
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be at least 1")
        if self.resample_rule not in RULES:
            raise ValueError(f"unknown resample rule {self.resample_rule!r}")


class PatternEvent:
    __slots__ = ("cells", "values")

    def __init__(self, cells, values):
        self.cells = tuple(cells)
        self.values = tuple(values)

    def occurs(self, x):
        return all(x[c] == v for c, v in zip(self.cells, self.values))


def events_of(inst):
    events = [PatternEvent(c, v) for c, v in inst.constraints]
    events.extend(getattr(inst, "extra_events", ()))
    return events


@dataclass
class SampleStats:
    resamples: int
    per_event: np.ndarray = field(repr=False)


def _scan(events, idx, x, threads):
    if threads <= 1 or len(idx) < 64:
        return [i for i in idx if events[i].occurs(x)]
    chunks = np.array_split(np.asarray(idx), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda ch: [int(i) for i in ch if events[i].occurs(x)], chunks)
        return [i for part in parts for i in part]


def sample_with_stats(inst, cfg=SamplerConfig(), threads=1):
    """Run the resampling algorithm; return the configuration and counters."""
    seed, k, n = cfg.seed, inst.k, inst.n_cells
    events = events_of(inst)
    incidence = [[] for _ in range(n)]
    for i, e in enumerate(events):
        for c in e.cells:
            incidence[c].append(i)
    epoch = [0] * n
    x = [cell_symbol(seed, c, 0, k) for c in range(n)]
    bad = np.zeros(len(events), dtype=bool)
    heap = _scan(events, range(len(events)), x, threads)
    bad[heap] = True
    heapq.heapify(heap)
    per_event = np.zeros(len(events), dtype=np.int64)
    resamples = 0
    while heap:
        i = heapq.heappop(heap)
        if not bad[i]:
            continue
        if resamples >= cfg.max_resamples:
            raise ResampleBudgetExhausted(
                f"still violated after {resamples} resamples", resamples)
        for c in events[i].cells:
            epoch[c] += 1
            x[c] = cell_symbol(seed, c, epoch[c], k)
        resamples += 1
        per_event[i] += 1
        touched = sorted({j for c in events[i].cells for j in incidence[c]})
        now_bad = set(_scan(events, touched, x, threads))
        for j in touched:
            if j in now_bad:
                if not bad[j]:
                    bad[j] = True
                    heapq.heappush(heap, j)
            else:
                bad[j] = False
        if bad[i]:
            heapq.heappush(heap, i)
    config = WindowConfiguration(inst.window, tuple(x), k)
    return config, SampleStats(resamples, per_event)


def sample(inst, cfg=SamplerConfig(), threads=1):
    """A configuration on the instance window in which no event occurs."""
    return sample_with_stats(inst, cfg, threads)[0]


def verify_avoidance(x, inst):
    """True iff no constraint (or extra event) of ``inst`` occurs in ``x``."""
    if x.window != inst.window:
        raise WindowMismatch("configuration and instance use different windows")
    return not any(e.occurs(x.values) for e in events_of(inst))


def max_diameter(family):
    """Largest l-infinity diameter of a member support (``Z^d`` only)."""
    best = 0
    for p in family:
        pts = np.array(p.support)
        best = max(best, int((pts.max(axis=0) - pts.min(axis=0)).max()))
    return best


def padded_restriction_codes(base_family, F, window):
    """Codes (base ``k``, digit ``j`` = cell ``F[j]``) of ``Forb_window(Γ·Φ)|_F``."""
    inst = WindowInstance(window, base_family)
    codes = avoiding_codes(inst.n_cells, inst.k, inst.constraints)
    return project(codes, window.cells_of(F), inst.k)


def folner_entropy_estimate(base_family, n, padding=None):
    """``log2 |Forb(Γ·Φ)_{F_n}| / |F_n|`` with ``F_n`` the radius-``n`` box.

    ``Forb(Γ·Φ)_{F_n}`` is approximated from above by restricting the
    configurations of the padded box (radius ``n + padding``) that avoid every
    in-window translate. Padding defaults to the largest pattern diameter.
    Returns ``-inf`` when nothing survives.
    """
    G = base_family.group
    if G.kind != "zd":
        raise NonAmenableGroup(f"{G!r} has no Følner boxes; use a sofic bound instead")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if padding is None:
        padding = max_diameter(base_family)
    F = G.ball(n)
    if base_family.k ** len(F) > 1 << 24:
        raise ScaleExceeded("k^|F_n| exceeds 2^24")
    window = Window.ball(G, n + padding)
    codes = padded_restriction_codes(base_family, F, window)
    if codes.size == 0:
        return -math.inf
    return math.log2(codes.size) / len(F)


def empty_family(group, k):
    return CylinderFamily([], k, group)
