"""Finite pseudo-actions and entropy lower bounds along them.

A pseudo-action of ``Γ`` on a finite set ``V = {0..n-1}`` is stored as one
integer array per element of a ball: ``table[γ][v] = γ·v``. Only elements of
that ball may be queried; anything larger raises :class:`RadiusExceeded`.

Patterns over ``Γ`` are copied onto vertices by ``φ_v(γ·v) = φ(γ)`` for
``S^3``-proper ``v``. The resulting vertex instance is certified with the
canonical witness ``2^(-h|ψ|)`` and its counting bound compared against the
exhaustive count of approximate colorings.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .covers import sigma
from .enumeration import avoiding_codes, digit
from .errors import (RadiusExceeded, ScaleExceeded, ValidationError,
                     WitnessCheckFailed)
from .groups import Group
from .lll import FiniteInstance, canonical_witness, check_correctness, log2_product_bound
from .patterns import Window
from .rng import generator
from .sampler import max_diameter, padded_restriction_codes

MAX_COLORINGS = 1 << 24
CHUNK = 1 << 18


class PseudoAction:
    """``γ ↦ table[γ]`` for every ``γ`` in ``group.ball(radius)``."""

    def __init__(self, group, n_vertices, radius, table):
        if n_vertices < 1:
            raise ValidationError("a pseudo-action needs at least one vertex")
        self.group = group
        self.n_vertices = n_vertices
        self.radius = radius
        self.table = {}
        for g in group.ball(radius):
            if g not in table:
                raise ValidationError(f"table is missing {g!r}")
            arr = np.asarray(table[g], dtype=np.int64)
            if arr.shape != (n_vertices,) or arr.min() < 0 or arr.max() >= n_vertices:
                raise ValidationError(f"table row for {g!r} is not a map V -> V")
            self.table[g] = arr

    def __repr__(self):
        return f"PseudoAction({self.group!r}, |V|={self.n_vertices}, r={self.radius})"

    def require(self, elements):
        missing = [g for g in elements if g not in self.table]
        if missing:
            raise RadiusExceeded(
                f"{missing[0]!r} lies outside the tabulated ball of radius {self.radius}")

    def act(self, g, v):
        self.require([g])
        return int(self.table[g][v])


@dataclass(frozen=True)
class ProperReport:
    F: tuple
    proper: np.ndarray
    n_vertices: int

    @property
    def epsilon_achieved(self):
        return 1.0 - len(self.proper) / self.n_vertices

    def faithful(self, eps):
        return len(self.proper) >= (1.0 - eps) * self.n_vertices

    def record(self):
        return {"n_proper": int(len(self.proper)), "n_vertices": self.n_vertices,
                "epsilon_achieved": self.epsilon_achieved}


def proper_set(alpha, F):
    """Vertices satisfying identity, ``F``-equivariance and ``F``-freeness."""
    G = alpha.group
    F = sorted(set(F), key=G.key)
    G.check(*F)
    alpha.require(F)
    tab = alpha.table
    ok = tab[G.identity] == np.arange(alpha.n_vertices)
    Fset = set(F)
    for a in F:
        for b in F:
            ab = G._mul(a, b)
            if ab in Fset:
                ok &= tab[a][tab[b]] == tab[ab]
    if len(F) > 1:
        images = np.sort(np.stack([tab[g] for g in F]), axis=0)
        ok &= np.all(np.diff(images, axis=0) != 0, axis=0)
    return ProperReport(tuple(F), np.flatnonzero(ok), alpha.n_vertices)


def cyclic_approximation(n, r):
    """``Z`` acting on ``Z/n`` by ``γ·v = v + γ mod n``, tabulated on ``ball(r)``."""
    if n < 1:
        raise ValidationError("n must be positive")
    G = Group.zd(1)
    base = np.arange(n)
    return PseudoAction(G, n, r, {g: (base + g[0]) % n for g in G.ball(r)})


def permutation_approximation(group, v, seed, r=2):
    """Each generator acts by a seeded uniform permutation of ``V``; words compose."""
    if group.kind != "free":
        raise ValidationError("permutation models are built for free groups")
    if v < 1:
        raise ValidationError("v must be positive")
    rng = generator(seed, stream=1)
    perms = {}
    for i in range(1, group.rank + 1):
        p = rng.permutation(v)
        perms[i] = p
        perms[-i] = np.argsort(p)
    table = {group.identity: np.arange(v)}
    for g in group.ball(r)[1:]:
        # (a w)·v = a·(w·v)
        table[g] = perms[g[0]][table[g[1:]]]
    return PseudoAction(group, v, r, table)


@dataclass(frozen=True)
class VertexFamily:
    """Patterns on the vertex set, each as ``(cells, values)`` with sorted cells."""
    n_vertices: int
    k: int
    patterns: tuple
    origins: tuple  # (base pattern index, vertex) that first produced each entry

    def __len__(self):
        return len(self.patterns)

    def instance(self):
        return FiniteInstance(self.n_vertices, self.k, self.patterns)


def transfer_patterns(family, alpha, S):
    """``Φ_α``: every ``φ`` with support in ``S`` copied to each ``S^3``-proper vertex.

    ``S`` is first closed under inverses and made to contain the identity.
    """
    G = alpha.group
    if family.group != G:
        raise ValidationError("family and pseudo-action live in different groups")
    S = G.symmetrize(S)
    S3 = G.powers(S, 3)
    alpha.require(S3)
    proper = proper_set(alpha, S3).proper
    Sset = set(S)
    seen, patterns, origins = set(), [], []
    for b, phi in enumerate(family):
        if not Sset.issuperset(phi.support):
            continue
        rows = [alpha.table[g] for g in phi.support]
        for v in proper.tolist():
            pairs = sorted((int(row[v]), s) for row, s in zip(rows, phi.values))
            key = (tuple(c for c, _ in pairs), tuple(s for _, s in pairs))
            if key in seen:
                continue
            seen.add(key)
            patterns.append(key)
            origins.append((b, v))
    return VertexFamily(alpha.n_vertices, family.k, tuple(patterns), tuple(origins))


@dataclass(frozen=True)
class VertexBound:
    log2_bound: float
    per_vertex: float
    worst_slack: float

    def record(self):
        return {"log2_bound": self.log2_bound, "per_vertex": self.per_vertex,
                "worst_slack": self.worst_slack}


def vertex_lll_count_bound(vertex_family, k, h, base=None):
    """LLL lower bound on ``log2 |Forb(Φ_α)|`` with the canonical witness.

    The witness is checked constraint by constraint on the vertex instance;
    failure raises :class:`WitnessCheckFailed`. If the base family is given,
    ``h + σ_h(base) < log2 k`` is required.
    """
    if k != vertex_family.k:
        raise ValidationError("alphabet does not match the vertex family")
    if base is not None and not h + sigma(base, h) < math.log2(k):
        raise ValidationError("h + σ_h(Φ) must be below log2 k")
    inst = vertex_family.instance()
    omega = canonical_witness(inst, h)
    report = check_correctness(inst, omega)
    if not report.ok:
        raise WitnessCheckFailed(
            f"canonical witness fails on the vertex instance (slack {report.worst_slack:.4g})")
    bound = log2_product_bound(inst, omega)
    return VertexBound(bound, bound / inst.n_cells, report.worst_slack)


@dataclass(frozen=True)
class ColoringReport:
    count: int
    h: float
    forb_count: int
    inclusion: bool
    faithful_S4: bool | None
    n_proper_F: int

    def record(self):
        return {"col_count": self.count, "h_eps_F": self.h, "forb_count": self.forb_count,
                "inclusion": self.inclusion, "faithful_S4": self.faithful_S4,
                "n_proper_F": self.n_proper_F}


def _default_window(family, F):
    """``F`` padded by the largest pattern diameter (``Z^d``) or twice the reach."""
    G = family.group
    if G.kind == "zd":
        pad = max_diameter(family) if len(family) else 0
    else:
        pad = 2 * max((G.length(g) for p in family for g in p.support), default=0)
    return Window.ball(G, max(G.length(f) for f in F) + pad)


def _good_counts(codes, alpha, F, xf_codes, k):
    """Number of vertices ``v`` with ``π_f(v)|_F ∈ X_F`` for each coloring code."""
    good = np.zeros(codes.shape, dtype=np.int64)
    for v in range(alpha.n_vertices):
        key = np.zeros(codes.shape, dtype=np.int64)
        for j, g in enumerate(F):
            key += digit(codes, int(alpha.table[g][v]), k) * np.int64(k ** j)
        good += np.isin(key, xf_codes, assume_unique=False)
    return good


def approx_coloring_count(alpha, family, eps, F, S=None, window=None):
    """Exact ``|Col_{ε,F}|`` over all ``k^|V|`` colorings, with ``h_{ε,F}``.

    ``X_F`` is the padded-window restriction set of ``Forb(Γ·Φ)`` (a superset
    of the true one). The report also counts ``Forb(Φ_α)`` when ``S`` is given
    and records whether every member of it is an approximate coloring.
    """
    G = alpha.group
    k = family.k
    n = alpha.n_vertices
    if not 0 <= eps <= 1:
        raise ValidationError("ε must lie in [0, 1]")
    F = sorted(set(F), key=G.key)
    if not F:
        raise ValidationError("F must be nonempty")
    alpha.require(F)
    if k ** n > MAX_COLORINGS:
        raise ScaleExceeded(f"k^|V| = {k}^{n} exceeds 2^24")
    window = _default_window(family, F) if window is None else window
    xf = padded_restriction_codes(family, F, window)
    need = math.ceil((1.0 - eps) * n - 1e-9)
    count = 0
    for start in range(0, k ** n, CHUNK):
        codes = np.arange(start, min(start + CHUNK, k ** n), dtype=np.int64)
        count += int(np.count_nonzero(_good_counts(codes, alpha, F, xf, k) >= need))
    h = math.log2(count) / n if count else -math.inf
    forb_count, inclusion, faithful = 0, True, None
    if S is not None:
        vf = transfer_patterns(family, alpha, S)
        forb = avoiding_codes(n, k, vf.patterns)
        forb_count = int(forb.size)
        if forb.size:
            inclusion = bool(np.all(_good_counts(forb, alpha, F, xf, k) >= need))
        S4 = G.powers(G.symmetrize(S), 4)
        faithful = proper_set(alpha, S4).faithful(eps)
    return ColoringReport(count, h, forb_count, inclusion, faithful,
                          int(len(proper_set(alpha, F).proper)))
