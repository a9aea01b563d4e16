"""Finite Lovász Local Lemma instances and their certificates.

An instance is a finite list of forbidden patterns on cells ``0..n-1``. A
witness ``ω`` certifies correctness when for every constraint ``φ``

    k^-|φ|  <=  ω(φ) · Π_{ψ ∈ N(φ)} (1 - ω(ψ))

where ``N(φ)`` are the other constraints whose supports meet ``dom(φ)``.
Then at least ``k^n Π (1 - ω(φ))`` configurations avoid every constraint.
All products are evaluated as log2 sums.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from .enumeration import avoiding_codes
from .errors import (NotCorrectError, ScaleExceeded, UnknownConstraint,
                     ValidationError)
from .patterns import Pattern, Window

# correctness is decided on log2 slacks; this absorbs rounding at exact ties
SLACK_EPS = 1e-12


class FiniteInstance:
    """Forbidden patterns on an abstract finite cell set ``0..n_cells-1``."""

    def __init__(self, n_cells, k, constraints):
        self.n_cells = n_cells
        self.k = k
        seen = {}
        for cells, values in constraints:
            cells, values = tuple(int(c) for c in cells), tuple(int(v) for v in values)
            if len(cells) != len(values) or not cells:
                raise ValidationError("constraint cells and values must match and be nonempty")
            if any(not 0 <= c < n_cells for c in cells) or len(set(cells)) != len(cells):
                raise ValidationError("constraint cell out of range or repeated")
            if any(not 0 <= v < k for v in values):
                raise ValidationError("constraint symbol out of range")
            order = sorted(range(len(cells)), key=cells.__getitem__)
            key = (tuple(cells[i] for i in order), tuple(values[i] for i in order))
            seen.setdefault(key, None)
        self.constraints = list(seen)
        self._incidence = [[] for _ in range(n_cells)]
        for i, (cells, _) in enumerate(self.constraints):
            for c in cells:
                self._incidence[c].append(i)

    def __len__(self):
        return len(self.constraints)

    def sizes(self):
        return np.array([len(c) for c, _ in self.constraints], dtype=float)

    def neighbor_indices(self, i):
        if not 0 <= i < len(self.constraints):
            raise UnknownConstraint(f"no constraint with index {i}")
        return self.neighbor_table[i].tolist()

    @cached_property
    def neighbor_table(self):
        """Per constraint, the sorted indices of its neighbors as an int array."""
        table = []
        for i, (cells, _) in enumerate(self.constraints):
            out = set()
            for c in cells:
                out.update(self._incidence[c])
            out.discard(i)
            table.append(np.array(sorted(out), dtype=np.int64))
        return table

    def constraints_at(self, cell):
        return self._incidence[cell]

    def _resolve(self, c):
        if isinstance(c, (int, np.integer)):
            return int(c)
        raise UnknownConstraint(f"{c!r} is not a constraint of this instance")

    def constraint(self, i):
        return self.constraints[i]


class WindowInstance(FiniteInstance):
    """All translates ``γ·φ`` of a base family that fit inside a window.

    Constraint ``i`` remembers the first ``(base index, γ)`` that produced
    it; translates coinciding as patterns are merged. Constraints are ordered
    by base index, then by ``γ`` in canonical group order.
    """

    def __init__(self, window, base_family):
        self.window = window
        self.base_family = base_family
        G = window.group
        if base_family.group != G:
            raise ValidationError("family and window live in different groups")
        patterns, origins, seen = [], [], set()
        for b, phi in enumerate(base_family):
            d0 = phi.support[0]
            d0inv = G._inv(d0)
            # dom(φ)γ⁻¹ ⊆ B forces γ⁻¹ ∈ d0⁻¹B
            cands = sorted({G._inv(G._mul(d0inv, w)) for w in window}, key=G.key)
            for gamma in cands:
                ginv = G._inv(gamma)
                support = [G._mul(d, ginv) for d in phi.support]
                if not window.contains_all(support):
                    continue
                p = Pattern.from_mapping(G, zip(support, phi.values), phi.k)
                if p in seen:
                    continue
                seen.add(p)
                patterns.append(p)
                origins.append((b, gamma))
        self.patterns = patterns
        self.origins = origins
        super().__init__(len(window), base_family.k,
                         [(window.cells_of(p.support), p.values) for p in patterns])
        # FiniteInstance sorts cells within a constraint but keeps list order
        assert len(self.constraints) == len(patterns)

    @classmethod
    def on_ball(cls, base_family, radius):
        return cls(Window.ball(base_family.group, radius), base_family)

    def _resolve(self, c):
        if isinstance(c, Pattern):
            try:
                return self.patterns.index(c)
            except ValueError:
                raise UnknownConstraint(f"{c!r} is not a constraint of this instance") from None
        return super()._resolve(c)

    def constraint(self, i):
        return self.patterns[i]


def neighbors(c, inst):
    """Other constraints whose support meets the support of ``c``."""
    i = inst._resolve(c)
    return [inst.constraint(j) for j in inst.neighbor_indices(i)]


@dataclass(frozen=True)
class Witness:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or np.any(v < 0) or np.any(v >= 1) or np.any(np.isnan(v)):
            raise ValidationError("witness values must lie in [0, 1)")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return float(self.values[i])


@dataclass(frozen=True)
class CorrectnessReport:
    ok: bool
    worst_slack: float
    slacks: np.ndarray = field(repr=False)

    def table(self, inst):
        rows = []
        for i, s in enumerate(self.slacks):
            cells, _ = inst.constraints[i]
            rows.append({"index": i, "size": len(cells), "slack_bits": float(s)})
        return rows


def _as_witness(inst, omega):
    w = omega if isinstance(omega, Witness) else Witness(omega)
    if len(w) != len(inst):
        raise ValidationError("witness does not cover every constraint")
    return w


def check_correctness(inst, omega):
    """Per-constraint slack ``log2(RHS) - log2(LHS)`` in bits.

    ``ok`` iff every slack is nonnegative (up to ``SLACK_EPS``). Vacuously ok
    for an instance without constraints.
    """
    w = _as_witness(inst, omega).values
    if len(inst) == 0:
        return CorrectnessReport(True, math.inf, np.zeros(0))
    with np.errstate(divide="ignore"):
        log_w = np.log2(w)
        log_1mw = np.log1p(-w) / math.log(2.0)
    log_k = math.log2(inst.k)
    slacks = np.empty(len(inst))
    for i, (cells, _) in enumerate(inst.constraints):
        terms = [float(log_w[i]), len(cells) * log_k]
        terms.extend(log_1mw[inst.neighbor_table[i]].tolist())
        slacks[i] = -math.inf if math.isinf(terms[0]) else math.fsum(terms)
    worst = float(slacks.min())
    return CorrectnessReport(worst >= -SLACK_EPS, worst, slacks)


def canonical_witness(inst, h):
    """``ω(φ) = 2^(-h|φ|)`` on every constraint."""
    if h <= 0:
        raise ValueError("h must be positive")
    return Witness(np.exp2(-h * inst.sizes()))


def log2_product_bound(inst, omega):
    """``n log2 k + Σ log2(1 - ω)``, without checking that ω is a witness."""
    w = _as_witness(inst, omega).values
    terms = [inst.n_cells * math.log2(inst.k)]
    terms.extend((np.log1p(-w) / math.log(2.0)).tolist())
    return math.fsum(terms)


def counting_lower_bound(inst, omega):
    """log2 of the LLL lower bound on the number of avoiding configurations."""
    report = check_correctness(inst, omega)
    if not report.ok:
        raise NotCorrectError(
            f"witness fails the local condition (worst slack {report.worst_slack:.4g} bits)")
    return log2_product_bound(inst, omega)


@dataclass(frozen=True)
class AuditRow:
    phi: int
    psi: int
    anchor: object
    count: int
    bound: int

    @property
    def violated(self):
        return self.count > self.bound


@dataclass(frozen=True)
class AuditReport:
    rows: tuple

    @property
    def violations(self):
        return [r for r in self.rows if r.violated]

    def max_count(self, phi, psi):
        return max((r.count for r in self.rows if (r.phi, r.psi) == (phi, psi)), default=0)


def neighbor_bound_audit(inst):
    """Count in-window translates of each base pattern meeting each copy of another.

    For every ordered pair of base patterns ``(φ, ψ)`` and every in-window
    copy of ``φ`` (anchored at its translating ``γ``), counts the distinct
    ``δ`` with ``dom(δ·ψ)`` inside the window and meeting the copy. The
    count can never exceed ``|φ||ψ|``.
    """
    G = inst.window.group
    base = list(inst.base_family)
    placements = [[] for _ in base]
    for b, phi in enumerate(base):
        d0inv = G._inv(phi.support[0])
        cands = sorted({G._inv(G._mul(d0inv, w)) for w in inst.window}, key=G.key)
        for gamma in cands:
            ginv = G._inv(gamma)
            support = frozenset(G._mul(d, ginv) for d in phi.support)
            if inst.window.contains_all(support):
                placements[b].append((gamma, support))
    rows = []
    for a, phi in enumerate(base):
        for gamma, sup_a in placements[a]:
            for b, psi in enumerate(base):
                count = sum(1 for _, sup_b in placements[b] if sup_a & sup_b)
                rows.append(AuditRow(a, b, gamma, count, len(phi) * len(psi)))
    return AuditReport(tuple(rows))


MAX_BRUTE = 1 << 24


def brute_force_count(inst):
    """Exact number of configurations avoiding every constraint."""
    if inst.k ** inst.n_cells > MAX_BRUTE:
        raise ScaleExceeded(f"k^|B| = {inst.k}^{inst.n_cells} exceeds 2^24")
    return int(avoiding_codes(inst.n_cells, inst.k, inst.constraints).size)


def largest_passing_h(inst, grid=64):
    """Largest ``h`` on a uniform grid over ``(0, log2 k]`` whose canonical
    witness certifies the instance, or ``None``."""
    top = math.log2(inst.k)
    for h in np.linspace(top, top / grid, grid):
        if check_correctness(inst, canonical_witness(inst, float(h))).ok:
            return float(h)
    return None
