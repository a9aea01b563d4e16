"""Families that force large pointwise width, and the augmented cover.

Given a finite family ``ℱ`` with ``width(ℱ) < h`` and a budget ``ε``, the
left family is

    𝒱 = { ⋂_i γ_i⁻¹·U_i : U_1, ..., U_N ∈ ℱ }

for translates ``γ_1..γ_N`` whose right cosets ``dom(U)γ_i`` are pairwise
disjoint, with ``N`` the least integer such that
``c1 c2 N rho_h(ℱ)^N < ε`` (``c1 = max |φ|``, ``c2 = 2^h |log2(1 - 2^-h)|``).
A configuration avoiding ``⋃𝒱`` has some ``γ_i·x`` outside ``⋃ℱ``. The right
family ``𝒲`` mirrors this with right shifts and left cosets ``γ_i dom(U)``.

``𝒱`` has ``|ℱ|^N`` members, so it is kept in product form: sizes and
``σ_h`` come from an exact convolution of the factor size counts, and members
are only expanded on demand.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
import itertools
import math

from .covers import CylinderFamily, family_width, rho, sigma
from .errors import (BudgetViolation, IdentityGammaError, ValidationError,
                     WidthNotBelowH, WindowTooSmall)
from .lll import WindowInstance
from .patterns import Pattern, left_shift, merge, right_shift

MAX_N = 100_000


class ProductEvent:
    """Occurrence of some member of a product family at one fixed translate."""
    __slots__ = ("cells", "factors")

    def __init__(self, factors):
        self.factors = factors
        self.cells = tuple(sorted({c for alts in factors for cells, _ in alts for c in cells}))

    def occurs(self, x):
        return all(any(all(x[c] == v for c, v in zip(cells, vals)) for cells, vals in alts)
                   for alts in self.factors)


class ProductFamily:
    """``{ merge(shift_1(U_1), ..., shift_N(U_N)) : U_i ∈ ℱ }`` in product form."""

    def __init__(self, factors, translates, side):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.factors = factors
        self.translates = tuple(translates)
        self.side = side
        self.group = factors.group
        self.k = factors.k
        G = self.group
        self._inv = [G._inv(g) for g in self.translates]
        self._shifted = [[self._shift(i, U) for U in factors] for i in range(self.N)]
        supports = [set(p.support) for row in self._shifted for p in row]
        for i, j in itertools.combinations(range(self.N), 2):
            a = set().union(*(set(p.support) for p in self._shifted[i]))
            b = set().union(*(set(p.support) for p in self._shifted[j]))
            assert a.isdisjoint(b), "translated factor domains overlap"
        self.span = sorted(set().union(*supports), key=G.key)

    def _shift(self, i, U):
        if self.side == "left":
            return left_shift(self._inv[i], U)
        return right_shift(U, self._inv[i])

    @property
    def N(self):
        return len(self.translates)

    def __len__(self):
        return len(self.factors) ** self.N

    def __iter__(self):
        for choice in itertools.product(*self._shifted):
            yield merge(choice)

    def size_counts(self):
        base = self.factors.size_counts()
        out = Counter({0: 1})
        for _ in range(self.N):
            nxt = Counter()
            for s, c in out.items():
                for t, d in base.items():
                    nxt[s + t] += c * d
            out = nxt
        return out

    def events_in(self, window):
        """One event per left translate ``δ`` with ``span·δ⁻¹`` inside the window."""
        G = window.group
        anchor_inv = G._inv(self.span[0])
        cands = sorted({G._inv(G._mul(anchor_inv, w)) for w in window}, key=G.key)
        events = []
        for delta in cands:
            dinv = G._inv(delta)
            if not window.contains_all(G._mul(s, dinv) for s in self.span):
                continue
            factors = tuple(
                tuple((window.cells_of([G._mul(g, dinv) for g in p.support]), p.values)
                      for p in row)
                for row in self._shifted)
            events.append(ProductEvent(factors))
        return events

    def __repr__(self):
        return (f"ProductFamily({self.side}, N={self.N}, |ℱ|={len(self.factors)}, "
                f"{len(self)} members)")


class FamilyUnion:
    """Disjoint bookkeeping union of families; ``σ`` and ``rho`` add up."""

    def __init__(self, parts, k, group):
        self.parts = tuple(parts)
        self.k = k
        self.group = group

    def __len__(self):
        return sum(len(p) for p in self.parts)

    def __iter__(self):
        return itertools.chain.from_iterable(self.parts)

    def size_counts(self):
        out = Counter()
        for p in self.parts:
            out.update(p.size_counts())
        return out


def _constants(family, h):
    c1 = max(len(U) for U in family)
    c2 = 2.0 ** h * abs(math.log2(1.0 - 2.0 ** (-h)))
    return c1, c2


def choose_N(family, h, eps):
    """Least ``N >= 1`` with ``c1 c2 N rho_h^N < ε``."""
    r = rho(family, h)
    c1, c2 = _constants(family, h)
    for N in range(1, MAX_N + 1):
        if c1 * c2 * N * r ** N < eps:
            return N
    raise ValidationError("no admissible N below the search cap")


def _build(family, h, eps, side):
    if len(family) == 0:
        raise ValidationError("ℱ must be nonempty")
    if h <= 0 or eps <= 0:
        raise ValueError("h and ε must be positive")
    # width(ℱ) < h  <=>  rho_h(ℱ) < 1
    if not rho(family, h) < 1.0:
        raise WidthNotBelowH(
            f"width(ℱ) = {family_width(family):.6g} is not below h = {h}")
    N = choose_N(family, h, eps)
    domains = [U.support for U in family]
    # 𝒱 needs disjoint dom(U)γ_i (right multiplication), 𝒲 disjoint γ_i dom(U)
    translates = family.group.find_disjoint_translates(
        domains, N, side="right" if side == "left" else "left")
    out = ProductFamily(family, translates, side)
    s = sigma(out, h)
    if not s < eps:
        raise BudgetViolation(f"σ_h = {s!r} of the {side} family is not below ε = {eps!r}")
    return out


def build_left_family(family, h, eps):
    """The family 𝒱 for the left shift action (see module docstring)."""
    return _build(family, h, eps, "left")


def build_right_family(family, h, eps):
    """The family 𝒲 for the right shift action."""
    return _build(family, h, eps, "right")


@dataclass
class AugmentationPlan:
    base_cover: CylinderFamily
    h: float
    bad_families: list
    epsilons: list = None

    def __post_init__(self):
        self.bad_families = list(self.bad_families)
        if self.h <= 0:
            raise ValidationError("h must be positive")
        slack = self.initial_slack
        if not slack > 0:
            raise ValidationError(f"h + σ_h(𝒰) >= log2 k (slack {slack:.6g})")
        for n, F in enumerate(self.bad_families):
            if F.k != self.base_cover.k or F.group != self.base_cover.group:
                raise ValidationError(f"bad family {n} has a different group or alphabet")
            if not rho(F, self.h) < 1.0:
                raise WidthNotBelowH(f"bad family {n} has width >= h")
        expected = [slack / 2 ** (n + 2) for n in range(len(self.bad_families))]
        if self.epsilons is None:
            self.epsilons = expected
        elif len(self.epsilons) != len(expected) or any(
                not math.isclose(a, b, rel_tol=1e-12) for a, b in zip(self.epsilons, expected)):
            raise ValidationError("ε_n must equal slack / 2^(n+2)")

    @property
    def k(self):
        return self.base_cover.k

    @property
    def initial_slack(self):
        return math.log2(self.k) - self.h - sigma(self.base_cover, self.h)


@dataclass
class AugmentedCover:
    plan: AugmentationPlan
    left: list
    right: list
    family: FamilyUnion
    sigma_base: float
    sigma_added: float
    slack: float
    bounds: list = field(default_factory=list)

    @property
    def certificate(self):
        from .covers import BreadthCertificate
        return BreadthCertificate(self.plan.h, self.family, self.slack,
                                  self.sigma_base + self.sigma_added)

    def record(self):
        return {"h": self.plan.h, "initial_slack": self.plan.initial_slack,
                "sigma_base": self.sigma_base, "sigma_added": self.sigma_added,
                "slack": self.slack, "epsilons": list(self.plan.epsilons),
                "families": self.bounds}


def assemble_augmented_cover(plan):
    """``𝒰' = 𝒰 ∪ ⋃_n (𝒱_n ∪ 𝒲_n)`` with its breadth certificate.

    The certified ``σ_h(𝒰')`` is the sum over all parts, which bounds the
    ``σ`` of the set union from above (parts may coincide, e.g. ``𝒱_n = 𝒲_n``
    in abelian groups).
    """
    h = plan.h
    left, right, bounds = [], [], []
    added = []
    for n, (F, eps) in enumerate(zip(plan.bad_families, plan.epsilons)):
        V = build_left_family(F, h, eps)
        W = build_right_family(F, h, eps)
        sv, sw = sigma(V, h), sigma(W, h)
        left.append(V)
        right.append(W)
        added.extend([sv, sw])
        bounds.append({"n": n, "N_left": V.N, "N_right": W.N, "epsilon": eps,
                       "sigma_left": sv, "sigma_right": sw})
    sigma_base = sigma(plan.base_cover, h)
    sigma_added = math.fsum(added)
    budget = math.fsum(2 * e for e in plan.epsilons)
    if plan.bad_families and not sigma_added < budget:
        raise BudgetViolation(f"augmentation σ {sigma_added!r} exceeds budget {budget!r}")
    slack = math.log2(plan.k) - h - sigma_base - sigma_added
    if not slack > 0:
        raise BudgetViolation("augmented cover lost its breadth slack")
    family = FamilyUnion([plan.base_cover, *left, *right], plan.k, plan.base_cover.group)
    return AugmentedCover(plan, left, right, family, sigma_base, sigma_added, slack, bounds)


def augmented_instance(window, cover):
    """Window instance for the base cover with the product families as extra events."""
    inst = WindowInstance(window, cover.plan.base_cover)
    extra = []
    for fam in (*cover.left, *cover.right):
        extra.extend(fam.events_in(window))
    inst.extra_events = extra
    return inst


def freeness_patterns(group, gamma, k):
    """The ``k`` patterns ``{1 ↦ i, γ ↦ i}``; their width is ``log2(k)/2``."""
    group.check(gamma)
    if gamma == group.identity:
        raise IdentityGammaError("γ must not be the identity")
    one = group.identity
    return CylinderFamily(
        [Pattern.from_mapping(group, {one: i, gamma: i}, k) for i in range(k)], k, group)


def _translate_candidates(window, union, side):
    G = window.group
    u0 = union[0]
    if side == "left":
        # dom·γ ⊆ window
        cands = {G._mul(G._inv(u0), w) for w in window}
        fits = lambda g: window.contains_all(G._mul(d, g) for d in union)
    else:
        cands = {G._mul(w, G._inv(u0)) for w in window}
        fits = lambda g: window.contains_all(G._mul(g, d) for d in union)
    return [g for g in sorted(cands, key=G.key) if fits(g)]


def orbit_escape_check(x, family, side="left"):
    """Whether some fully visible translate of ``x`` avoids every member of ``ℱ``.

    ``side="left"`` tests ``γ·x`` (``(γ·x)(δ) = x(δγ)``), ``side="right"``
    tests ``x·γ`` (``(x·γ)(δ) = x(γδ)``), over the ``γ`` for which every
    member's support lands inside the window.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if len(family) == 0:
        return True
    G = x.window.group
    union = sorted({g for m in family for g in m.support}, key=G.key)
    cands = _translate_candidates(x.window, union, side)
    if not cands:
        raise WindowTooSmall("no translate of ℱ fits inside the window")
    for g in cands:
        if side == "left":
            hit = any(all(x[G._mul(d, g)] == s for d, s in m.cells) for m in family)
        else:
            hit = any(all(x[G._mul(g, d)] == s for d, s in m.cells) for m in family)
        if not hit:
            return True
    return False


def period_check(x, gamma):
    """``x(δγ) = x(δ)`` for every visible pair, i.e. ``γ·x = x`` inside the window."""
    G = x.window.group
    G.check(gamma)
    if gamma == G.identity:
        raise IdentityGammaError("γ must not be the identity")
    for d in x.window:
        v = x.get(G._mul(d, gamma))
        if v is not None and v != x[d]:
            return False
    return True


def small_bad_families(group, k, h, radius, max_members, max_support=None):
    """All families of patterns inside ``ball(radius)`` with width below ``h``.

    Members have support size at most ``max_support`` (default: the ball) and
    families have at most ``max_members`` members. Enumerated in a fixed
    order; the count grows very fast, so keep the parameters tiny.
    """
    ball = group.ball(radius)
    max_support = len(ball) if max_support is None else max_support
    pats = []
    for r in range(1, max_support + 1):
        for sup in itertools.combinations(ball, r):
            for vals in itertools.product(range(k), repeat=r):
                pats.append(Pattern.from_mapping(group, zip(sup, vals), k))
    for m in range(1, max_members + 1):
        for combo in itertools.combinations(pats, m):
            fam = CylinderFamily(combo, k, group)
            if rho(fam, h) < 1.0:
                yield fam
