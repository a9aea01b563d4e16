"""Finite patterns, windows and window configurations.

A :class:`Pattern` is a nonempty finite partial map ``Γ -> {0..k-1}``; it
stands for the cylinder of all configurations extending it. Shifts follow
the conventions

    (γ·φ)(δ) = φ(δγ),   dom(γ·φ) = dom(φ)γ⁻¹
    (φ·γ)(δ) = φ(γδ),   dom(φ·γ) = γ⁻¹dom(φ)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import itertools

from .errors import DescriptorMismatch, SupportOutsideWindow, ValidationError
from .groups import Group


@dataclass(frozen=True)
class Pattern:
    group: Group
    cells: tuple  # ((element, symbol), ...) in canonical element order
    k: int

    def __post_init__(self):
        if not self.cells:
            raise ValidationError("the empty pattern does not define a cylinder")
        if self.k < 2:
            raise ValidationError("alphabet size must be at least 2")
        keys = []
        for g, s in self.cells:
            self.group.check(g)
            if type(s) is not int or not 0 <= s < self.k:
                raise ValidationError(f"symbol {s!r} outside 0..{self.k - 1}")
            keys.append(self.group.key(g))
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValidationError("pattern cells must be distinct and canonically sorted")

    @classmethod
    def from_mapping(cls, group, mapping, k):
        items = mapping.items() if hasattr(mapping, "items") else mapping
        cells = sorted(((g, int(s)) for g, s in items), key=lambda c: group.key(c[0]))
        if len({g for g, _ in cells}) != len(cells):
            raise ValidationError("pattern assigns two symbols to one cell")
        return cls(group, tuple(cells), k)

    @property
    def support(self):
        return tuple(g for g, _ in self.cells)

    @property
    def values(self):
        return tuple(s for _, s in self.cells)

    def as_dict(self):
        return dict(self.cells)

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, g):
        for h, s in self.cells:
            if h == g:
                return s
        raise KeyError(g)

    def sort_key(self):
        return (tuple(self.group.key(g) for g in self.support), self.values)


def _same_group(*objs):
    g = objs[0].group
    for o in objs[1:]:
        if o.group != g:
            raise DescriptorMismatch(f"{o.group!r} vs {g!r}")
    return g


def left_shift(gamma, phi):
    """``γ·φ``: support ``dom(φ)γ⁻¹`` and ``(γ·φ)(δ) = φ(δγ)``."""
    G = phi.group
    G.check(gamma)
    ginv = G._inv(gamma)
    return Pattern.from_mapping(G, {G._mul(d, ginv): s for d, s in phi.cells}, phi.k)


def right_shift(phi, gamma):
    """``φ·γ``: support ``γ⁻¹dom(φ)`` and ``(φ·γ)(δ) = φ(γδ)``."""
    G = phi.group
    G.check(gamma)
    ginv = G._inv(gamma)
    return Pattern.from_mapping(G, {G._mul(ginv, d): s for d, s in phi.cells}, phi.k)


def weight(phi):
    """``d(U_φ) = 2^-|φ|`` as an exact fraction."""
    return Fraction(1, 2 ** len(phi))


def merge(patterns):
    """Union of patterns with pairwise disjoint supports."""
    patterns = list(patterns)
    G = _same_group(*patterns)
    cells = {}
    for p in patterns:
        for g, s in p.cells:
            if g in cells:
                raise ValidationError("merged patterns overlap")
            cells[g] = s
    return Pattern.from_mapping(G, cells, patterns[0].k)


class Window:
    """A finite set of group elements with a fixed canonical cell order."""

    def __init__(self, group, elements):
        group.check(*elements)
        elements = sorted(set(elements), key=group.key)
        if not elements:
            raise ValidationError("window must be nonempty")
        self.group = group
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}

    @classmethod
    def ball(cls, group, r):
        return cls(group, group.ball(r))

    @classmethod
    def box(cls, group, lows, highs):
        """Integer box ``prod [lows_i, highs_i]`` in ``Z^d``."""
        if group.kind != "zd":
            raise ValidationError("boxes only exist in Z^d")
        if isinstance(lows, int):
            lows, highs = (lows,) * group.rank, (highs,) * group.rank
        ranges = [range(lo, hi + 1) for lo, hi in zip(lows, highs)]
        return cls(group, list(itertools.product(*ranges)))

    @classmethod
    def interval(cls, start, stop):
        """Cells ``start .. stop-1`` of ``Z``."""
        return cls(Group.zd(1), [(i,) for i in range(start, stop)])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def __eq__(self, other):
        return (isinstance(other, Window) and self.group == other.group
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.group, self.elements))

    def __repr__(self):
        return f"Window({self.group!r}, {len(self)} cells)"

    def cells_of(self, support):
        try:
            return tuple(self.index[g] for g in support)
        except KeyError as exc:
            raise SupportOutsideWindow(f"{exc.args[0]!r} is outside the window") from None

    def contains_all(self, support):
        return all(g in self.index for g in support)


@dataclass(frozen=True)
class WindowConfiguration:
    window: Window
    values: tuple
    k: int

    def __post_init__(self):
        if len(self.values) != len(self.window):
            raise ValidationError("configuration must be total on its window")
        if any(type(v) is not int or not 0 <= v < self.k for v in self.values):
            raise ValidationError("configuration symbol out of range")

    @classmethod
    def from_mapping(cls, window, mapping, k):
        return cls(window, tuple(int(mapping[g]) for g in window.elements), k)

    @property
    def group(self):
        return self.window.group

    def __getitem__(self, g):
        return self.values[self.window.index[g]]

    def get(self, g, default=None):
        i = self.window.index.get(g)
        return default if i is None else self.values[i]

    def as_dict(self):
        return dict(zip(self.window.elements, self.values))


def occurs(phi, x):
    """Whether ``x`` extends ``φ`` (windowed membership in the cylinder)."""
    _same_group(phi, x)
    idx = x.window.index
    try:
        return all(x.values[idx[g]] == s for g, s in phi.cells)
    except KeyError as exc:
        raise SupportOutsideWindow(f"{exc.args[0]!r} is outside the window") from None


def restriction_set(configs, F):
    """Distinct restrictions ``x|_F`` as a set of patterns."""
    configs = list(configs)
    F = list(F)
    if not F:
        raise ValidationError("F must be nonempty")
    if not configs:
        return set()
    window = configs[0].window
    if any(c.window != window for c in configs):
        raise ValidationError("configurations live on different windows")
    if not window.contains_all(F):
        raise SupportOutsideWindow("F is not contained in the window")
    cells = window.cells_of(F)
    seen = {tuple(c.values[i] for i in cells) for c in configs}
    k = configs[0].k
    return {Pattern.from_mapping(window.group, zip(F, vals), k) for vals in seen}


def all_configurations(window, k):
    """Every configuration on ``window`` (``k^|window|`` of them)."""
    for vals in itertools.product(range(k), repeat=len(window)):
        yield WindowConfiguration(window, vals, k)
