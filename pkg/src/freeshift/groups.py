"""Exact arithmetic for the two supported families of groups.

Elements are plain tuples so they hash and compare cheaply:

* ``Z^d``: a length-``d`` tuple of ints.
* ``F_m``: a reduced word, i.e. a tuple of nonzero ints where ``i`` is the
  generator ``a_i`` and ``-i`` its inverse. The empty tuple is the identity.

The :class:`Group` object carries the descriptor and does all the checking.
Every enumeration is in canonical order: length first (l-infinity norm for
``Z^d``, reduced word length for ``F_m``), then lexicographic with the letter
order ``a < A < b < B < ...`` (for integers: ``0 < 1 < -1 < 2 < -2 < ...``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import itertools
import string

from .errors import DescriptorMismatch, ValidationError

ZD = "zd"
FREE = "free"


def _letter_key(c):
    return (abs(c), c < 0)


@dataclass(frozen=True)
class Group:
    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in (ZD, FREE):
            raise ValidationError(f"unknown group kind {self.kind!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValidationError("group rank must be a positive integer")
        if self.kind == FREE and self.rank > 26:
            raise ValidationError("free groups of rank > 26 have no string encoding")

    @classmethod
    def zd(cls, d=1):
        return cls(ZD, d)

    @classmethod
    def free(cls, m=2):
        return cls(FREE, m)

    @property
    def is_abelian(self):
        return self.kind == ZD or self.rank == 1

    @property
    def is_amenable(self):
        return self.kind == ZD or self.rank == 1

    def __repr__(self):
        return f"Z^{self.rank}" if self.kind == ZD else f"F_{self.rank}"

    # -- elements -------------------------------------------------------

    @cached_property
    def identity(self):
        return (0,) * self.rank if self.kind == ZD else ()

    @cached_property
    def generators(self):
        """Generators together with their inverses, in canonical order."""
        if self.kind == ZD:
            out = []
            for i in range(self.rank):
                for s in (1, -1):
                    e = [0] * self.rank
                    e[i] = s
                    out.append(tuple(e))
            return tuple(sorted(out, key=self.key))
        return tuple((s * i,) for i in range(1, self.rank + 1) for s in (1, -1))

    def is_element(self, g):
        if not isinstance(g, tuple):
            return False
        if self.kind == ZD:
            return len(g) == self.rank and all(type(c) is int for c in g)
        for i, c in enumerate(g):
            if type(c) is not int or c == 0 or abs(c) > self.rank:
                return False
            if i and g[i - 1] == -c:
                return False
        return True

    def check(self, *elements):
        for g in elements:
            if not self.is_element(g):
                raise DescriptorMismatch(f"{g!r} is not an element of {self!r}")

    def length(self, g):
        if self.kind == ZD:
            return max((abs(c) for c in g), default=0)
        return len(g)

    def key(self, g):
        """Sort key realising the canonical length-then-lex order."""
        return (self.length(g), tuple(_letter_key(c) for c in g))

    def multiply(self, a, b):
        self.check(a, b)
        return self._mul(a, b)

    def _mul(self, a, b):
        if self.kind == ZD:
            return tuple(x + y for x, y in zip(a, b))
        i = 0
        n = min(len(a), len(b))
        while i < n and a[len(a) - 1 - i] == -b[i]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def inverse(self, a):
        self.check(a)
        return self._inv(a)

    def _inv(self, a):
        if self.kind == ZD:
            return tuple(-x for x in a)
        return tuple(-c for c in reversed(a))

    def product(self, *elements):
        out = self.identity
        for g in elements:
            out = self.multiply(out, g)
        return out

    # -- enumeration ----------------------------------------------------

    def shell(self, r):
        """Elements of length exactly ``r``, canonically ordered."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        if r == 0:
            return [self.identity]
        if self.kind == ZD:
            pts = (p for p in itertools.product(range(-r, r + 1), repeat=self.rank)
                   if max(abs(c) for c in p) == r)
            return sorted(pts, key=self.key)
        letters = [s * i for i in range(1, self.rank + 1) for s in (1, -1)]
        words = [(c,) for c in letters]
        for _ in range(r - 1):
            words = [w + (c,) for w in words for c in letters if c != -w[-1]]
        return sorted(words, key=self.key)

    def ball(self, r):
        """All elements of length <= ``r`` in canonical order."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        out = []
        for j in range(r + 1):
            out.extend(self.shell(j))
        return out

    def iter_elements(self):
        """Every element of the group, canonically ordered (infinite)."""
        for r in itertools.count():
            yield from self.shell(r)

    def ball_size(self, r):
        if self.kind == ZD:
            return (2 * r + 1) ** self.rank
        m = self.rank
        if m == 1:
            return 2 * r + 1
        return 1 + 2 * m * ((2 * m - 1) ** r - 1) // (2 * m - 2)

    def powers(self, S, n):
        """``S^n = {s_1 ... s_n}`` for a finite set ``S`` (``S^0 = {1}``)."""
        S = list(S)
        self.check(*S)
        out = {self.identity}
        for _ in range(n):
            out = {self._mul(a, s) for a in out for s in S}
        return sorted(out, key=self.key)

    def symmetrize(self, S):
        """Smallest symmetric set containing ``S`` and the identity."""
        S = list(S)
        self.check(*S)
        out = set(S) | {self._inv(s) for s in S} | {self.identity}
        return sorted(out, key=self.key)

    # -- translates -----------------------------------------------------

    def right_translate(self, D, g):
        """The set ``D g``."""
        return {self._mul(d, g) for d in D}

    def left_translate(self, g, D):
        """The set ``g D``."""
        return {self._mul(g, d) for d in D}

    def find_disjoint_translates(self, domains, N, side="right"):
        """Greedy search for ``N`` elements with pairwise disjoint translates.

        With ``side="right"`` the result satisfies
        ``D g_i  ∩  D' g_j = ∅`` for every pair of input domains and ``i < j``;
        ``side="left"`` gives the mirror condition ``g_i D ∩ g_j D' = ∅``.
        Candidates are scanned in canonical order and accepted when they clash
        with none of the previously accepted ones, so the output is
        deterministic. Terminates because the group is infinite.
        """
        if N < 1:
            raise ValueError("N must be positive")
        domains = [list(D) for D in domains]
        if not domains or any(not D for D in domains):
            raise ValueError("domains must be finite and nonempty")
        for D in domains:
            self.check(*D)
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        union = set().union(*map(set, domains))
        occupied = set()
        chosen = []
        for g in self.iter_elements():
            if side == "right":
                image = self.right_translate(union, g)
            else:
                image = self.left_translate(g, union)
            if image.isdisjoint(occupied):
                chosen.append(g)
                occupied |= image
                if len(chosen) == N:
                    return chosen

    # -- text encoding --------------------------------------------------

    def format(self, g):
        """JSON-ready encoding: int list for ``Z^d``, letter string for ``F_m``."""
        self.check(g)
        if self.kind == ZD:
            return list(g)
        return "".join(
            string.ascii_lowercase[c - 1] if c > 0 else string.ascii_uppercase[-c - 1]
            for c in g)

    def parse(self, obj):
        if self.kind == ZD:
            if isinstance(obj, int) and not isinstance(obj, bool) and self.rank == 1:
                obj = [obj]
            if not isinstance(obj, (list, tuple)) or any(
                    type(c) is not int for c in obj):
                raise ValidationError(f"expected an integer vector, got {obj!r}")
            g = tuple(obj)
            self.check(g)
            return g
        if not isinstance(obj, str):
            raise ValidationError(f"expected a word string, got {obj!r}")
        word = []
        for ch in obj:
            if ch in string.ascii_lowercase:
                c = string.ascii_lowercase.index(ch) + 1
            elif ch in string.ascii_uppercase:
                c = -(string.ascii_uppercase.index(ch) + 1)
            else:
                raise ValidationError(f"bad letter {ch!r} in word {obj!r}")
            if abs(c) > self.rank:
                raise DescriptorMismatch(f"letter {ch!r} not in {self!r}")
            # parsing reduces, so "aA" denotes the identity
            if word and word[-1] == -c:
                word.pop()
            else:
                word.append(c)
        return tuple(word)
