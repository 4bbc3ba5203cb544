"""Finite topologies on {0..n-1}.

A finite topology is determined by its minimal open neighbourhoods
``M_x`` (the intersection of all opens containing ``x``); the opens are exactly
the unions of the ``M_x``.  Everything is stored as int bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import bits

MAX_CARRIER = 64
DEFAULT_OPEN_LIMIT = 1 << 16


class TooManyOpens(RuntimeError):
    pass


class FiniteTopology:
    """Immutable finite topology given by minimal neighbourhood masks."""

    __slots__ = ("n", "minimal", "completion_added", "_opens")

    def __init__(self, n: int, minimal: Sequence[int], *, completion_added: int = 0):
        if not 0 <= n <= MAX_CARRIER:
            raise ValueError(f"carrier size {n} outside 0..{MAX_CARRIER}")
        minimal = tuple(int(m) for m in minimal)
        if len(minimal) != n:
            raise ValueError("need one minimal neighbourhood per point")
        full = bits.full_mask(n)
        for x, m in enumerate(minimal):
            if not bits.contains(m, x) or m & ~full:
                raise ValueError(f"M_{x} = {bits.fmt(m)} must contain {x} and lie in the carrier")
            for y in bits.iter_members(m):
                if not bits.is_subset(minimal[y], m):
                    raise ValueError(f"not a topology: {y} in M_{x} but M_{y} not inside M_{x}")
        self.n = n
        self.minimal = minimal
        self.completion_added = completion_added
        self._opens: tuple[int, ...] | None = None

    # construction
    @classmethod
    def from_opens(cls, n: int, opens: Iterable[int]) -> "FiniteTopology":
        """Topology generated by ``opens`` under unions and finite intersections."""
        given = {int(o) for o in opens} | {0, bits.full_mask(n)}
        full = bits.full_mask(n)
        for o in given:
            if o & ~full:
                raise ValueError(f"open set {bits.fmt(o)} leaves the carrier 0..{n - 1}")
        minimal = []
        for x in range(n):
            m = full
            for o in given:
                if bits.contains(o, x):
                    m &= o
            minimal.append(m)
        top = cls(n, minimal)
        top.completion_added = max(0, top.count_opens() - len(given))
        return top

    @classmethod
    def from_minimal(cls, minimal: Sequence[int]) -> "FiniteTopology":
        return cls(len(minimal), minimal)

    @classmethod
    def discrete(cls, n: int) -> "FiniteTopology":
        return cls(n, [1 << x for x in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> "FiniteTopology":
        return cls(n, [bits.full_mask(n)] * n)

    @classmethod
    def from_preorder(cls, n: int, leq: Iterable[tuple[int, int]]) -> "FiniteTopology":
        """Opens are the up-sets of the reflexive-transitive closure of ``leq``."""
        up = [1 << x for x in range(n)]
        for x, y in leq:
            up[x] |= 1 << y
        changed = True
        while changed:
            changed = False
            for x in range(n):
                m = up[x]
                for y in bits.iter_members(m):
                    m |= up[y]
                if m != up[x]:
                    up[x] = m
                    changed = True
        return cls(n, up)

    # comparison
    def __eq__(self, other):
        return isinstance(other, FiniteTopology) and self.minimal == other.minimal

    def __hash__(self):
        return hash(self.minimal)

    def __repr__(self):
        return f"FiniteTopology(n={self.n}, minimal=[{', '.join(map(bits.fmt, self.minimal))}])"

    @property
    def full(self) -> int:
        return bits.full_mask(self.n)

    # queries
    def is_open(self, A: int) -> bool:
        return all(bits.is_subset(self.minimal[x], A) for x in bits.iter_members(A))

    def is_closed(self, A: int) -> bool:
        return self.is_open(self.full & ~A)

    def interior(self, A: int) -> int:
        out = 0
        for x in bits.iter_members(A):
            if bits.is_subset(self.minimal[x], A):
                out |= 1 << x
        return out

    def closure(self, A: int) -> int:
        out = 0
        for x in range(self.n):
            if self.minimal[x] & A:
                out |= 1 << x
        return out

    def open_hull(self, A: int) -> int:
        """Smallest open set containing ``A``."""
        out = 0
        for x in bits.iter_members(A):
            out |= self.minimal[x]
        return out

    def is_neighborhood(self, A: int, x: int) -> bool:
        return bits.is_subset(self.minimal[x], A)

    def iter_opens(self) -> Iterator[int]:
        """All opens in increasing mask order (materialised once)."""
        return iter(self.opens())

    def opens(self, limit: int = DEFAULT_OPEN_LIMIT) -> tuple[int, ...]:
        if self._opens is None:
            found = {0}
            for m in set(self.minimal):
                new = {o | m for o in found}
                found |= new
                if len(found) > limit:
                    raise TooManyOpens(f"more than {limit} open sets")
            self._opens = tuple(sorted(found))
        if len(self._opens) > limit:
            raise TooManyOpens(f"more than {limit} open sets")
        return self._opens

    def count_opens(self, limit: int = DEFAULT_OPEN_LIMIT) -> int:
        return len(self.opens(limit))

    def opens_containing(self, x: int, limit: int = DEFAULT_OPEN_LIMIT) -> list[int]:
        m = self.minimal[x]
        return [o for o in self.opens(limit) if bits.is_subset(m, o)]

    # derived spaces
    def subspace(self, A: int) -> tuple["FiniteTopology", list[int]]:
        elems = bits.members(A)
        pos = {x: i for i, x in enumerate(elems)}
        minimal = [bits.mask_of(pos[y] for y in bits.iter_members(self.minimal[x] & A)) for x in elems]
        return FiniteTopology(len(elems), minimal), elems

    def product(self, other: "FiniteTopology") -> "FiniteTopology":
        """Product topology; point (i, j) has index i * other.n + j."""
        m = other.n
        minimal = []
        for i in range(self.n):
            rows = bits.members(self.minimal[i])
            for j in range(m):
                col = other.minimal[j]
                minimal.append(sum(col << (r * m) for r in rows))
        return FiniteTopology(self.n * m, minimal)

    def relabel(self, perm: Sequence[int]) -> "FiniteTopology":
        """Topology transported along the bijection ``x -> perm[x]``."""
        minimal = [0] * self.n
        for x, m in enumerate(self.minimal):
            minimal[perm[x]] = bits.image(m, perm)
        return FiniteTopology(self.n, minimal)


# --- separation ---------------------------------------------------------------

SEPARATION_LEVELS = ("none", "T0", "T1", "T2")


def is_T0(t: FiniteTopology) -> bool:
    return all(not (bits.contains(t.minimal[x], y) and bits.contains(t.minimal[y], x))
               for x, y in itertools.combinations(range(t.n), 2))


def is_T1(t: FiniteTopology) -> bool:
    return all(not bits.contains(t.minimal[x], y)
               for x, y in itertools.permutations(range(t.n), 2))


def is_T2(t: FiniteTopology) -> bool:
    return all(t.minimal[x] & t.minimal[y] == 0 for x, y in itertools.combinations(range(t.n), 2))


def separation(t: FiniteTopology) -> str:
    """Strongest of T2, T1, T0 that holds, else ``none``."""
    if is_T2(t):
        return "T2"
    if is_T1(t):
        return "T1"
    if is_T0(t):
        return "T0"
    return "none"


def separation_at_least(level: str, required: str) -> bool:
    return SEPARATION_LEVELS.index(level) >= SEPARATION_LEVELS.index(required)


# --- cardinal invariants ------------------------------------------------------

@dataclass(frozen=True)
class CardinalReport:
    """Character, pseudocharacter, Lindelöf number of a finite space.

    The first three are reported in the cardinal-function sense, where a
    finite value collapses to 1.  ``min_subcover`` is the literal worst case:
    the largest size of an irredundant-minimal subcover over all open covers.
    """

    character: int
    pseudocharacter: int
    lindelof: int
    local_base_size: int
    min_subcover: int


def min_local_base_size(t: FiniteTopology, x: int) -> int:
    # the singleton family {M_x} is a local base; nothing smaller is nonempty
    return 1


def min_pseudo_family_size(t: FiniteTopology, x: int) -> int:
    """Fewest opens whose intersection is the kernel ``M_x`` of the point."""
    return 1 if t.minimal[x] else 0


def worst_min_subcover(t: FiniteTopology) -> int:
    """Max over open covers of the smallest subcover size.

    The cover by minimal neighbourhoods is the hardest one; its smallest
    subcover uses exactly the inclusion-maximal distinct ``M_x``.
    """
    distinct = set(t.minimal)
    return sum(1 for m in distinct if not any(m != o and bits.is_subset(m, o) for o in distinct))


def worst_min_subcover_bruteforce(t: FiniteTopology) -> int:
    """Oracle: enumerate every open cover (tiny spaces only)."""
    opens = [o for o in t.opens() if o]
    full = t.full
    worst = 0
    for r in range(1, len(opens) + 1):
        for cover in itertools.combinations(opens, r):
            if _union(cover) != full:
                continue
            best = next(k for k in range(1, r + 1)
                        if any(_union(s) == full for s in itertools.combinations(cover, k)))
            worst = max(worst, best)
    return worst if t.n else 0


def _union(sets) -> int:
    out = 0
    for s in sets:
        out |= s
    return out


def cardinal_report(t: FiniteTopology) -> CardinalReport:
    if t.n == 0:
        return CardinalReport(1, 1, 1, 0, 0)
    local = max(min_local_base_size(t, x) for x in range(t.n))
    pseudo = max(min_pseudo_family_size(t, x) for x in range(t.n))
    # every open cover of a finite space has a finite subcover
    return CardinalReport(character=local, pseudocharacter=pseudo, lindelof=1,
                          local_base_size=local, min_subcover=worst_min_subcover(t))


def all_topologies(n: int) -> list[FiniteTopology]:
    """Every topology on n points, via preorders (n <= 4 keeps this instant)."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    seen: dict[tuple[int, ...], FiniteTopology] = {}
    for chosen in itertools.product((False, True), repeat=len(pairs)):
        rel = [p for p, c in zip(pairs, chosen) if c]
        t = FiniteTopology.from_preorder(n, rel)
        seen.setdefault(t.minimal, t)
    return [seen[k] for k in sorted(seen)]
