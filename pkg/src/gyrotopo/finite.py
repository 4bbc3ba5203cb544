"""Finite gyrogroups given by Cayley tables on the carrier {0..n-1}.

The identity is pinned at index 0.  Gyrations are derived from the table
(never supplied) and cached as an ``n x n x n`` array ``gyr[a, b, c]``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bits
from .core import (
    AxiomViolation,
    ConsistencyError,
    PreconditionError,
    Report,
    cycle_notation,
    scalar,
    scalar_right,
)

DEFAULT_SUBSET_BOUND = 16


class FiniteGyrogroup:
    """A validated finite gyrogroup.  Build instances with :func:`validate`."""

    identity = 0

    def __init__(self, table: np.ndarray, inv: np.ndarray, gyr: np.ndarray, name: str = "",
                 relabeling: tuple[int, ...] | None = None):
        self.table = table
        self.inv = inv
        self.gyr = gyr
        self.n = int(table.shape[0])
        self.name = name
        self.relabeling = relabeling
        for arr in (table, inv, gyr):
            arr.flags.writeable = False
        self._left = [list(map(int, row)) for row in table]
        self._inv = [int(x) for x in inv]
        self._pow2 = np.left_shift(np.uint64(1), np.arange(self.n, dtype=np.uint64))
        self._conj: np.ndarray | None = None
        self._shift_bits: np.ndarray | None = None
        self._conj_bits: np.ndarray | None = None
        self._conj_inv_bits: np.ndarray | None = None
        self._gyrations: frozenset | None = None

    def __repr__(self):
        return f"FiniteGyrogroup(n={self.n}, name={self.name!r})"

    def __eq__(self, other):
        return isinstance(other, FiniteGyrogroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    # GyroOps surface
    def add(self, a: int, b: int) -> int:
        return self._left[a][b]

    def neg(self, a: int) -> int:
        return self._inv[a]

    def equal(self, a: int, b: int) -> bool:
        return a == b

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def full(self) -> int:
        return bits.full_mask(self.n)

    def gyration(self, a: int, b: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.gyr[a, b])

    def gyrations(self) -> set[tuple[int, ...]]:
        """Distinct gyration permutations."""
        if self._gyrations is None:
            flat = self.gyr.reshape(self.n * self.n, self.n)
            self._gyrations = frozenset(tuple(int(x) for x in row) for row in np.unique(flat, axis=0))
        return set(self._gyrations)

    # set-level helpers on bitmasks
    def sumset(self, A: int, B: int) -> int:
        bs = bits.members(B)
        if bits.size(A) * len(bs) > 48:
            vals = self.table[np.ix_(bits.members(A), bs)]
            return self._mask_of_values(vals)
        out = 0
        for a in bits.iter_members(A):
            row = self._left[a]
            for b in bs:
                out |= 1 << row[b]
        return out

    def _mask_of_values(self, vals: np.ndarray) -> int:
        flags = np.zeros(self.n, dtype=bool)
        flags[vals.ravel()] = True
        return int(np.bitwise_or.reduce(self._pow2[flags])) if flags.any() else 0

    def left_shift(self, x: int, A: int) -> int:
        row = self._left[x]
        out = 0
        for a in bits.iter_members(A):
            out |= 1 << row[a]
        return out

    def right_shift(self, A: int, x: int) -> int:
        out = 0
        for a in bits.iter_members(A):
            out |= 1 << self._left[a][x]
        return out

    def neg_set(self, A: int) -> int:
        return bits.image(A, self._inv)

    def gyr_set(self, a: int, b: int, A: int) -> int:
        return bits.image(A, self.gyr[a, b])

    def cosub_set(self, A: int, B: int) -> int:
        """``A [-] B`` = {a [-] b : a in A, b in B} with cosubtraction."""
        out = 0
        bs = bits.members(B)
        for a in bits.iter_members(A):
            for b in bs:
                out |= 1 << self._left[a][self._inv[int(self.gyr[a, b, b])]]
        return out

    def conjugation_map(self, x: int, y: int) -> list[int]:
        """The map ``v -> -(x+y) + ((v+x)+y)`` as a lookup list."""
        t = self._left
        nxy = self._inv[t[x][y]]
        return [t[nxy][t[t[v][x]][y]] for v in range(self.n)]

    @property
    def shift_bits(self) -> np.ndarray:
        """``B[a, v]`` = bit of a + v (uint64)."""
        if self._shift_bits is None:
            self._shift_bits = self._pow2[self.table]
            self._shift_bits.flags.writeable = False
        return self._shift_bits

    def flags(self, masks: Sequence[int]) -> np.ndarray:
        """Boolean membership matrix ``[k, v]`` of a list of masks."""
        return mask_flags(masks, self.n)

    def translate_masks(self, masks: Sequence[int]) -> np.ndarray:
        """``[a, k]`` = a + masks[k] for every element a."""
        return or_select(self.shift_bits, self.flags(masks))

    def sumset_matrix(self, As: Sequence[int], Bs: Sequence[int]) -> np.ndarray:
        """``[i, j]`` = As[i] + Bs[j] as uint64 masks."""
        R = self.translate_masks(Bs)                  # [u, j] = u + B_j
        return or_select(R.T, self.flags(As)).T

    @property
    def conjugation_table(self) -> np.ndarray:
        """``C[x, y, v]`` = conjugation_map(x, y)[v], computed once."""
        if self._conj is None:
            T = self.table
            nxy = self.inv[T]                                 # [x, y]
            vxy = T[T.T[:, :, None], np.arange(self.n)[None, None, :]]  # [x, v, y] = (v+x)+y
            C = T[nxy[:, None, :], vxy].transpose(0, 2, 1)    # [x, y, v]
            C.flags.writeable = False
            self._conj = C
        return self._conj

    @property
    def conjugation_bits(self) -> np.ndarray:
        """Bit of ``C[x, y, v]`` (uint64), computed once."""
        if self._conj_bits is None:
            self._conj_bits = self._pow2[self.conjugation_table]
            self._conj_bits.flags.writeable = False
        return self._conj_bits

    @property
    def conjugation_inverse_bits(self) -> np.ndarray:
        """Bit of the preimage of v under the conjugation map at (x, y)."""
        if self._conj_inv_bits is None:
            inv = np.argsort(self.conjugation_table, axis=2)
            self._conj_inv_bits = self._pow2[inv]
            self._conj_inv_bits.flags.writeable = False
        return self._conj_inv_bits

    def image_masks(self, A: int, maps: np.ndarray) -> np.ndarray:
        """Bitmask images of ``A`` under every map in ``maps[..., v]`` (uint64)."""
        idx = _index_array(A)
        if idx.size == 0:
            return np.zeros(maps.shape[:-1], dtype=np.uint64)
        return np.bitwise_or.reduce(self._pow2[maps[..., idx]], axis=-1)


class RawTable:
    """GyroOps over an unvalidated table (identity 0, first left inverse).

    Used to run the identity suite on tables that may not be gyrogroups.
    """

    identity = 0

    def __init__(self, table):
        T = _as_table(table)
        self.n = T.shape[0]
        self._rows = [list(map(int, r)) for r in T]
        self._inv = []
        for a in range(self.n):
            col = [x for x in range(self.n) if self._rows[x][a] == 0]
            self._inv.append(col[0] if col else 0)

    def add(self, a, b):
        return self._rows[a][b]

    def neg(self, a):
        return self._inv[a]

    def equal(self, a, b):
        return a == b


# --- validation -------------------------------------------------------------

def _as_table(table) -> np.ndarray:
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"table is not an integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValueError(f"table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise ValueError(f"entry [{bad[0]}][{bad[1]}] = {arr[tuple(bad)]} out of range 0..{n - 1}")
    return arr


def find_identity(table) -> int | None:
    T = _as_table(table)
    ar = np.arange(T.shape[0])
    for e in range(T.shape[0]):
        if np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar):
            return e
    return None


def relabel(table, perm: Sequence[int]) -> np.ndarray:
    """Apply the relabeling ``x -> perm[x]`` to a table."""
    T = _as_table(table)
    p = np.asarray(perm)
    out = np.empty_like(T)
    out[np.ix_(p, p)] = p[T]
    return out


def identity_relabeling(e: int, n: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    return tuple(perm)


def check_axioms(table, name: str = "") -> tuple[Report, FiniteGyrogroup | None]:
    """Run G1-G4 on a Cayley table; returns the report and the gyrogroup if valid."""
    T = _as_table(table)
    n = T.shape[0]
    report = Report("validate")
    report.details["n"] = n
    ar = np.arange(n)

    report.checks.append("G1_identity")
    if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
        e = find_identity(T)
        if e is None:
            bad = int(np.argwhere((T[0] != ar) | (T[:, 0] != ar))[0][0])
            return report.fail("G1_identity", (0, bad)), None
        report.details["offered_relabeling"] = list(identity_relabeling(e, n))
        return report.fail("G1_identity_index", (e,)), None

    report.checks.append("G2_inverse")
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        col = np.flatnonzero(T[:, a] == 0)
        both = [int(x) for x in col if T[a, x] == 0]
        if not both:
            return report.fail("G2_inverse", (a,)), None
        inv[a] = both[0]

    # G3: gyr derived by the closed formula, then the law and Aut checks
    report.checks.append("G3_left_gyroassociative")
    A3 = T[ar[:, None, None], T[None, :, :]]            # a + (b + c)
    gyr = T[inv[T][:, :, None], A3]                      # -(a+b) + (a + (b + c))
    rhs = T[T[:, :, None], gyr]                          # (a + b) + gyr[a,b]c
    bad = np.argwhere(rhs != A3)
    if len(bad):
        a, b, c = map(int, bad[0])
        return report.fail("G3_left_gyroassociative", (a, b, c)), None

    report.checks.append("G3_gyr_bijective")
    srt = np.sort(gyr, axis=2)
    bad = np.argwhere((srt != ar).any(axis=2))
    if len(bad):
        a, b = map(int, bad[0])
        return report.fail("G3_gyr_bijective", (a, b)), None

    report.checks.append("G3_gyr_automorphism")
    for a in range(n):
        ga = gyr[a]                                      # [b, c]
        lhs = ga[:, T]                                   # gyr[a,b](c + d)
        rhs = T[ga[:, :, None], ga[:, None, :]]          # gyr(c) + gyr(d)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c, d = map(int, bad[0])
            return report.fail("G3_gyr_automorphism", (a, b, c, d)), None

    report.checks.append("G4_left_loop")
    loop = gyr[T, ar[None, :]]                           # gyr[a+b, b]
    bad = np.argwhere((loop != gyr).any(axis=2))
    if len(bad):
        a, b = map(int, bad[0])
        return report.fail("G4_left_loop", (a, b)), None

    report.checks.append("translations_bijective")
    for axis in (1, 0):
        bad = np.argwhere((np.sort(T, axis=axis) != (ar if axis == 1 else ar[:, None])).any(axis=axis))
        if len(bad):
            return report.fail("translations_bijective", (int(bad[0][0]),), side="left" if axis == 1 else "right"), None

    G = FiniteGyrogroup(T.copy(), inv, gyr, name=name)
    report.details["gyrations"] = sorted(cycle_notation(p) for p in G.gyrations())
    return report, G


def validate(table, name: str = "", *, relabel_identity: bool = False) -> FiniteGyrogroup:
    """Validate a Cayley table and return the gyrogroup; raise on a violated axiom.

    With ``relabel_identity`` an identity found at a nonzero index is swapped
    to 0 and the permutation is recorded on the result.
    """
    T = _as_table(table)
    perm = None
    if relabel_identity:
        e = find_identity(T)
        if e not in (None, 0):
            perm = identity_relabeling(e, T.shape[0])
            T = relabel(T, perm)
    report, G = check_axioms(T, name)
    if G is None:
        raise AxiomViolation(report)
    G.relabeling = perm
    return G


# --- small constructions ----------------------------------------------------

def cyclic_group(n: int, name: str | None = None) -> FiniteGyrogroup:
    ar = np.arange(n)
    return validate((ar[:, None] + ar[None, :]) % n, name or f"Z{n}")


def direct_product(*factors: FiniteGyrogroup, name: str | None = None) -> FiniteGyrogroup:
    """Componentwise product; element index is mixed radix with the last factor fastest."""
    if not factors:
        raise ValueError("need at least one factor")
    return _direct_product(tuple(factors), name or "x".join(f.name or f"G{f.n}" for f in factors))


@lru_cache(maxsize=128)
def _direct_product(factors: tuple[FiniteGyrogroup, ...], name: str) -> FiniteGyrogroup:
    T = factors[0].table
    for F in factors[1:]:
        m = F.n
        T = (T[:, None, :, None] * m + F.table[None, :, None, :]).reshape(T.shape[0] * m, T.shape[0] * m)
    return validate(T, name)


def product_coordinates(sizes: Sequence[int], index: int) -> tuple[int, ...]:
    out = []
    for m in reversed(sizes):
        out.append(index % m)
        index //= m
    return tuple(reversed(out))


def product_index(sizes: Sequence[int], coords: Sequence[int]) -> int:
    idx = 0
    for m, c in zip(sizes, coords):
        idx = idx * m + c
    return idx


def restrict(G: FiniteGyrogroup, H: int) -> tuple[FiniteGyrogroup, list[int]]:
    """The subgyrogroup on the members of mask ``H`` relabeled 0..k-1 (sorted)."""
    if not is_subgyrogroup(G, H):
        raise PreconditionError(Report("restrict").fail("not_a_subgyrogroup", tuple(bits.members(H))))
    elems = bits.members(H)
    pos = {x: i for i, x in enumerate(elems)}
    sub = [[pos[G.add(a, b)] for b in elems] for a in elems]
    return validate(sub, f"{G.name}|{bits.fmt(H)}"), elems


# --- properties -------------------------------------------------------------

def gyrocommutative_witness(G: FiniteGyrogroup) -> tuple[int, int] | None:
    T = G.table
    swapped = np.take_along_axis(G.gyr, T.T[:, :, None], axis=2)[:, :, 0]  # gyr[a,b](b + a)
    bad = np.argwhere(swapped != T)
    return (int(bad[0][0]), int(bad[0][1])) if len(bad) else None


def is_gyrocommutative(G: FiniteGyrogroup) -> bool:
    return gyrocommutative_witness(G) is None


def closure(G: FiniteGyrogroup, generators: Iterable[int]) -> int:
    """Smallest subset containing 0 and the generators closed under + and -."""
    H = bits.mask_of(generators) | 1
    while True:
        new = H | G.sumset(H, H) | G.neg_set(H)
        if new == H:
            return H
        H = new


def is_subgyrogroup(G: FiniteGyrogroup, H: int) -> bool:
    return H & 1 == 1 and bits.is_subset(G.sumset(H, H) | G.neg_set(H), H)


def mask_flags(masks: Sequence[int], n: int) -> np.ndarray:
    arr = np.asarray([int(m) for m in masks], dtype=np.uint64).reshape(-1)
    return ((arr[:, None] >> np.arange(n, dtype=np.uint64)[None, :]) & np.uint64(1)).astype(bool)


def or_select(values: np.ndarray, flags: np.ndarray) -> np.ndarray:
    """``[a, k]`` = OR of values[a, j] over the j with flags[k, j]."""
    if flags.shape[0] == 0:
        return np.zeros((values.shape[0], 0), dtype=np.uint64)
    picked = np.where(flags[None, :, :], values[:, None, :], np.uint64(0))
    return np.bitwise_or.reduce(picked, axis=2)


def _index_array(mask: int) -> np.ndarray:
    return np.fromiter(bits.iter_members(mask), dtype=np.int64)


def _member_flags(n: int, mask: int) -> np.ndarray:
    return np.array([bits.contains(mask, x) for x in range(n)], dtype=bool)


def is_L_subgyrogroup(G: FiniteGyrogroup, H: int) -> bool:
    if not is_subgyrogroup(G, H):
        return False
    hi = _index_array(H)
    return bool(_member_flags(G.n, H)[G.gyr[:, hi][:, :, hi]].all())


def gyr_invariance_witness(G: FiniteGyrogroup, X: int) -> tuple[int, int] | None:
    """First (a, b) with gyr[a,b](X) not inside X."""
    xi = _index_array(X)
    if not len(xi):
        return None
    bad = np.argwhere(~_member_flags(G.n, X)[G.gyr[:, :, xi]].all(axis=2))
    return (int(bad[0][0]), int(bad[0][1])) if len(bad) else None


def is_gyr_invariant(G: FiniteGyrogroup, X: int) -> bool:
    return gyr_invariance_witness(G, X) is None


@dataclass
class NormalityVerdict:
    coset_law: bool
    coset_witness: tuple | None
    gyr_conjugation: bool
    gyr_conjugation_witness: tuple | None
    gyr_invariant: bool


def _first_pair(bad: np.ndarray) -> tuple[int, int] | None:
    hits = np.argwhere(bad)
    return (int(hits[0][0]), int(hits[0][1])) if len(hits) else None


def normality_verdicts(G: FiniteGyrogroup, N: int) -> NormalityVerdict:
    """Evaluate both normality criteria independently.

    Coset law: a+(N+b) = (a+b)+N = (a+N)+b for all a, b.
    Conjugation law: gyr[a,b](N) within N and -(a+b) + ((N+a)+b) = N for all a, b.
    Sets are compared as uint64 bitmasks (carriers up to 64 points).
    """
    if not is_subgyrogroup(G, N):
        raise PreconditionError(Report("is_normal").fail("not_a_subgyrogroup", tuple(bits.members(N))))
    T = G.table
    ni = _index_array(N)

    def masks(vals: np.ndarray, axis: int) -> np.ndarray:
        return np.bitwise_or.reduce(G._pow2[vals], axis=axis)

    NB = T[ni, :]                           # [j, b] = n_j + b
    left = masks(T[:, NB], 1)               # a + (N + b)
    mid = masks(T[:, ni][T], 2)             # (a + b) + N
    right = masks(T[T[:, ni]], 1)           # (a + N) + b
    coset_w = _first_pair((left != mid) | (mid != right))
    inv_w = gyr_invariance_witness(G, N)
    if inv_w is None:
        conj = masks(T[G.inv[T][None, :, :], T[NB]], 0)   # -(a+b) + ((N+a)+b)
        conj_w = _first_pair(conj != np.uint64(N))
    else:
        conj_w = inv_w
    return NormalityVerdict(coset_w is None, coset_w, conj_w is None, conj_w, inv_w is None)


def is_normal(G: FiniteGyrogroup, N: int) -> bool:
    """Normality via both criteria; they must agree."""
    v = normality_verdicts(G, N)
    if v.coset_law != v.gyr_conjugation:
        raise ConsistencyError(Report("is_normal").fail(
            "criteria_disagree", tuple(bits.members(N)),
            coset_law=v.coset_law, gyr_conjugation=v.gyr_conjugation))
    return v.coset_law


@dataclass
class SubgyrogroupInfo:
    members: int
    is_L: bool
    is_normal: bool
    gyr_invariant: bool
    criterion: str = "both"

    @property
    def elements(self) -> list[int]:
        return bits.members(self.members)

    @property
    def order(self) -> int:
        return bits.size(self.members)


def describe_subgyrogroup(G: FiniteGyrogroup, H: int) -> SubgyrogroupInfo:
    return SubgyrogroupInfo(H, is_L_subgyrogroup(G, H), is_normal(G, H), is_gyr_invariant(G, H))


def enumerate_subgyrogroups(G: FiniteGyrogroup, *, bound: int = DEFAULT_SUBSET_BOUND,
                            force: bool = False) -> list[SubgyrogroupInfo]:
    """All subgyrogroups, found by closing generator sets upward from {0}.

    Sorted by (order, members).  Carriers above ``bound`` need ``force``.
    """
    if G.n > bound and not force:
        raise PreconditionError(Report("enumerate_subgyrogroups").fail(
            "bound_exceeded", (G.n, bound)))
    found = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for H in frontier:
            done = H
            for g in G.elements:
                if not bits.contains(done, g):
                    # every g + h generates the same subgyrogroup with H, as g = (g + h) [-] h
                    done |= G.left_shift(g, H)
                    K = closure(G, bits.members(H) + [g])
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
        frontier = nxt
    ordered = sorted(found, key=lambda m: (bits.size(m), bits.members(m)))
    return [describe_subgyrogroup(G, H) for H in ordered]


# --- quotients --------------------------------------------------------------

@dataclass
class Quotient:
    gyrogroup: FiniteGyrogroup
    projection: tuple[int, ...]
    cosets: list[int]
    kernel: int

    def image(self, A: int) -> int:
        return bits.image(A, self.projection)

    def preimage(self, B: int) -> int:
        out = 0
        for x, p in enumerate(self.projection):
            if bits.contains(B, p):
                out |= 1 << x
        return out


def left_cosets(G: FiniteGyrogroup, H: int) -> tuple[list[int], tuple[int, ...]]:
    """Cosets a+H ordered by least member (so H itself is first) and the index map."""
    cosets: list[int] = []
    index = [-1] * G.n
    for a in G.elements:
        if index[a] >= 0:
            continue
        C = G.left_shift(a, H)
        for x in bits.iter_members(C):
            if index[x] >= 0:
                raise PreconditionError(Report("left_cosets").fail("cosets_overlap", (a, x)))
            index[x] = len(cosets)
        cosets.append(C)
    return cosets, tuple(index)


def quotient(G: FiniteGyrogroup, N: int) -> Quotient:
    """Quotient gyrogroup G/N with coset of 0 at index 0."""
    if not is_normal(G, N):
        raise PreconditionError(Report("quotient").fail("not_normal", tuple(bits.members(N))))
    cosets, proj = left_cosets(G, N)
    k = len(cosets)
    reps = [bits.members(C)[0] for C in cosets]
    table = [[proj[G.add(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    p = np.asarray(proj)
    induced = p[G.table]
    expected = np.asarray(table)[p[:, None], p[None, :]]
    bad = np.argwhere(induced != expected)
    if len(bad):
        a, b = map(int, bad[0])
        raise ConsistencyError(Report("quotient").fail("representative_dependence", (a, b)))
    Q = validate(table, f"{G.name}/{bits.fmt(N)}")
    kernel = bits.mask_of(x for x in G.elements if proj[x] == 0)
    if kernel != N:
        raise ConsistencyError(Report("quotient").fail("kernel_mismatch", tuple(bits.members(kernel))))
    if is_gyrocommutative(G) and not is_gyrocommutative(Q):
        raise ConsistencyError(Report("quotient").fail("quotient_not_gyrocommutative",
                                                        gyrocommutative_witness(Q)))
    return Quotient(Q, proj, cosets, kernel)


# --- cyclic subgyrogroups ---------------------------------------------------

@dataclass
class CyclicInfo:
    generator: int
    order: int
    multiples: list[int]
    info: SubgyrogroupInfo = field(repr=False)

    @property
    def members(self) -> list[int]:
        return self.info.elements


def cyclic_subgyrogroup(G: FiniteGyrogroup, a: int) -> CyclicInfo:
    """<a> from the scalar orbit; checks it is an abelian group under +."""
    multiples = [0]
    x = G.add(a, 0)
    while x != 0:
        multiples.append(x)
        x = G.add(a, x)
        if len(multiples) > G.n:
            raise ConsistencyError(Report("cyclic").fail("orbit_does_not_close", (a,)))
    order = len(multiples)
    H = bits.mask_of(multiples)
    for m in range(-2 * order, 2 * order + 1):
        if scalar(G, m, a) != multiples[m % order] or scalar_right(G, a, m) != multiples[m % order]:
            raise ConsistencyError(Report("cyclic").fail("scalar_orbit_mismatch", (a, m)))
    if closure(G, [a]) != H:
        raise ConsistencyError(Report("cyclic").fail("orbit_not_closed", (a,)))
    elems = multiples
    for x, y in itertools.product(elems, repeat=2):
        if G.add(x, y) != G.add(y, x):
            raise ConsistencyError(Report("cyclic").fail("not_commutative", (x, y)))
        for z in elems:
            if G.add(G.add(x, y), z) != G.add(x, G.add(y, z)):
                raise ConsistencyError(Report("cyclic").fail("not_associative", (x, y, z)))
    return CyclicInfo(a, order, multiples, describe_subgyrogroup(G, H))
