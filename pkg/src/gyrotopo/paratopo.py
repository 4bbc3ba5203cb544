"""Paratopological structure of a finite gyrogroup with a finite topology.

Most checks come in two flavours: a fast one through minimal neighbourhoods,
and a literal one quantifying over open sets.  The literal versions serve as
oracles and are capped by the number of opens they will enumerate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bits
from .core import UNBOUNDED, ConsistencyError, HypothesisFailure, PreconditionError, Report
from .finite import (
    FiniteGyrogroup,
    gyr_invariance_witness,
    or_select,
    is_L_subgyrogroup,
    left_cosets,
)
from .topology import FiniteTopology, TooManyOpens, cardinal_report, separation

SEARCH_LIMIT = 512
BASE_LIMIT = 64
CHAIN_LIMIT = 2000


def _same_carrier(G: FiniteGyrogroup, t: FiniteTopology) -> None:
    if G.n != t.n:
        raise PreconditionError(Report("carrier").fail("carrier_mismatch", (G.n, t.n)))


def _nbhds_of_zero(t: FiniteTopology, limit: int = SEARCH_LIMIT) -> list[int] | None:
    """Open neighbourhoods of 0, or None when there are too many to list."""
    try:
        return t.opens_containing(0, limit)
    except TooManyOpens:
        return None


# --- continuity ---------------------------------------------------------------

def _first(found: np.ndarray) -> tuple | None:
    return tuple(int(v) for v in found[0]) if found.size else None


def paratopological_witness(G: FiniteGyrogroup, t: FiniteTopology) -> tuple[int, int] | None:
    """First (x, y) with M_x + M_y not inside M_{x+y}, else None."""
    _same_carrier(G, t)
    M = np.asarray(t.minimal, dtype=np.uint64)
    S = G.sumset_matrix(t.minimal, t.minimal)         # [x, y] = M_x + M_y
    return _first(np.argwhere((S & ~M[G.table]) != 0))


def is_paratopological(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    return paratopological_witness(G, t) is None


def paratopological_by_opens(G: FiniteGyrogroup, t: FiniteTopology) -> tuple[int, int, int] | None:
    """Definitional check: every open O around x+y has opens U, V with U+V in O.

    Returns a violating (x, y, O) or None.
    """
    _same_carrier(G, t)
    opens = t.opens()
    for x, y in itertools.product(G.elements, repeat=2):
        s = G.add(x, y)
        Us = [u for u in opens if bits.contains(u, x)]
        Vs = [v for v in opens if bits.contains(v, y)]
        for O in opens:
            if bits.contains(O, s) and not any(
                    bits.is_subset(G.sumset(u, v), O) for u in Us for v in Vs):
                return (x, y, O)
    return None


def check_paratopological(G: FiniteGyrogroup, t: FiniteTopology) -> Report:
    report = Report("paratopological", checks=["addition_continuous"])
    w = paratopological_witness(G, t)
    if w is not None:
        x, y = w
        M = t.minimal
        report.fail("addition_continuous", w, sum=G.add(x, y),
                    image=bits.fmt(G.sumset(M[x], M[y])), target=bits.fmt(M[G.add(x, y)]))
    return report


def strongly_witness(G: FiniteGyrogroup, t: FiniteTopology) -> tuple[int, int] | None:
    """First (x, y) with gyr[x,y](M_0) != M_0."""
    M0 = t.minimal[0]
    return _first(np.argwhere(G.image_masks(M0, G.gyr) != np.uint64(M0)))


def is_strongly(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    return is_paratopological(G, t) and strongly_witness(G, t) is None


def invariant_open_nbhds(G: FiniteGyrogroup, t: FiniteTopology, limit: int = SEARCH_LIMIT) -> list[int] | None:
    nb = _nbhds_of_zero(t, limit)
    if nb is None:
        return None
    gyrs = [tuple(p) for p in G.gyrations()]
    return [U for U in nb if all(bits.image(U, g) == U for g in gyrs)]


def strongly_by_base(G: FiniteGyrogroup, t: FiniteTopology) -> bool | None:
    """Definitional check: the invariant open neighbourhoods of 0 form a base at 0."""
    inv = invariant_open_nbhds(G, t)
    nb = _nbhds_of_zero(t)
    if inv is None or nb is None:
        return None
    return is_paratopological(G, t) and all(any(bits.is_subset(V, U) for V in inv) for U in nb)


def inverse_witness(G: FiniteGyrogroup, t: FiniteTopology) -> int | None:
    """First x with -M_x not inside M_{-x}."""
    M = t.minimal
    for x in G.elements:
        if not bits.is_subset(G.neg_set(M[x]), M[G.neg(x)]):
            return x
    return None


def is_topological(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    return is_paratopological(G, t) and inverse_witness(G, t) is None


def inverse_continuous_at_zero(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    M0 = t.minimal[0]
    return bits.is_subset(G.neg_set(M0), M0)


def inverse_continuous_by_opens(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    """Oracle: the inverse map (an involution) sends opens to opens."""
    return all(t.is_open(G.neg_set(O)) for O in t.opens())


# --- Hausdorff numbers ----------------------------------------------------------

def hausdorff_number(G: FiniteGyrogroup, t: FiniteTopology) -> float:
    """1 when M [-] M lies in M, else unbounded (M = minimal open nbhd of 0)."""
    M0 = t.minimal[0]
    return 1 if bits.is_subset(G.cosub_set(M0, M0), M0) else UNBOUNDED


def weak_hausdorff_number(G: FiniteGyrogroup, t: FiniteTopology) -> float:
    M0 = t.minimal[0]
    return 1 if bits.is_subset(G.neg_set(M0), M0) else UNBOUNDED


def _search_number(t: FiniteTopology, image, max_family: int = 3, limit: int = SEARCH_LIMIT) -> float | None:
    """Least family size k such that every open nbhd U of 0 has a family of
    open nbhds of 0 of size <= k whose images intersect inside U.

    ``image(V)`` is V [-] V or -V.  Returns None if the opens exceed ``limit``.
    """
    nb = _nbhds_of_zero(t, limit)
    if nb is None:
        return None
    imgs = [image(V) for V in nb]
    everything = t.full
    for im in imgs:
        everything &= im
    worst = 0
    for U in nb:
        if not bits.is_subset(everything, U):
            return UNBOUNDED
        found = None
        for k in range(1, max_family + 1):
            for fam in itertools.combinations(imgs, k):
                inter = t.full
                for im in fam:
                    inter &= im
                if bits.is_subset(inter, U):
                    found = k
                    break
            if found:
                break
        worst = max(worst, found if found else len(imgs))
    return worst


def hausdorff_number_search(G: FiniteGyrogroup, t: FiniteTopology, limit: int = SEARCH_LIMIT) -> float | None:
    return _search_number(t, lambda V: G.cosub_set(V, V), limit=limit)


def weak_hausdorff_number_search(G: FiniteGyrogroup, t: FiniteTopology, limit: int = SEARCH_LIMIT) -> float | None:
    return _search_number(t, G.neg_set, limit=limit)


# --- subordinated families, balance, goodness ----------------------------------

def minimal_sets(family: Sequence[int]) -> list[int]:
    """Inclusion-minimal members (distinct, in first-seen order)."""
    fam = list(dict.fromkeys(int(V) for V in family))
    return [V for V in fam if not any(W != V and bits.is_subset(W, V) for W in fam)]


def _images(bits_table: np.ndarray, sets: Sequence[int]) -> np.ndarray:
    """``[k, x, y]`` = OR of bits_table[x, y, v] over v in sets[k]."""
    out = np.zeros((len(sets),) + bits_table.shape[:2], dtype=np.uint64)
    for k, V in enumerate(sets):
        idx = np.fromiter(bits.iter_members(V), dtype=np.int64)
        if idx.size:
            out[k] = np.bitwise_or.reduce(bits_table[:, :, idx], axis=2)
    return out


def subordination_failure(G: FiniteGyrogroup, gamma: Sequence[int],
                          targets: Sequence[int]) -> tuple | None:
    """First (U, clause, x, y) over the targets U for which no V in gamma works.

    Clause 1 asks phi(V) inside U, clause 2 asks V inside phi(U), which for
    the bijection phi is phi^-1(V) inside U.  Both only get easier as V
    shrinks, so the inclusion-minimal members of gamma are the only
    candidates that need testing.
    """
    cands = minimal_sets(gamma)
    fwd = _images(G.conjugation_bits, cands)                   # [c, x, y] = phi(V)
    back = _images(G.conjugation_inverse_bits, cands)          # [c, x, y] = phi^-1(V)
    for lo in range(0, len(targets), 64):
        chunk = list(targets[lo:lo + 64])
        Um = ~np.asarray(chunk, dtype=np.uint64)[:, None, None, None]
        fail1 = np.all((fwd[None] & Um) != 0, axis=1)
        fail2 = np.all((back[None] & Um) != 0, axis=1)
        bad = np.argwhere(fail1 | fail2)
        if bad.size:
            k, x, y = (int(v) for v in bad[0])
            return (chunk[k], 1 if fail1[k, x, y] else 2, x, y)
    return None


def subordination_witness(G: FiniteGyrogroup, gamma: Sequence[int], U: int) -> tuple | None:
    """First (clause, x, y) for which no V in gamma works, else None."""
    w = subordination_failure(G, gamma, [U])
    return None if w is None else w[1:]


def subordination_witness_loop(G: FiniteGyrogroup, gamma: Sequence[int], U: int) -> tuple | None:
    """Oracle: the same search one conjugation map at a time."""
    for x, y in itertools.product(G.elements, repeat=2):
        phi = G.conjugation_map(x, y)
        if not any(bits.is_subset(bits.image(V, phi), U) for V in gamma):
            return (1, x, y)
        target = bits.image(U, phi)
        if not any(bits.is_subset(V, target) for V in gamma):
            return (2, x, y)
    return None


def is_subordinated(G: FiniteGyrogroup, gamma: Sequence[int], U: int) -> bool:
    return subordination_witness(G, gamma, U) is None


def omega_balanced_witness(G: FiniteGyrogroup, t: FiniteTopology) -> tuple | None:
    """Search a subordinated family of open nbhds of 0 for every nbhd U of 0.

    Tries {M} first, then all open nbhds of 0.  When the opens are too many to
    list, only U = M (the hardest case, as both clauses weaken as U grows) is
    checked.
    """
    M0 = t.minimal[0]
    nb = _nbhds_of_zero(t)
    targets = nb if nb is not None else [M0]
    family = nb if nb is not None else [M0]
    return subordination_failure(G, family, targets)


def is_omega_balanced(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    return omega_balanced_witness(G, t) is None


def is_omega_good(G: FiniteGyrogroup, t: FiniteTopology, V: int) -> bool:
    """Literal check with the family of all open nbhds of 0 (or {M} if too many)."""
    if not t.is_open(V):
        return False
    nb = _nbhds_of_zero(t) or [t.minimal[0]]
    return all(any(bits.is_subset(G.left_shift(x, W), V) for W in nb) for x in bits.iter_members(V))


def good_refinement(G: FiniteGyrogroup, t: FiniteTopology, chain: Sequence[int],
                    max_extra: int | None = None) -> int:
    """V = union of V_n with V_1 = U_1 and V_n = V_{n-1} + U_n.

    ``chain`` is U_0, U_1, ... with U_{k+1} + U_{k+1} inside U_k.  If the last
    member is idempotent the chain is extended by repeating it until V settles.
    """
    chain = [int(u) for u in chain]
    if not chain:
        raise PreconditionError(Report("good_refinement").fail("empty_chain"))
    for k in range(len(chain) - 1):
        if not bits.is_subset(G.sumset(chain[k + 1], chain[k + 1]), chain[k]):
            raise PreconditionError(Report("good_refinement").fail("chain_not_halving", (k,)))
    U0 = chain[0]
    if len(chain) == 1:
        chain = chain + [U0] if bits.is_subset(G.sumset(U0, U0), U0) else chain
    if len(chain) == 1:
        raise PreconditionError(Report("good_refinement").fail("chain_too_short"))
    last = chain[-1]
    repeat = bits.is_subset(G.sumset(last, last), last)
    Vn = chain[1]
    V = Vn
    steps = list(chain[2:])
    extra = max_extra if max_extra is not None else G.n + 1
    i = 0
    while i < len(steps) or (repeat and extra > 0):
        if i < len(steps):
            Un = steps[i]
        else:
            Un = last
            extra -= 1
        nxt = G.sumset(Vn, Un)
        if i >= len(steps) and nxt == Vn:
            break
        Vn = nxt
        V |= Vn
        i += 1
    report = Report("good_refinement")
    if not bits.is_subset(V, U0):
        raise ConsistencyError(report.fail("escapes_U0", tuple(bits.members(V))))
    if not t.is_open(V):
        raise ConsistencyError(report.fail("not_open", tuple(bits.members(V))))
    if not is_omega_good(G, t, V):
        raise ConsistencyError(report.fail("not_omega_good", tuple(bits.members(V))))
    return V


# --- periodicity and 2-pseudocompactness ---------------------------------------

def periodicity_witness(G: FiniteGyrogroup, t: FiniteTopology) -> tuple[int, int] | None:
    """First (x, U) such that no 1 <= n <= |<x>| has n.x in U."""
    nb = _nbhds_of_zero(t) or [t.minimal[0]]
    for x in G.elements:
        orbit = 1                            # n.x = x + (n-1).x returns to 0 at n = |<x>|
        m = G.add(x, 0)
        while m != 0:
            orbit |= 1 << m
            m = G.add(x, m)
        U = next((U for U in nb if not U & orbit), None)
        if U is not None:
            return (x, U)
    return None


def is_topologically_periodic(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    return periodicity_witness(G, t) is None


def two_pseudocompact_witness(G: FiniteGyrogroup, t: FiniteTopology,
                              chain_limit: int = CHAIN_LIMIT) -> tuple | None:
    """First maximal strictly decreasing chain of nonempty opens with
    empty intersection of the closures of their negatives.

    Enumerates maximal chains by depth-first search.  If there are more than
    ``chain_limit`` chains it falls back to checking every nonempty open as a
    chain bottom, which suffices because cl(-U) shrinks along a chain.
    """
    try:
        opens = [o for o in t.opens(SEARCH_LIMIT) if o]
    except TooManyOpens:
        opens = None
    cl_neg = {}

    def cln(O):
        if O not in cl_neg:
            cl_neg[O] = t.closure(G.neg_set(O))
        return cl_neg[O]

    cover_cache: dict[int, list[int]] = {}

    def covers(O):
        # maximal proper open subsets of O are among the interiors of O - {x}
        if O not in cover_cache:
            cands = {t.interior(O & ~(1 << x)) for x in bits.iter_members(O)} - {0}
            cover_cache[O] = sorted(P for P in cands if not any(P != Q and bits.is_subset(P, Q) for Q in cands))
        return cover_cache[O]

    if opens is not None:
        tops = [t.full] if t.n else []
        count = 0
        stack = [(O, (O,), cln(O)) for O in tops]
        while stack:
            O, path, inter = stack.pop()
            nxt = covers(O)
            if not nxt:
                count += 1
                if inter == 0:
                    return path
                if count > chain_limit:
                    break
                continue
            for P in nxt:
                stack.append((P, path + (P,), inter & cln(P)))
        else:
            return None
    for x in G.elements:
        O = t.minimal[x]
        if cln(O) == 0:
            return (O,)
    return None


def is_two_pseudocompact(G: FiniteGyrogroup, t: FiniteTopology) -> bool:
    return two_pseudocompact_witness(G, t) is None


# --- classification -------------------------------------------------------------

@dataclass
class Classification:
    is_paratopological: bool
    is_strongly: bool
    is_topological: bool
    inverse_continuous_at_zero: bool
    separation: str
    hs: float | None
    whs: float | None
    omega_balanced: bool | None
    topologically_periodic: bool
    two_pseudocompact: bool
    cardinals: tuple[int, int, int]
    witnesses: dict = field(default_factory=dict)

    def as_details(self) -> dict:
        return {
            "paratopological": self.is_paratopological,
            "strongly": self.is_strongly,
            "topological": self.is_topological,
            "inverse_continuous_at_zero": self.inverse_continuous_at_zero,
            "separation": self.separation,
            "hs": self.hs,
            "whs": self.whs,
            "omega_balanced": self.omega_balanced,
            "topologically_periodic": self.topologically_periodic,
            "two_pseudocompact": self.two_pseudocompact,
            "character": self.cardinals[0],
            "pseudocharacter": self.cardinals[1],
            "lindelof": self.cardinals[2],
            "witnesses": self.witnesses,
        }


def classify(G: FiniteGyrogroup, t: FiniteTopology) -> Classification:
    _same_carrier(G, t)
    witnesses: dict = {}
    pw = paratopological_witness(G, t)
    para = pw is None
    if not para:
        witnesses["paratopological"] = pw
    strong = para and strongly_witness(G, t) is None
    iw = inverse_witness(G, t)
    topo = para and iw is None
    if para and iw is not None:
        witnesses["topological"] = iw
    hs = hausdorff_number(G, t) if para else None
    whs = weak_hausdorff_number(G, t) if para else None
    bal = is_omega_balanced(G, t) if para else None
    card = cardinal_report(t)
    return Classification(
        is_paratopological=para,
        is_strongly=strong,
        is_topological=topo,
        inverse_continuous_at_zero=inverse_continuous_at_zero(G, t),
        separation=separation(t),
        hs=hs,
        whs=whs,
        omega_balanced=bal,
        topologically_periodic=is_topologically_periodic(G, t),
        two_pseudocompact=is_two_pseudocompact(G, t),
        cardinals=(card.character, card.pseudocharacter, card.lindelof),
        witnesses=witnesses,
    )


def classify_report(G: FiniteGyrogroup, t: FiniteTopology) -> Report:
    """Classification plus the internal cross-checks that must always hold."""
    c = classify(G, t)
    report = Report("classify")
    report.details.update(c.as_details())
    report.details["min_subcover"] = cardinal_report(t).min_subcover
    report.checks += ["implications", "strongly_inverse_agreement", "hs_oracle", "chain_whs_psi_chi"]
    if c.is_topological and not c.is_paratopological or c.is_strongly and not c.is_paratopological:
        return report.fail("implications")
    if c.is_strongly and c.is_topological != c.inverse_continuous_at_zero:
        return report.fail("strongly_inverse_agreement")
    if c.is_paratopological:
        hs_s = hausdorff_number_search(G, t)
        whs_s = weak_hausdorff_number_search(G, t)
        if hs_s is not None and (hs_s != c.hs or whs_s != c.whs):
            return report.fail("hs_oracle", (), search=(hs_s, whs_s))
        if c.whs is not None and not c.whs <= c.cardinals[1] <= c.cardinals[0]:
            return report.fail("chain_whs_psi_chi")
    return report


# --- topology generation ---------------------------------------------------------

GENERATION_CONDITIONS = ("1_halving", "2_translation", "3_subordinated", "4_directed", "5_invariant")


def generation_condition_witness(G: FiniteGyrogroup, family: Sequence[int]) -> tuple[str, tuple] | None:
    """First failing generation condition (1)-(5) with a witness."""
    fam = list(dict.fromkeys(int(U) for U in family))
    if not fam:
        return ("nonempty", ())
    for U in fam:
        if not bits.contains(U, 0):
            return ("contains_identity", tuple(bits.members(U)))
    w = base_condition_witness(G, fam)
    if w is not None:
        return w
    for U in fam:
        w = gyr_invariance_witness(G, U)
        if w is not None:
            return (GENERATION_CONDITIONS[4], (tuple(bits.members(U)),) + w)
    return None


def base_condition_witness(G: FiniteGyrogroup, fam: Sequence[int]) -> tuple[str, tuple] | None:
    """First failing condition among (1)-(4) for a family of nbhds of 0.

    Each condition asks for some member V small enough, so only the
    inclusion-minimal members are tried as V.
    """
    fam = list(dict.fromkeys(int(U) for U in fam))
    cand = minimal_sets(fam)
    F = np.asarray(fam, dtype=np.uint64)
    Cm = np.asarray(cand, dtype=np.uint64)
    halves = np.diagonal(G.sumset_matrix(cand, cand))                 # V + V
    ok = ((halves[None, :] & ~F[:, None]) == 0).any(axis=1)            # [U]
    if not ok.all():
        U = fam[int(np.flatnonzero(~ok)[0])]
        return (GENERATION_CONDITIONS[0], tuple(bits.members(U)))
    R = G.translate_masks(cand)                                        # [x, V] = x + V
    inside = ((R[None, :, :] & ~F[:, None, None]) == 0).any(axis=2)   # [U, x]
    bad = np.argwhere(G.flags(fam) & ~inside)
    if bad.size:
        k, x = (int(v) for v in bad[0])
        return (GENERATION_CONDITIONS[1], (tuple(bits.members(fam[k])), x))
    w = subordination_failure(G, fam, fam)
    if w is not None:
        return (GENERATION_CONDITIONS[2], (tuple(bits.members(w[0])),) + w[1:])
    for i, U in enumerate(fam):
        both = F[i] & F                                                # U & V for every V
        ok = ((Cm[None, :] & ~both[:, None]) == 0).any(axis=1)
        if not ok.all():
            V = fam[int(np.flatnonzero(~ok)[0])]
            return (GENERATION_CONDITIONS[3], (tuple(bits.members(U)), tuple(bits.members(V))))
    return None


def in_generated_topology(G: FiniteGyrogroup, family: Sequence[int], W: int) -> bool:
    """Membership test for {W : every x in W has some U with x + U inside W}."""
    return all(any(bits.is_subset(G.left_shift(x, U), W) for U in family) for x in bits.iter_members(W))


def generate_topology(G: FiniteGyrogroup, family: Iterable[int]) -> FiniteTopology:
    """Topology with base {a + U}, checked and certified.

    Raises HypothesisFailure naming the failed condition.
    """
    fam = list(dict.fromkeys(int(U) for U in family))
    w = generation_condition_witness(G, fam)
    if w is not None:
        raise HypothesisFailure(Report("generate_topology").fail(f"condition_{w[0]}", w[1]))
    R = G.translate_masks(fam)                          # [x, k] = x + U_k
    minimal = [int(m) for m in np.bitwise_and.reduce(R, axis=1)]
    report = Report("generate_topology")
    for x, m in enumerate(minimal):
        if not in_generated_topology(G, fam, m):
            raise ConsistencyError(report.fail("minimal_not_open", (x,)))
    t = FiniteTopology(G.n, minimal)
    hull = or_select(np.asarray(minimal, dtype=np.uint64)[None, :], G.flags(R.ravel()))[0]
    bad = np.flatnonzero(hull != R.ravel())
    if bad.size:
        a, k = divmod(int(bad[0]), len(fam))
        raise ConsistencyError(report.fail("base_member_not_open", (a, tuple(bits.members(fam[k])))))
    pw = paratopological_witness(G, t)
    if pw is not None:
        raise ConsistencyError(report.fail("addition_not_continuous", pw))
    if not all(t.is_open(U) for U in fam) or not any(bits.is_subset(U, t.minimal[0]) for U in fam):
        raise ConsistencyError(report.fail("family_not_base_at_zero"))
    if strongly_witness(G, t) is not None:
        raise ConsistencyError(report.fail("not_strongly", strongly_witness(G, t)))
    return t


def generate_topology_bruteforce(G: FiniteGyrogroup, family: Sequence[int]) -> list[int]:
    """Oracle: test the defining condition on all 2^n subsets."""
    fam = list(family)
    return [W for W in range(1 << G.n) if in_generated_topology(G, fam, W)]


# --- base properties and lemmas for strongly instances ---------------------------

def _base_family(G: FiniteGyrogroup, t: FiniteTopology, limit: int = BASE_LIMIT) -> tuple[list[int], bool]:
    """Invariant open nbhds of 0 (truncated to ``limit``, M always first)."""
    inv = invariant_open_nbhds(G, t)
    M0 = t.minimal[0]
    if inv is None:
        return [M0], True
    inv = sorted(inv, key=lambda U: (bits.size(U), U))
    if M0 in inv:
        inv.remove(M0)
    fam = [M0] + inv
    return fam[:limit], len(fam) > limit


def base_properties(G: FiniteGyrogroup, t: FiniteTopology) -> Report:
    """Base-at-0 properties (1)-(4) and the generation round trip."""
    report = Report("base_properties")
    pre = check_paratopological(G, t)
    if not pre.passed:
        raise PreconditionError(pre)
    nb = _nbhds_of_zero(t) or [t.minimal[0]]
    report.details["base_size"] = len(nb)
    report.checks += list(GENERATION_CONDITIONS[:4])
    w = base_condition_witness(G, nb)
    if w is not None:
        return report.fail(w[0], w[1])
    report.checks.append("round_trip")
    if strongly_witness(G, t) is None:
        fam, truncated = _base_family(G, t)
        back = generate_topology(G, fam)
        report.details["round_trip_family"] = [bits.fmt(U) for U in fam]
        report.details["round_trip_opens"] = back.count_opens() if G.n <= 20 else None
        if back != t:
            return report.fail("round_trip", ())
        report.details["round_trip"] = "reproduced"
    else:
        report.details["round_trip"] = "skipped_not_strongly"
    return report


def strongly_lemmas(G: FiniteGyrogroup, t: FiniteTopology) -> Report:
    """Translation-associativity, negated sums, and closure containment on the invariant base."""
    if not is_strongly(G, t):
        raise PreconditionError(Report("strongly_lemmas").fail("not_strongly", strongly_witness(G, t) or ()))
    fam, truncated = _base_family(G, t)
    report = Report("strongly_lemmas", checks=["translation_associativity", "negated_sums", "closure_containment"])
    report.details["base_size"] = len(fam)
    if truncated:
        report.notes.append(f"base truncated to {len(fam)} sets")
    T = G.table
    F = np.asarray(fam, dtype=np.uint64)
    S = G.sumset_matrix(fam, fam)                     # [i, j] = U_i + U_j
    R = G.translate_masks(fam)                        # [u, j] = u + U_j
    flags = G.flags(fam)
    for j, W in enumerate(fam):
        lhs = or_select(R[:, j][T], flags)             # [a, i] = (a + U_i) + W
        rhs = or_select(G.shift_bits, G.flags(S[:, j]))  # [a, i] = a + (U_i + W)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            a, i = (int(v) for v in bad[0])
            return report.fail("translation_associativity", (a, bits.fmt(fam[i]), bits.fmt(W)))
    negs = [G.neg_set(U) for U in fam]
    nF = np.asarray(negs, dtype=np.uint64)
    L = G.sumset_matrix(negs, negs).T                 # [i, j] = (-U_j) + (-U_i)
    # U + V inside W must force (-V) + (-U) inside -W
    bad = np.argwhere(((S[:, :, None] & ~F[None, None, :]) == 0) & ((L[:, :, None] & ~nF[None, None, :]) != 0))
    if bad.size:
        i, j, k = (int(v) for v in bad[0])
        return report.fail("negated_sums", (bits.fmt(fam[i]), bits.fmt(fam[j]), bits.fmt(fam[k])))
    halves = np.diagonal(S)
    cl = np.asarray([G.neg_set(t.closure(nv)) for nv in negs], dtype=np.uint64)   # -cl(-V)
    bad = np.argwhere(((halves[None, :] & ~F[:, None]) == 0) & ((cl[None, :] & ~F[:, None]) != 0))
    if bad.size:
        i, j = (int(v) for v in bad[0])
        return report.fail("closure_containment", (bits.fmt(fam[i]), bits.fmt(fam[j])))
    return report


# --- coset spaces -----------------------------------------------------------------

@dataclass
class CosetSpace:
    cosets: list[int]
    projection: tuple[int, ...]
    topology: FiniteTopology

    def image(self, A: int) -> int:
        return bits.image(A, self.projection)

    def preimage(self, B: int) -> int:
        out = 0
        for x, p in enumerate(self.projection):
            if bits.contains(B, p):
                out |= 1 << x
        return out


def quotient_topology(G: FiniteGyrogroup, t: FiniteTopology, H: int) -> CosetSpace:
    """Coset space G/H with the quotient topology; projection certified open and continuous."""
    _same_carrier(G, t)
    if not is_L_subgyrogroup(G, H):
        raise PreconditionError(Report("quotient_topology").fail("not_L_subgyrogroup", tuple(bits.members(H))))
    cosets, proj = left_cosets(G, H)
    space = CosetSpace(cosets, proj, FiniteTopology.indiscrete(len(cosets)))

    def saturate(A: int) -> int:
        return space.preimage(space.image(A))

    minimal = []
    for C in cosets:
        S = C
        while True:
            nxt = saturate(t.open_hull(S))
            if nxt == S:
                break
            S = nxt
        minimal.append(space.image(S))
    space.topology = FiniteTopology(len(cosets), minimal)
    report = Report("quotient_topology")
    for i, m in enumerate(minimal):
        if not t.is_open(space.preimage(m)):
            raise ConsistencyError(report.fail("projection_not_continuous", (i,)))
    for x in G.elements:
        if not space.topology.is_open(space.image(t.minimal[x])):
            raise ConsistencyError(report.fail("projection_not_open", (x,)))
    return space


def quotient_topology_by_opens(G: FiniteGyrogroup, t: FiniteTopology, H: int) -> list[int]:
    """Oracle: all subsets O of cosets with open preimage (small quotients)."""
    cosets, proj = left_cosets(G, H)
    k = len(cosets)
    out = []
    for O in range(1 << k):
        pre = 0
        for i in bits.iter_members(O):
            pre |= cosets[i]
        if t.is_open(pre):
            out.append(O)
    return out
