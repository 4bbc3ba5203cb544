"""Invariant cores, projective refinement, products and diagonal embeddings.

The refinement follows the inductive family construction: starting from an
invariant open neighbourhood inside U0 it keeps adding witnesses for the
halving, subordination, translation (and, for T1/T2, separation) conditions,
closes under intersections, and stops at the set-theoretic fixed point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import bits
from .core import ConsistencyError, HypothesisFailure, PreconditionError, Report
from .finite import (
    FiniteGyrogroup,
    Quotient,
    direct_product,
    is_gyr_invariant,
    is_gyrocommutative,
    is_normal,
    is_subgyrogroup,
    normality_verdicts,
    quotient,
    restrict,
)
from .paratopo import (
    generate_topology,
    generation_condition_witness,
    hausdorff_number,
    invariant_open_nbhds,
    is_omega_balanced,
    is_omega_good,
    is_strongly,
    paratopological_witness,
    subordination_witness,
    weak_hausdorff_number,
)
from .topology import FiniteTopology, separation, separation_at_least

MODES = ("T0", "T1", "T2")
PRODUCT_LIMIT = 64


def _fmt_family(gamma: Sequence[int]) -> list[str]:
    return [bits.fmt(U) for U in gamma]


def _intersection(sets: Sequence[int], full: int) -> int:
    out = full
    for s in sets:
        out &= s
    return out


# --- invariant core -------------------------------------------------------------

@dataclass
class CoreCertificate:
    core: int
    variant: str
    equals_intersection: bool | None
    closed: bool | None
    hypotheses: dict


def core_hypotheses(G: FiniteGyrogroup, gamma: Sequence[int]) -> dict[str, tuple | None]:
    """Witness (or None) for each of the conditions (a)-(d) on ``gamma``."""
    gamma = list(gamma)
    out: dict[str, tuple | None] = {}
    out["a_halving"] = next((tuple(bits.members(U)) for U in gamma
                             if not any(bits.is_subset(G.sumset(V, V), U) for V in gamma)), None)
    w = None
    for U in gamma:
        for x, y in itertools.product(G.elements, repeat=2):
            if not any(bits.is_subset(G.gyr_set(x, y, V), U) for V in gamma):
                w = (tuple(bits.members(U)), x, y)
                break
        if w:
            break
    out["b_gyr_refinement"] = w
    w = None
    for U in gamma:
        s = subordination_witness(G, gamma, U)
        if s is not None:
            w = (tuple(bits.members(U)),) + s
            break
    out["c_subordinated"] = w
    neg_int = _intersection([G.neg_set(V) for V in gamma], G.full)
    out["d_negatives"] = next((tuple(bits.members(U)) for U in gamma
                               if not bits.is_subset(neg_int, U)), None)
    return out


def invariant_core(G: FiniteGyrogroup, gamma: Sequence[int], t: FiniteTopology | None = None) -> CoreCertificate:
    """N = intersection of U and -U over gamma, certified invariant.

    Uses the (d) variant when (d) holds and otherwise demands a
    gyrocommutative G.  Raises HypothesisFailure naming the failed clause.
    """
    gamma = list(dict.fromkeys(int(U) for U in gamma))
    if not gamma:
        raise HypothesisFailure(Report("invariant_core").fail("empty_family"))
    if t is not None:
        M0 = t.minimal[0]
        bad = next((U for U in gamma if not bits.is_subset(M0, U)), None)
        if bad is not None:
            raise HypothesisFailure(Report("invariant_core").fail("not_a_neighbourhood", tuple(bits.members(bad))))
    hyp = core_hypotheses(G, gamma)
    for clause in ("a_halving", "b_gyr_refinement", "c_subordinated"):
        if hyp[clause] is not None:
            raise HypothesisFailure(Report("invariant_core").fail(clause, hyp[clause]))
    with_d = hyp["d_negatives"] is None
    if not with_d and not is_gyrocommutative(G):
        raise HypothesisFailure(Report("invariant_core").fail("gyrocommutative", ()))
    N = _intersection([U & G.neg_set(U) for U in gamma], G.full)
    report = Report("invariant_core")
    if not is_subgyrogroup(G, N):
        raise ConsistencyError(report.fail("core_not_subgyrogroup", tuple(bits.members(N))))
    if not all(G.gyr_set(x, y, N) == N for x in G.elements for y in G.elements):
        raise ConsistencyError(report.fail("core_not_gyr_invariant", tuple(bits.members(N))))
    if not normality_verdicts(G, N).gyr_conjugation or not is_normal(G, N):
        raise ConsistencyError(report.fail("core_not_normal", tuple(bits.members(N))))
    equals = closed = None
    if with_d:
        equals = N == _intersection(gamma, G.full)
        if not equals:
            raise ConsistencyError(report.fail("core_not_intersection", tuple(bits.members(N))))
        if t is not None:
            closed = t.is_closed(N)
            if not closed:
                raise ConsistencyError(report.fail("core_not_closed", tuple(bits.members(N))))
    return CoreCertificate(N, "d_variant" if with_d else "gyrocommutative", equals, closed,
                           {k: v for k, v in hyp.items()})


# --- projective refinement ---------------------------------------------------------

@dataclass
class RefinementResult:
    mode: str
    u0: int
    feasible: bool
    certified: bool
    gamma: list[int] = field(default_factory=list)
    u0_star: int | None = None
    core: int | None = None
    quotient: Quotient | None = None
    quotient_topology: FiniteTopology | None = None
    v0: int | None = None
    iterations: int = 0
    report: Report = field(default_factory=lambda: Report("refine"))

    @property
    def projection(self) -> tuple[int, ...] | None:
        return self.quotient.projection if self.quotient else None


def largest_invariant_open_inside(G: FiniteGyrogroup, t: FiniteTopology, A: int) -> int:
    """Largest open set inside A fixed setwise by every gyration."""
    gyrs = [tuple(p) for p in G.gyrations()]
    S = A
    while True:
        S_inv = S
        for x in bits.members(S):
            if any(not bits.contains(S, g[x]) for g in gyrs):
                S_inv &= ~(1 << x)
        nxt = t.interior(S_inv)
        if nxt == S:
            return S
        S = nxt


def _pick(pool: Sequence[int], ok: Callable[[int], bool]) -> int | None:
    best = None
    for V in pool:
        if ok(V) and (best is None or (bits.size(V), -V) > (bits.size(best), -best)):
            best = V
    return best


def _close_intersections(family: set[int]) -> set[int]:
    fam = set(family)
    while True:
        new = {a & b for a in fam for b in fam} | fam
        if new == fam:
            return fam
        fam = new


def projective_refine(G: FiniteGyrogroup, t: FiniteTopology, U0: int, mode: str = "T0",
                      *, hs: Callable = hausdorff_number, whs: Callable = weak_hausdorff_number,
                      max_iterations: int = 64) -> RefinementResult:
    """Build a continuous open homomorphism p onto a first-countable quotient
    of the requested separation level with p^-1(V0) inside U0.
    """
    mode = mode.upper()
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not is_strongly(G, t):
        raise PreconditionError(Report("refine").fail("not_strongly_paratopological"))
    M0 = t.minimal[0]
    if not bits.is_subset(M0, U0):
        raise PreconditionError(Report("refine").fail("u0_not_neighbourhood", tuple(bits.members(U0))))
    result = RefinementResult(mode, U0, feasible=True, certified=False)
    report = result.report
    report.details.update(mode=mode, u0=bits.fmt(U0))

    needed = {"T1": ("whs", whs), "T2": ("hs", hs)}.get(mode)
    if needed is not None:
        value = needed[1](G, t)
        report.details[needed[0]] = value
        if value != 1:
            result.feasible = False
            report.fail("infeasible", (), reason=f"{needed[0]} is {value}, mode {mode} needs 1")
            return result

    pool = invariant_open_nbhds(G, t)
    if pool is None:
        pool = []
    pool = [V for V in pool if is_omega_good(G, t, V)]
    u0_star = largest_invariant_open_inside(G, t, U0)
    for extra in (M0, u0_star):
        if extra not in pool:
            pool.append(extra)
    result.u0_star = u0_star
    report.details["u0_star"] = bits.fmt(u0_star)
    report.details["pool_size"] = len(pool)

    conj = {(x, y): G.conjugation_map(x, y) for x in G.elements for y in G.elements}

    def witnesses_for(U: int) -> set[int]:
        picks = set()
        choices: list[tuple[str, Callable[[int], bool]]] = [
            ("iv_halving", lambda V: bits.is_subset(G.sumset(V, V), U))]
        for (x, y), phi in conj.items():
            target = bits.image(U, phi)
            choices.append((f"v_subordinated[{x},{y}]",
                            lambda V, phi=phi, target=target:
                            bits.is_subset(bits.image(V, phi), U) and bits.is_subset(V, target)))
        for x in bits.iter_members(U):
            choices.append((f"vi_translation[{x}]", lambda V, x=x: bits.is_subset(G.left_shift(x, V), U)))
        if mode == "T1":
            choices.append(("viii_negatives", lambda V: bits.is_subset(G.neg_set(V), U)))
        elif mode == "T2":
            choices.append(("viii_cosub", lambda V: bits.is_subset(G.cosub_set(V, V), U)))
        for name, ok in choices:
            V = _pick(pool, ok)
            if V is None:
                raise HypothesisFailure(Report("refine").fail(name, tuple(bits.members(U))))
            picks.add(V)
        return picks

    gamma = {u0_star}
    cache: dict[int, set[int]] = {}
    for it in range(1, max_iterations + 1):
        new = set(gamma)
        for U in gamma:
            if U not in cache:
                cache[U] = witnesses_for(U)
            new |= cache[U]
        new = _close_intersections(new)
        result.iterations = it
        if new == gamma:
            break
        gamma = new
    else:
        raise ConsistencyError(report.fail("no_fixed_point", ()))
    result.gamma = sorted(gamma, key=lambda U: (bits.size(U), U))
    report.details["gamma"] = _fmt_family(result.gamma)
    report.details["iterations"] = result.iterations

    report.checks.append("family_conditions")
    w = _family_conditions(G, result.gamma, mode)
    if w is not None:
        return _fail(result, "family_conditions", w)

    cert = invariant_core(G, result.gamma, t)
    N = cert.core
    result.core = N
    report.details["core"] = bits.fmt(N)
    report.details["core_variant"] = cert.variant
    Q = quotient(G, N)
    result.quotient = Q
    H = Q.gyrogroup
    base = sorted({Q.image(V) for V in result.gamma})
    report.details["quotient_order"] = H.n
    report.details["quotient_base"] = _fmt_family(base)

    report.checks.append("quotient_base_conditions")
    w = generation_condition_witness(H, base)
    if w is not None:
        return _fail(result, "quotient_base_conditions", w)
    tH = generate_topology(H, base)
    result.quotient_topology = tH

    report.checks += ["homomorphism", "continuous", "open", "separation", "preimage_containment"]
    p = Q.projection
    bad = next(((a, b) for a in G.elements for b in G.elements
                if p[G.add(a, b)] != H.add(p[a], p[b])), None)
    if bad:
        return _fail(result, "homomorphism", bad)
    bad = next((h for h in H.elements if not t.is_open(Q.preimage(tH.minimal[h]))), None)
    if bad is not None:
        return _fail(result, "continuous", (bad,))
    bad = next((x for x in G.elements if not tH.is_open(Q.image(t.minimal[x]))), None)
    if bad is not None:
        return _fail(result, "open", (bad,))
    sep = separation(tH)
    report.details["quotient_separation"] = sep
    if not separation_at_least(sep, mode):
        return _fail(result, "separation", (sep,))
    U = _pick(result.gamma, lambda V: bits.is_subset(G.sumset(V, V), u0_star))
    if U is None:
        return _fail(result, "preimage_containment", ("no U with U+U inside U0*",))
    V0 = Q.image(U)
    result.v0 = V0
    pre = Q.preimage(V0)
    report.details["v0"] = bits.fmt(V0)
    report.details["preimage_v0"] = bits.fmt(pre)
    if not bits.is_subset(pre, U0):
        return _fail(result, "preimage_containment", tuple(bits.members(pre)))
    result.certified = True
    return result


def _fail(result: RefinementResult, name: str, witness) -> RefinementResult:
    result.report.fail(name, witness)
    return result


def _family_conditions(G: FiniteGyrogroup, gamma: list[int], mode: str) -> tuple | None:
    """Conditions (iii)-(viii) on the fixed-point family."""
    gset = set(gamma)
    for U, V in itertools.product(gamma, repeat=2):
        if U & V not in gset:
            return ("iii_intersections", bits.fmt(U), bits.fmt(V))
    for U in gamma:
        if not any(bits.is_subset(G.sumset(V, V), U) for V in gamma):
            return ("iv_halving", bits.fmt(U))
        s = subordination_witness(G, gamma, U)
        if s is not None:
            return ("v_subordinated", bits.fmt(U)) + s
        for x in bits.iter_members(U):
            if not any(bits.is_subset(G.left_shift(x, V), U) for V in gamma):
                return ("vi_translation", bits.fmt(U), x)
        if not is_gyr_invariant(G, U):
            return ("vii_invariant", bits.fmt(U))
    if mode == "T1":
        inter = _intersection([G.neg_set(V) for V in gamma], G.full)
    elif mode == "T2":
        inter = _intersection([G.cosub_set(V, V) for V in gamma], G.full)
    else:
        return None
    bad = next((U for U in gamma if not bits.is_subset(inter, U)), None)
    return ("viii_separation", bits.fmt(bad)) if bad is not None else None


# --- products and subspaces ---------------------------------------------------------

@dataclass
class Instance:
    gyrogroup: FiniteGyrogroup
    topology: FiniteTopology
    name: str = ""

    def __post_init__(self):
        if self.gyrogroup.n != self.topology.n:
            raise PreconditionError(Report("instance").fail(
                "carrier_mismatch", (self.gyrogroup.n, self.topology.n)))
        if not self.name:
            self.name = self.gyrogroup.name


def product_instance(instances: Sequence[Instance], limit: int = PRODUCT_LIMIT) -> Instance:
    """Componentwise gyrogroup with the product topology (last factor fastest)."""
    if not instances:
        raise PreconditionError(Report("product").fail("no_factors"))
    size = 1
    for inst in instances:
        size *= inst.gyrogroup.n
    if size > limit:
        raise PreconditionError(Report("product").fail("size_bound_exceeded", (size, limit)))
    if len(instances) == 1:
        return instances[0]
    G = direct_product(*(i.gyrogroup for i in instances))
    t = instances[0].topology
    for inst in instances[1:]:
        t = t.product(inst.topology)
    return Instance(G, t, " x ".join(i.name for i in instances))


def product_report(instances: Sequence[Instance], limit: int = PRODUCT_LIMIT) -> tuple[Instance, Report]:
    """Build the product and certify the preservation results on it."""
    P = product_instance(instances, limit)
    report = Report("product", checks=["paratopological", "omega_balanced", "hs_bound", "whs_bound"])
    report.details["order"] = P.gyrogroup.n
    factors_para = all(paratopological_witness(i.gyrogroup, i.topology) is None for i in instances)
    para = paratopological_witness(P.gyrogroup, P.topology) is None
    report.details["paratopological"] = para
    if factors_para and not para:
        return P, report.fail("paratopological", paratopological_witness(P.gyrogroup, P.topology))
    if not para:
        return P, report
    bal = is_omega_balanced(P.gyrogroup, P.topology)
    report.details["omega_balanced"] = bal
    if all(is_omega_balanced(i.gyrogroup, i.topology) for i in instances) and not bal:
        return P, report.fail("omega_balanced")
    for key, fn in (("hs", hausdorff_number), ("whs", weak_hausdorff_number)):
        value = fn(P.gyrogroup, P.topology)
        bound = max(fn(i.gyrogroup, i.topology) for i in instances)
        report.details[key] = value
        if value > bound:
            return P, report.fail(f"{key}_bound", (value, bound))
    return P, report


def subgyrogroup_instance(inst: Instance, K: int) -> Instance:
    """Subgyrogroup K with the subspace topology, relabeled 0..|K|-1."""
    sub, elems = restrict(inst.gyrogroup, K)
    t, elems2 = inst.topology.subspace(K)
    assert elems == elems2
    return Instance(sub, t, f"{inst.name}|{bits.fmt(K)}")


# --- diagonal embedding ---------------------------------------------------------------

@dataclass
class EmbeddingReport:
    injective: bool
    kernel_witness: int | None
    homomorphism: bool
    continuous: bool
    open_onto_image: bool
    image_subgyrogroup: bool
    images: list[tuple[int, ...]]

    @property
    def embedding(self) -> bool:
        return (self.injective and self.homomorphism and self.continuous
                and self.open_onto_image and self.image_subgyrogroup)


def diagonal_embedding(G: FiniteGyrogroup, t: FiniteTopology,
                       results: Sequence[RefinementResult]) -> EmbeddingReport:
    """The map x -> (p_i(x))_i into the product of the quotients."""
    parts = [r for r in results if r.certified and r.quotient is not None]
    if not parts:
        raise PreconditionError(Report("embed").fail("no_certified_quotients"))
    ps = [r.quotient.projection for r in parts]
    Hs = [r.quotient.gyrogroup for r in parts]
    tHs = [r.quotient_topology for r in parts]
    h = [tuple(p[x] for p in ps) for x in G.elements]

    kernel = _intersection([r.core for r in parts], G.full)
    injective = len(set(h)) == G.n
    if injective != (kernel == 1):
        raise ConsistencyError(Report("embed").fail("kernel_injectivity_disagree", tuple(bits.members(kernel))))
    witness = next((x for x in bits.iter_members(kernel) if x != 0), None)

    def add(u, v):
        return tuple(H.add(a, b) for H, a, b in zip(Hs, u, v))

    def neg(u):
        return tuple(H.neg(a) for H, a in zip(Hs, u))

    hom = all(h[G.add(a, b)] == add(h[a], h[b]) for a in G.elements for b in G.elements)
    image = set(h)
    sub = all(add(u, v) in image for u in image for v in image) and all(neg(u) in image for u in image)
    cont = all(all(bits.is_subset(bits.image(t.minimal[x], p), tH.minimal[p[x]]) for p, tH in zip(ps, tHs))
               for x in G.elements)
    opn = True
    for x in G.elements:
        pre = G.full
        for p, tH in zip(ps, tHs):
            m = tH.minimal[p[x]]
            pre &= bits.mask_of(y for y in G.elements if bits.contains(m, p[y]))
        if not bits.is_subset(pre, t.open_hull(bits.mask_of(y for y in G.elements if h[y] == h[x]))):
            opn = False
            break
    return EmbeddingReport(injective, witness, hom, cont, opn, sub, h)


def refine_base(G: FiniteGyrogroup, t: FiniteTopology, mode: str = "T0") -> list[RefinementResult]:
    """One refinement per invariant open neighbourhood of 0 (a base at 0)."""
    base = invariant_open_nbhds(G, t) or [t.minimal[0]]
    return [projective_refine(G, t, U, mode) for U in base]
