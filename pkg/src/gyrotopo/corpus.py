"""Bundled instance corpus and the corpus-wide property sweep."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import bits
from .core import Report
from .finite import (
    FiniteGyrogroup,
    cyclic_subgyrogroup,
    direct_product,
    enumerate_subgyrogroups,
    is_gyrocommutative,
    normality_verdicts,
    quotient,
    restrict,
    validate,
)
from .formats import load_fixture_gyro
from .paratopo import (
    base_properties,
    classify,
    hausdorff_number,
    hausdorff_number_search,
    inverse_continuous_by_opens,
    is_omega_balanced,
    paratopological_by_opens,
    paratopological_witness,
    strongly_by_base,
    strongly_lemmas,
    weak_hausdorff_number,
    weak_hausdorff_number_search,
)
from .refine import Instance, product_report
from .topology import FiniteTopology, all_topologies

PRODUCT_LIMIT = 64
SMALL_OPENS = 64


@lru_cache(maxsize=None)
def gyrogroups() -> tuple[FiniteGyrogroup, ...]:
    base = [load_fixture_gyro(f) for f in ("g8.gyro", "z2.gyro", "z4.gyro", "k4.gyro", "s3.gyro")]
    g8, z2 = base[0], base[1]
    trivial = validate([[0]], "trivial")
    return tuple(base + [direct_product(g8, z2, name="g8xz2"), trivial])


def topologies_for(G: FiniteGyrogroup) -> list[tuple[str, FiniteTopology]]:
    """Every topology for n <= 4; otherwise coset topologies of subgyrogroups,
    the one-subgyrogroup topologies {0, M, G}, discrete and indiscrete."""
    if G.n <= 4:
        return [(f"top{i}", t) for i, t in enumerate(all_topologies(G.n))]
    out: dict[tuple, tuple[str, FiniteTopology]] = {}
    out[FiniteTopology.discrete(G.n).minimal] = ("discrete", FiniteTopology.discrete(G.n))
    out[FiniteTopology.indiscrete(G.n).minimal] = ("indiscrete", FiniteTopology.indiscrete(G.n))
    for info in enumerate_subgyrogroups(G):
        M = info.members
        try:
            t = FiniteTopology(G.n, [G.left_shift(x, M) for x in G.elements])
            out.setdefault(t.minimal, (f"cosets{bits.fmt(M)}", t))
        except ValueError:
            pass
        t = FiniteTopology.from_opens(G.n, [M])
        out.setdefault(t.minimal, (f"open{bits.fmt(M)}", t))
    return [out[k] for k in sorted(out)]


@lru_cache(maxsize=None)
def instances() -> tuple[Instance, ...]:
    out = []
    for G in gyrogroups():
        for label, t in topologies_for(G):
            out.append(Instance(G, t, f"{G.name}:{label}"))
    return tuple(out)


def paratopological_instances() -> list[Instance]:
    return [i for i in instances() if paratopological_witness(i.gyrogroup, i.topology) is None]


def product_pairs(limit: int = PRODUCT_LIMIT) -> list[tuple[Instance, Instance]]:
    para = paratopological_instances()
    return [(a, b) for a, b in itertools.combinations_with_replacement(para, 2)
            if a.gyrogroup.n * b.gyrogroup.n <= limit and a.gyrogroup.n > 1 and b.gyrogroup.n > 1]


# --- sweep ---------------------------------------------------------------------

@dataclass
class SweepResult:
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str, object]] = field(default_factory=list)

    def tick(self, name: str, ok: bool, subject: str = "", witness=None):
        self.counts[name] = self.counts.get(name, 0) + 1
        if not ok:
            self.violations.append((name, subject, witness))

    def merge(self, other: "SweepResult"):
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v
        self.violations.extend(other.violations)


def _le(a, b) -> bool:
    return a <= b


def check_instance(inst: Instance, *, deep: bool = True, subgroups: bool = True) -> SweepResult:
    """All single-instance properties; ``deep`` adds the literal oracles and
    ``subgroups`` the monotonicity checks over every subgyrogroup."""
    G, t, name = inst.gyrogroup, inst.topology, inst.name
    res = SweepResult()
    c = classify(G, t)
    small = G.n <= 8 and t.count_opens() <= SMALL_OPENS
    if deep and small:
        res.tick("oracle_paratopological", (paratopological_by_opens(G, t) is None) == c.is_paratopological, name)
    res.tick("periodic", c.topologically_periodic, name)
    res.tick("two_pseudocompact", c.two_pseudocompact, name)
    if not c.is_paratopological:
        return res
    res.tick("omega_balanced", bool(c.omega_balanced), name)
    res.tick("whs_le_hs", _le(c.whs, c.hs), name, (c.whs, c.hs))
    if deep:
        hs_s = hausdorff_number_search(G, t)
        if hs_s is not None:
            whs_s = weak_hausdorff_number_search(G, t)
            res.tick("oracle_hs", hs_s == c.hs and whs_s == c.whs, name, (hs_s, whs_s))
        sb = strongly_by_base(G, t)
        if sb is not None:
            res.tick("oracle_strongly", sb == c.is_strongly, name)
        if small:
            res.tick("oracle_topological", (inverse_continuous_by_opens(G, t)) == c.is_topological, name)
    res.tick("whs_le_psi_le_chi", c.whs <= c.cardinals[1] <= c.cardinals[0], name)
    if c.is_strongly:
        res.tick("a_inverse_at_zero", c.is_topological == c.inverse_continuous_at_zero, name)
        res.tick("b_p_space", c.whs != 1 or c.is_topological, name)
        res.tick("two_pseudocompact_whs", not c.two_pseudocompact or c.whs != 1 or c.is_topological, name)
        lem = strongly_lemmas(G, t)
        res.tick("d_lemmas", lem.passed, name, lem.violation)
        bp = base_properties(G, t)
        res.tick("round_trip", bp.passed, name, bp.violation)
    if not subgroups:
        return res
    for members, sub in _restrictions(G):
        t_sub, _ = t.subspace(members)
        K = Instance(sub, t_sub, f"{name}|{bits.fmt(members)}")
        if paratopological_witness(K.gyrogroup, K.topology) is not None:
            res.tick("c_subspace_paratopological", False, K.name)
            continue
        res.tick("c_monotone_hs", hausdorff_number(K.gyrogroup, K.topology) <= c.hs, K.name)
        res.tick("c_monotone_whs", weak_hausdorff_number(K.gyrogroup, K.topology) <= c.whs, K.name)
        res.tick("subspace_omega_balanced", is_omega_balanced(K.gyrogroup, K.topology), K.name)
    return res


@lru_cache(maxsize=64)
def _restrictions(G: FiniteGyrogroup) -> tuple[tuple[int, FiniteGyrogroup], ...]:
    return tuple((info.members, restrict(G, info.members)[0]) for info in enumerate_subgyrogroups(G, force=True))


def check_gyrogroup(G: FiniteGyrogroup) -> SweepResult:
    """Dual normality on every subgyrogroup; quotient gyrocommutativity."""
    res = SweepResult()
    comm = is_gyrocommutative(G)
    for info in enumerate_subgyrogroups(G, force=True):
        v = normality_verdicts(G, info.members)
        res.tick("e_dual_normality", v.coset_law == v.gyr_conjugation, f"{G.name}{bits.fmt(info.members)}")
        if comm and v.coset_law:
            Q = quotient(G, info.members)
            res.tick("f_quotient_gyrocommutative", is_gyrocommutative(Q.gyrogroup),
                     f"{G.name}/{bits.fmt(info.members)}")
    for a in G.elements:
        cyc = cyclic_subgyrogroup(G, a)
        res.tick("cyclic_group", cyc.order == bits.size(cyc.info.members), f"{G.name}<{a}>")
    return res


def check_pair(pair: tuple[Instance, Instance]) -> SweepResult:
    a, b = pair
    res = SweepResult()
    P, rep = product_report([a, b])
    res.tick("c_product_bounds", rep.passed, P.name, rep.violation)
    res.merge(check_instance(P, deep=False, subgroups=False))
    return res


def _product_gyrogroups(pairs) -> list[FiniteGyrogroup]:
    seen: dict[tuple[str, str], FiniteGyrogroup] = {}
    for a, b in pairs:
        key = (a.gyrogroup.name, b.gyrogroup.name)
        if key not in seen:
            seen[key] = direct_product(a.gyrogroup, b.gyrogroup)
    return list(seen.values())


def run_sweep(workers: int | None = None, *, products: bool = True) -> tuple[Report, SweepResult]:
    total = SweepResult()
    insts = list(instances())
    pairs = product_pairs() if products else []
    groups = list(gyrogroups()) + (_product_gyrogroups(pairs) if products else [])
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(check_instance, insts, chunksize=4))
            parts += list(ex.map(check_gyrogroup, groups))
            parts += list(ex.map(check_pair, pairs, chunksize=8))
    else:
        parts = [check_instance(i) for i in insts]
        parts += [check_gyrogroup(G) for G in groups]
        parts += [check_pair(p) for p in pairs]
    for p in parts:
        total.merge(p)
    report = Report("corpus")
    report.details.update(
        instances=len(insts),
        paratopological=len(paratopological_instances()),
        products=len(pairs),
        gyrogroups=len(groups),
        counts=dict(sorted(total.counts.items())),
    )
    report.checks = sorted(total.counts)
    if total.violations:
        name, subject, witness = total.violations[0]
        report.fail(name, (subject,) if witness is None else (subject, witness),
                    violation_count=len(total.violations))
    return report, total
