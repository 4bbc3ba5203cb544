"""Acceptance criteria 1-8; each prints one PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or under pytest, where the
lines are repeated in the terminal summary.
"""

import contextlib
import io
import itertools
import time

import numpy as np

from gyrotopo import bits
from gyrotopo.analytic import AnalyticConfig, analytic_suite, einstein_add
from gyrotopo.cli import main
from gyrotopo.core import identity_suite
from gyrotopo.corpus import run_sweep
from gyrotopo.finite import check_axioms, cyclic_subgyrogroup
from gyrotopo.formats import fixture_text, load_fixture_gyro, load_fixture_topo, parse_table
from gyrotopo.paratopo import base_properties, classify, generate_topology, paratopological_witness
from gyrotopo.refine import projective_refine
from gyrotopo.topology import FiniteTopology

from oracles import A_PERM, G8_GYR, G8_TABLE

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, seconds: float, limit: float | None, info: str = "") -> bool:
    within = limit is None or seconds < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (< {limit:g} s)" if limit is not None else ""
    line = f"{status} criterion {number}: {title} [{seconds:.3f} s{budget}]" + (f" {info}" if info else "")
    RESULTS.append(line)
    print(line)
    return ok and within


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def criterion_1() -> bool:
    def run():
        report, G = check_axioms(parse_table(fixture_text("g8.gyro")), "g8")
        if G is None or G.table.tolist() != G8_TABLE:
            return False, 0
        ident = tuple(range(8))
        a = tuple(A_PERM[x] for x in range(8))
        matches = 0
        for x, y in itertools.product(range(8), repeat=2):
            want = a if G8_GYR[x][y] == "A" else ident
            matches += G.gyration(x, y) == want
        with contextlib.redirect_stdout(io.StringIO()) as out:
            code = main(["validate", "g8.gyro"])
        cli_ok = code == 0 and "gyr_table: matches G8 reference" in out.getvalue()
        return report.passed and matches == 64 and cli_ok, matches
    (ok, matches), dt = timed(run)
    return record(1, "G8 validates and gyration table matches", ok, dt, 1.0, f"{matches}/64 cells")


def criterion_2() -> bool:
    def run():
        G = load_fixture_gyro("g8.gyro")
        return identity_suite(G, itertools.product(range(8), repeat=3), window=8)
    r, dt = timed(run)
    info = f"{len(r.checks)} identities over {r.details['samples']} triples"
    return record(2, "identity catalog on all triples of G8", r.passed, dt, 1.0, info)


def criterion_3() -> bool:
    G = load_fixture_gyro("g8.gyro")
    cyc, dt = timed(lambda: cyclic_subgyrogroup(G, 1))
    one_one = G.add(1, 1)
    ok = (cyc.members == [0, 1, 2, 3] and one_one == 3 and G.add(1, one_one) == 2
          and G.add(1, G.add(1, one_one)) == 0 and cyc.multiples[:4] == [0, 1, 3, 2])
    return record(3, "cyclic subgyrogroup <1> of G8", ok, dt, None, f"multiples {cyc.multiples}")


def criterion_4() -> bool:
    def run():
        mob = analytic_suite(AnalyticConfig(model="mobius", samples=1000, seed=0))
        ein = analytic_suite(AnalyticConfig(model="einstein", samples=1000, seed=0, c=1.0))
        half = einstein_add([0.5, 0.0, 0.0], [0.5, 0.0, 0.0])
        coll = float(np.linalg.norm(half - np.array([0.8, 0.0, 0.0])))
        return mob, ein, coll
    (mob, ein, coll), dt = timed(run)
    devs = (mob.details["max_deviation"], ein.details["max_deviation"])
    ok = (mob.passed and ein.passed and max(devs) < 1e-9
          and mob.details["identities"]["gyrocommutative"] and ein.details["identities"]["gyrocommutative"]
          and mob.details["gyr_closed_form_deviation"] < 1e-12 and coll < 1e-12)
    info = f"max dev {max(devs):.2e}, closed form {mob.details['gyr_closed_form_deviation']:.2e}, collinear {coll:.1e}"
    return record(4, "Mobius and Einstein suites", ok, dt, 5.0, info)


def criterion_5() -> bool:
    def run():
        G = load_fixture_gyro("g8.gyro")
        t = generate_topology(G, [0b1111])
        return G, t, classify(G, t), base_properties(G, t)
    (G, t, c, bp), dt = timed(run)
    ok = (t.count_opens() == 4 and c.is_paratopological and c.is_strongly and c.is_topological
          and c.separation == "none" and c.hs == 1 and c.whs == 1 and bp.passed
          and bp.details.get("round_trip") == "reproduced")
    return record(5, "generated topology, classification, round trip", ok, dt, 1.0,
                  f"opens {[bits.fmt(o) for o in t.opens()]}")


def criterion_6() -> bool:
    def run():
        G = load_fixture_gyro("g8.gyro")
        t = load_fixture_topo("g8-coset.topo", 8)
        return projective_refine(G, t, 0b1111, "T2")
    r, dt = timed(run)
    ok = (r.certified and r.quotient is not None and r.quotient.gyrogroup.n == 2
          and bits.is_subset(r.quotient.preimage(r.v0), 0b1111)
          and all(c in r.report.checks for c in ("continuous", "open", "homomorphism")))
    pre = bits.fmt(r.quotient.preimage(r.v0)) if r.v0 is not None else None
    return record(6, "T2 refinement of the coset topology", ok, dt, None, f"p^-1(V0) = {pre}")


def criterion_7() -> bool:
    (report, sweep), dt = timed(lambda: run_sweep())
    d = report.details
    info = (f"{d['instances']} instances, {d['products']} products, "
            f"{sum(sweep.counts.values())} checks, {len(sweep.violations)} violations")
    return record(7, "consequence sweep over corpus and products", report.passed and not sweep.violations, dt, 60.0, info)


def criterion_8(tmp_dir) -> bool:
    def run():
        z2 = load_fixture_gyro("z2.gyro")
        t = FiniteTopology.from_opens(2, [0b01])
        w = paratopological_witness(z2, t)
        T = np.array(G8_TABLE)
        T[1, 3] = 3
        path = tmp_dir / "corrupt.gyro"
        path.write_text("8\n" + "\n".join(" ".join(map(str, row)) for row in T) + "\n")
        report, G = check_axioms(T)
        with contextlib.redirect_stdout(io.StringIO()):
            code = main(["validate", str(path)])
        return w, report, G, code
    (w, report, G, code), dt = timed(run)
    ok = w == (1, 1) and G is None and bool(report.violation) and bool(report.witness) and code == 1
    return record(8, "negative controls", ok, dt, None,
                  f"Z2 witness {w}; corrupted G8: {report.violation} {report.witness}")


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8(tmp_path):
    assert criterion_8(tmp_path)


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    with tempfile.TemporaryDirectory() as tmp:
        results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(),
                   criterion_5(), criterion_6(), criterion_7(), criterion_8(Path(tmp))]
    sys.exit(0 if all(results) else 1)
