"""Command-line front end.

Exit codes: 0 all checks pass, 1 a property failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import bits
from .analytic import DEFAULT_TOL, AnalyticConfig, analytic_suite
from .core import GyroError, Report, cycle_notation, identity_suite
from .finite import (
    check_axioms,
    cyclic_subgyrogroup,
    enumerate_subgyrogroups,
    find_identity,
    identity_relabeling,
    quotient,
    relabel,
)
from .formats import (
    G8_A,
    G8_GYRATION_PATTERN,
    ParseError,
    fixture_text,
    g8_gyration_mismatches,
    parse_subset,
    parse_table,
    read_gyro,
    read_topo,
    resolve,
    serialize_topo,
)
from .paratopo import classify, classify_report, generate_topology
from .refine import Instance, diagonal_embedding, product_report, projective_refine, refine_base

TOL_ENV = "GYROTOPO_TOL"


class UsageError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not value > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return value


# --- helpers ----------------------------------------------------------------------

def _subset(text: str, n: int, report: Report, *, neighbourhood: bool = False, label: str = "subset") -> int:
    arg = parse_subset(text, n, neighbourhood=neighbourhood)
    if arg.added_identity:
        report.notes.append(f"identity 0 added to {label}")
    return arg.mask


def _family(texts: Sequence[str], n: int, report: Report) -> list[int]:
    out = []
    for text in texts:
        for part in text.split(";"):
            if part.strip():
                out.append(_subset(part, n, report, neighbourhood=True, label="base set"))
    if not out:
        raise UsageError("empty base family")
    return out


def _masks(family) -> list[str]:
    return [bits.fmt(m) for m in family]


# --- commands ---------------------------------------------------------------------

def cmd_validate(args) -> Report:
    table = parse_table(resolve(args.file).read_text(), args.file)
    perm = None
    if args.relabel_identity:
        e = find_identity(table)
        if e not in (None, 0):
            perm = identity_relabeling(e, table.shape[0])
            table = relabel(table, perm)
    report, G = check_axioms(table, args.file)
    report.subject = "validate"
    if perm is not None:
        report.details["relabeling"] = list(perm)
        report.notes.append(f"identity found at index {perm.index(0)}; relabeled to 0")
    if G is None:
        return report
    g8 = parse_table(fixture_text("g8.gyro"))
    if G.n == 8 and np.array_equal(G.table, g8):
        report.checks.append("gyr_table")
        bad = g8_gyration_mismatches(G)
        if bad:
            return report.fail("gyr_table", bad[0], gyr_table=f"{len(bad)} cells differ from the G8 reference")
        report.details["gyr_table"] = "matches G8 reference"
        report.details["gyr_pattern"] = list(G8_GYRATION_PATTERN)
        report.details["gyr_legend"] = {"I": "identity", "A": cycle_notation(G8_A)}
    return report


def cmd_identities(args) -> Report:
    G = read_gyro(args.file)
    triples = [(a, b, c) for a in G.elements for b in G.elements for c in G.elements]
    report = identity_suite(G, triples, window=args.window)
    report.details["triples"] = len(triples)
    return report


def cmd_subgyrogroups(args) -> Report:
    G = read_gyro(args.file)
    report = Report("subgyrogroups")
    infos = enumerate_subgyrogroups(G, force=args.force)
    report.details["count"] = len(infos)
    report.details["subgyrogroups"] = [
        {"members": info.elements, "order": info.order, "L": info.is_L,
         "normal": info.is_normal, "gyr_invariant": info.gyr_invariant}
        for info in infos]
    return report


def cmd_quotient(args) -> Report:
    G = read_gyro(args.file)
    report = Report("quotient")
    N = _subset(args.by, G.n, report)
    Q = quotient(G, N)
    report.details.update(
        normal_subgyrogroup=bits.fmt(N),
        order=Q.gyrogroup.n,
        cosets=_masks(Q.cosets),
        projection=list(Q.projection),
        table=Q.gyrogroup.table,
    )
    return report


def cmd_cyclic(args) -> Report:
    G = read_gyro(args.file)
    if not 0 <= args.gen < G.n:
        raise UsageError(f"--gen {args.gen} outside 0..{G.n - 1}")
    cyc = cyclic_subgyrogroup(G, args.gen)
    report = Report("cyclic")
    report.details.update(
        generator=cyc.generator,
        order=cyc.order,
        members=cyc.members,
        multiples=cyc.multiples,
        L=cyc.info.is_L,
        normal=cyc.info.is_normal,
    )
    return report


def cmd_classify(args) -> Report:
    G = read_gyro(args.file)
    t = read_topo(args.topo, G.n)
    report = classify_report(G, t)
    report.details["opens"] = t.count_opens()
    report.details["completion_added"] = t.completion_added
    return report


def cmd_generate(args) -> Report:
    G = read_gyro(args.file)
    report = Report("generate_topology")
    fam = _family(args.base, G.n, report)
    t = generate_topology(G, fam)
    report.details.update(base=_masks(fam), opens_count=t.count_opens(),
                          opens=_masks(t.opens()), minimal=_masks(t.minimal))
    report.details["topo"] = serialize_topo(t).splitlines()
    return report


def cmd_refine(args) -> Report:
    G = read_gyro(args.file)
    t = read_topo(args.topo, G.n)
    outer = Report("refine")
    U0 = _subset(args.u0, G.n, outer, neighbourhood=True, label="--u0")
    res = projective_refine(G, t, U0, args.mode)
    report = res.report
    report.notes[:0] = outer.notes
    report.details["feasible"] = res.feasible
    report.details["certified"] = res.certified
    if res.quotient is not None:
        report.details["projection"] = list(res.quotient.projection)
        report.details["cosets"] = _masks(res.quotient.cosets)
    if res.quotient_topology is not None:
        report.details["quotient_opens"] = _masks(res.quotient_topology.opens())
    return report


def cmd_embed(args) -> Report:
    G = read_gyro(args.file)
    t = read_topo(args.topo, G.n)
    report = Report("embed", checks=["injective", "homomorphism", "continuous", "open_onto_image",
                                     "image_subgyrogroup"])
    results = refine_base(G, t, args.mode)
    report.details["refinements"] = [
        {"u0": bits.fmt(r.u0), "core": bits.fmt(r.core) if r.core is not None else None,
         "quotient_order": r.quotient.gyrogroup.n if r.quotient else None, "certified": r.certified}
        for r in results]
    emb = diagonal_embedding(G, t, results)
    report.details.update(injective=emb.injective, homomorphism=emb.homomorphism,
                          continuous=emb.continuous, open_onto_image=emb.open_onto_image,
                          image_subgyrogroup=emb.image_subgyrogroup, images=emb.images)
    for name in report.checks:
        if not report.details[name]:
            witness = (emb.kernel_witness,) if name == "injective" and emb.kernel_witness is not None else ()
            return report.fail(name, witness)
    return report


def cmd_product(args) -> Report:
    insts = []
    for spec in args.factors:
        gyro, sep, topo = spec.partition(":")
        if not sep or not topo:
            raise UsageError(f"factor {spec!r} must be GYRO:TOPO")
        G = read_gyro(gyro)
        insts.append(Instance(G, read_topo(topo, G.n), spec))
    P, report = product_report(insts)
    report.details["classification"] = classify(P.gyrogroup, P.topology).as_details()
    return report


def cmd_analytic(args) -> Report:
    tol = args.tol if args.tol is not None else default_tol()
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    if args.c <= 0:
        raise UsageError("--c must be positive")
    cfg = AnalyticConfig(model=args.model, samples=args.samples, seed=args.seed, c=args.c, tol=tol)
    return analytic_suite(cfg)


def cmd_corpus(args) -> Report:
    from .corpus import run_sweep
    report, _ = run_sweep(args.workers, products=not args.no_products)
    return report


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the report as one JSON document")
    parser = argparse.ArgumentParser(prog="gyrotopo", parents=[common],
                                     description="Finite and analytic gyrogroups, paratopological checks.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def command(name, fn, help_text, gyro=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if gyro:
            p.add_argument("file", help=".gyro file (or a bundled fixture name)")
        p.set_defaults(func=fn)
        return p

    p = command("validate", cmd_validate, "check the gyrogroup axioms on a Cayley table")
    p.add_argument("--relabel-identity", action="store_true", help="move an identity found elsewhere to index 0")
    p = command("identities", cmd_identities, "run the identity catalog over all triples")
    p.add_argument("--window", type=int, default=None, help="bound on |m|, |k| for scalar laws (default n)")
    p = command("subgyrogroups", cmd_subgyrogroups, "enumerate subgyrogroups")
    p.add_argument("--force", action="store_true", help="allow carriers above 16")
    p = command("quotient", cmd_quotient, "quotient by a normal subgyrogroup")
    p.add_argument("--by", required=True, help="comma-separated members")
    p = command("cyclic", cmd_cyclic, "cyclic subgyrogroup of one element")
    p.add_argument("--gen", type=int, required=True)
    p = command("classify", cmd_classify, "classify a topology on the gyrogroup")
    p.add_argument("--topo", required=True)
    p = command("generate-topology", cmd_generate, "topology generated by a base at 0")
    p.add_argument("--base", action="append", required=True,
                   help="base set as comma-separated members; repeat or separate sets with ';'")
    p = command("refine", cmd_refine, "projective quotient refinement")
    p.add_argument("--topo", required=True)
    p.add_argument("--u0", required=True)
    p.add_argument("--mode", choices=("t0", "t1", "t2"), type=str.lower, default="t0")
    p = command("embed", cmd_embed, "diagonal map into the product of refinements")
    p.add_argument("--topo", required=True)
    p.add_argument("--mode", choices=("t0", "t1", "t2"), type=str.lower, default="t0")
    p = command("product", cmd_product, "product of instances", gyro=False)
    p.add_argument("factors", nargs="+", metavar="GYRO:TOPO")
    p = command("analytic", cmd_analytic, "seeded identity suite on an analytic model", gyro=False)
    p.add_argument("--model", choices=("mobius", "einstein"), required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None, help=f"default {DEFAULT_TOL} or ${TOL_ENV}")
    p = command("corpus", cmd_corpus, "property sweep over the bundled corpus", gyro=False)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-products", action="store_true")
    return parser


def render(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report.to_dict(), sort_keys=True, indent=2, allow_nan=False)
    return report.to_text()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gyrotopo: error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, FileNotFoundError, OSError) as exc:
        print(f"gyrotopo: input error: {exc}", file=sys.stderr)
        return 2
    except GyroError as exc:
        report = exc.report
    print(render(report, getattr(args, "json", False)))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
