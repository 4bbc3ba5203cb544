"""Gyrogroup operations shared by the finite and analytic realizations.

Everything here talks to a gyrogroup only through the small :class:`GyroOps`
surface (``identity``, ``add``, ``neg``, ``equal``).  Gyrations are never
taken as input; they are always derived from the addition as

    gyr[a, b](c) = (-(a + b)) + (a + (b + c))

and checked afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Protocol, Sequence, runtime_checkable

UNBOUNDED = float("inf")


@runtime_checkable
class GyroOps(Protocol):
    identity: Any

    def add(self, a, b): ...

    def neg(self, a): ...

    def equal(self, a, b) -> bool: ...


@dataclass
class Report:
    """Pass/fail record naming the first violated property and a witness."""

    subject: str
    passed: bool = True
    violation: str | None = None
    witness: tuple | None = None
    checks: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def fail(self, violation: str, witness: Sequence = (), **details) -> "Report":
        self.passed = False
        self.violation = violation
        self.witness = tuple(witness)
        self.details.update(details)
        return self

    def merge(self, other: "Report", prefix: str | None = None) -> "Report":
        """Fold a sub-report in; the first failure wins."""
        tag = prefix or other.subject
        self.checks.extend(f"{tag}.{c}" for c in other.checks)
        self.notes.extend(other.notes)
        if not other.passed and self.passed:
            self.fail(f"{tag}.{other.violation}", other.witness or ())
        self.details[tag] = other.details
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "violation": self.violation,
            "witness": _jsonable(self.witness) if self.witness is not None else None,
            "checks": list(self.checks),
            "details": _jsonable(self.details),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"subject: {self.subject}", f"passed: {str(self.passed).lower()}"]
        if not self.passed:
            lines.append(f"violation: {self.violation}")
            lines.append(f"witness: {_fmt_value(_jsonable(self.witness))}")
        for key in sorted(self.details):
            lines.extend(_text_lines(key, _jsonable(self.details[key])))
        if self.checks:
            lines.append("checks: " + " ".join(self.checks))
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float):
        if value == UNBOUNDED:
            return "unbounded"
        return value
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if hasattr(value, "item"):
        return value.item()
    return value


def _fmt_value(value) -> str:
    if isinstance(value, list):
        return " ".join(_fmt_value(v) if not isinstance(v, list) else "(" + ",".join(map(str, v)) + ")"
                        for v in value)
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return "none"
    return str(value)


def _text_lines(key: str, value) -> list[str]:
    if isinstance(value, dict):
        out = []
        for k in sorted(value):
            out.extend(_text_lines(f"{key}.{k}", value[k]))
        return out
    if isinstance(value, list) and any(isinstance(v, dict) for v in value):
        out = []
        for i, v in enumerate(value):
            out.extend(_text_lines(f"{key}.{i}", v))
        return out
    return [f"{key}: {_fmt_value(value)}"]


class GyroError(Exception):
    """Base error carrying a :class:`Report`."""

    def __init__(self, report: Report):
        self.report = report
        super().__init__(f"{report.subject}: {report.violation} witness={report.witness}")


class AxiomViolation(GyroError):
    """A table or structure failed a gyrogroup axiom."""


class PreconditionError(GyroError):
    """An operation was called on an instance outside its domain."""


class HypothesisFailure(GyroError):
    """A construction's hypotheses do not hold on the given input."""


class ConsistencyError(GyroError):
    """Two independent routes disagreed. Never expected on valid input."""


def gyr_of(G: GyroOps, a, b, c):
    return G.add(G.neg(G.add(a, b)), G.add(a, G.add(b, c)))


def coadd(G: GyroOps, a, b):
    return G.add(a, gyr_of(G, a, G.neg(b), b))


def cosub(G: GyroOps, a, b):
    return G.add(a, G.neg(gyr_of(G, a, b, b)))


def sub(G: GyroOps, a, b):
    return G.add(a, G.neg(b))


def scalar(G: GyroOps, m: int, a):
    """Left scalar iteration: ``m*a = a + ((m-1)*a)``, negative m via ``-a``."""
    if m < 0:
        return scalar(G, -m, G.neg(a))
    acc = G.identity
    for _ in range(m):
        acc = G.add(a, acc)
    return acc


def scalar_right(G: GyroOps, a, m: int):
    """Right scalar iteration: ``a*m = (a*(m-1)) + a``."""
    if m < 0:
        return scalar_right(G, G.neg(a), -m)
    acc = G.identity
    for _ in range(m):
        acc = G.add(acc, a)
    return acc


def right_translation_inverse(G: GyroOps, a, x):
    """Inverse of ``x -> x + a``, computed as ``(-a) + ((a + x) + (-a))``."""
    na = G.neg(a)
    return G.add(na, G.add(G.add(a, x), na))


def cycle_notation(perm: Sequence[int]) -> str:
    """Cycle notation with 1-cycles dropped; the identity prints as ``I``."""
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = int(perm[start])
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = int(perm[x])
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "I"


# --- identity catalog -------------------------------------------------------

Pairs = list[tuple[Any, Any]]


def _id_g1(G, a, b, c) -> Pairs:
    e = G.identity
    return [(G.add(e, a), a), (G.add(a, e), a)]


def _id_g2(G, a, b, c) -> Pairs:
    return [(G.add(G.neg(a), a), G.identity), (G.add(a, G.neg(a)), G.identity)]


def _id_right_gyroassoc(G, a, b, c) -> Pairs:
    return [(G.add(G.add(a, b), c), G.add(a, G.add(b, gyr_of(G, b, a, c))))]


def _id_left_gyroassoc(G, a, b, c) -> Pairs:
    return [(G.add(a, G.add(b, c)), G.add(G.add(a, b), gyr_of(G, a, b, c)))]


def _id_automorphism(G, a, b, c) -> Pairs:
    out = []
    for d in (a, b):
        out.append((gyr_of(G, a, b, G.add(c, d)), G.add(gyr_of(G, a, b, c), gyr_of(G, a, b, d))))
    return out


def _id_right_loop(G, a, b, c) -> Pairs:
    return [(gyr_of(G, a, b, c), gyr_of(G, a, G.add(b, a), c))]


def _id_left_loop(G, a, b, c) -> Pairs:
    return [(gyr_of(G, a, b, c), gyr_of(G, G.add(a, b), b, c))]


def _id_left_cancel(G, a, b, c) -> Pairs:
    return [(G.add(G.neg(a), G.add(a, b)), b)]


def _id_coadd_cancel(G, a, b, c) -> Pairs:
    return [(coadd(G, sub(G, a, b), b), a)]


def _id_cosub_cancel(G, a, b, c) -> Pairs:
    return [(G.add(cosub(G, a, b), b), a)]


def _id_right_cancel(G, a, b, c) -> Pairs:
    return [(cosub(G, G.add(a, b), b), a)]


def _id_gyrosum_inversion(G, a, b, c) -> Pairs:
    return [(G.neg(G.add(a, b)), gyr_of(G, a, b, G.add(G.neg(b), G.neg(a))))]


def _id_gyr_neg(G, a, b, c) -> Pairs:
    return [(gyr_of(G, a, b, G.neg(c)), G.neg(gyr_of(G, a, b, c)))]


def _id_inversive_symmetry(G, a, b, c) -> Pairs:
    return [(gyr_of(G, b, a, gyr_of(G, a, b, c)), c)]


def _id_cogyro_inverse(G, a, b, c) -> Pairs:
    return [(G.neg(coadd(G, a, b)), coadd(G, G.neg(b), G.neg(a)))]


def _id_even_symmetry(G, a, b, c) -> Pairs:
    return [(gyr_of(G, G.neg(a), G.neg(b), c), gyr_of(G, a, b, c))]


def _id_trivial_gyr(G, a, b, c) -> Pairs:
    e = G.identity
    return [(gyr_of(G, a, e, c), c), (gyr_of(G, e, b, c), c)]


def _id_coadd_conjugate(G, a, b, c) -> Pairs:
    return [(coadd(G, a, b), G.add(b, G.add(G.add(G.neg(b), a), b)))]


def _id_right_translation_inverse(G, a, b, c) -> Pairs:
    return [(right_translation_inverse(G, a, G.add(c, a)), c)]


def _id_gyrocommutative(G, a, b, c) -> Pairs:
    return [(G.add(a, b), gyr_of(G, a, b, G.add(b, a)))]


def _id_automorphic_inverse(G, a, b, c) -> Pairs:
    return [(G.neg(G.add(a, b)), G.add(G.neg(a), G.neg(b)))]


def _id_coadd_commutative(G, a, b, c) -> Pairs:
    return [(coadd(G, a, b), coadd(G, b, a))]


def _id_coadd_expansion(G, a, b, c) -> Pairs:
    return [(coadd(G, a, b), G.add(a, G.add(G.add(G.neg(a), b), a)))]


IDENTITIES: list[tuple[str, Callable[..., Pairs]]] = [
    ("G1_identity", _id_g1),
    ("G2_inverse", _id_g2),
    ("right_gyroassociative", _id_right_gyroassoc),
    ("left_gyroassociative", _id_left_gyroassoc),
    ("gyr_automorphism", _id_automorphism),
    ("right_loop", _id_right_loop),
    ("left_loop", _id_left_loop),
    ("left_cancellation", _id_left_cancel),
    ("coadd_cancellation", _id_coadd_cancel),
    ("cosub_cancellation", _id_cosub_cancel),
    ("right_cancellation", _id_right_cancel),
    ("gyrosum_inversion", _id_gyrosum_inversion),
    ("gyr_commutes_with_neg", _id_gyr_neg),
    ("inversive_symmetry", _id_inversive_symmetry),
    ("cogyroautomorphic_inverse", _id_cogyro_inverse),
    ("even_symmetry", _id_even_symmetry),
    ("trivial_gyrations", _id_trivial_gyr),
    ("coadd_as_conjugate", _id_coadd_conjugate),
    ("right_translation_inverse", _id_right_translation_inverse),
]

GYROCOMMUTATIVE_IDENTITIES: list[tuple[str, Callable[..., Pairs]]] = [
    ("automorphic_inverse", _id_automorphic_inverse),
    ("coadd_commutative", _id_coadd_commutative),
    ("coadd_expansion", _id_coadd_expansion),
]


class _Comparator:
    """Equality through ``G.equal`` plus running max deviation when available."""

    def __init__(self, G):
        self.G = G
        self._dev = getattr(G, "deviation", None)
        self.max_deviation = 0.0

    def same(self, x, y) -> bool:
        if self._dev is not None:
            d = float(self._dev(x, y))
            if d > self.max_deviation:
                self.max_deviation = d
        return bool(self.G.equal(x, y))


def _run_catalog(G, triples, catalog, cmp, report) -> bool:
    for name, fn in catalog:
        report.checks.append(name)
        for a, b, c in triples:
            for lhs, rhs in fn(G, a, b, c):
                if not cmp.same(lhs, rhs):
                    report.fail(name, (a, b, c), lhs=lhs, rhs=rhs)
                    return False
    return True


def identity_suite(G: GyroOps, samples: Iterable[tuple], *, window: int | None = None,
                   gyrocommutative: bool | None = None) -> Report:
    """Check the gyrogroup identity catalog on every sampled triple.

    ``window`` bounds |m|, |k| for the scalar additivity law; it defaults to
    the carrier size when ``G`` has one and to 2 otherwise.  The
    gyrocommutative law is evaluated on the samples; when it holds (or when
    the caller asserts ``gyrocommutative=True``) the extra identities of
    gyrocommutative gyrogroups are checked as well.
    """
    triples = [tuple(t) for t in samples]
    report = Report("identity_suite")
    report.details["samples"] = len(triples)
    if not triples:
        report.details["vacuous"] = True
        report.notes.append("vacuous pass: no samples")
        return report
    cmp = _Comparator(G)

    ok = _run_catalog(G, triples, IDENTITIES, cmp, report)
    if ok:
        ok = _scalar_laws(G, triples, window, cmp, report)
    if ok:
        report.checks.append("gyrocommutative_law")
        witness = None
        for a, b, c in triples:
            (lhs, rhs), = _id_gyrocommutative(G, a, b, c)
            if not cmp.same(lhs, rhs):
                witness = (a, b)
                break
        report.details["gyrocommutative"] = witness is None
        if witness is not None:
            if gyrocommutative:
                report.fail("gyrocommutative_law", witness)
                ok = False
            else:
                report.details["non_gyrocommutative_witness"] = witness
        elif gyrocommutative is not False:
            ok = _run_catalog(G, triples, GYROCOMMUTATIVE_IDENTITIES, cmp, report)
    if hasattr(G, "deviation"):
        report.details["max_deviation"] = cmp.max_deviation
    return report


def _scalar_laws(G, triples, window, cmp, report) -> bool:
    if window is None:
        window = getattr(G, "n", 2)
    report.details["scalar_window"] = window
    elements = []
    for t in triples:
        for x in t:
            if not any(cmp.G.equal(x, y) for y in elements[-64:]):
                elements.append(x)
            if len(elements) >= 64:
                break
        if len(elements) >= 64:
            break
    report.checks.append("scalar_additivity")
    for a in elements:
        mult = {m: scalar(G, m, a) for m in range(-2 * window, 2 * window + 1)}
        for m, k in itertools.product(range(-window, window + 1), repeat=2):
            if not cmp.same(G.add(mult[m], mult[k]), mult[m + k]):
                report.fail("scalar_additivity", (a, m, k))
                return False
    report.checks.append("scalar_sides_agree")
    for a in elements:
        for m in range(-window, window + 1):
            if not cmp.same(scalar(G, m, a), scalar_right(G, a, m)):
                report.fail("scalar_sides_agree", (a, m))
                return False
    return True
