"""Möbius disk and Einstein ball gyrogroups in double precision.

Möbius elements are Python complex numbers with |z| < 1; Einstein elements
are length-3 float arrays with norm below the speed parameter ``c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Report, gyr_of, identity_suite

DEFAULT_TOL = 1e-9
CLOSED_FORM_TOL = 1e-12
SAMPLE_RADIUS = 0.95


def mobius_add(a: complex, b: complex) -> complex:
    _check_disk(a)
    _check_disk(b)
    return (a + b) / (1 + a.conjugate() * b)


def mobius_gyr(a: complex, b: complex, c: complex) -> complex:
    _check_disk(a)
    _check_disk(b)
    _check_disk(c)
    return (1 + a * b.conjugate()) / (1 + a.conjugate() * b) * c


def _check_disk(z: complex) -> None:
    if not abs(z) < 1:
        raise ValueError(f"{z!r} is not in the open unit disk")


def gamma(u, c: float = 1.0) -> float:
    u = np.asarray(u, dtype=float)
    s = float(u @ u) / (c * c)
    if not s < 1:
        raise ValueError(f"|u| = {math.sqrt(s) * c} is not below c = {c}")
    return 1.0 / math.sqrt(1.0 - s)


def einstein_add(u, v, c: float = 1.0) -> np.ndarray:
    """Relativistic velocity composition u (+) v in the c-ball."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    gu = gamma(u, c)
    gamma(v, c)
    c2 = c * c
    uv = float(u @ v)
    return (u + v / gu + (gu / (1.0 + gu)) * (uv / c2) * u) / (1.0 + uv / c2)


def collinear_add(s: float, t: float, c: float = 1.0) -> float:
    """Speeds along one axis: (s + t) / (1 + s t / c^2)."""
    return (s + t) / (1.0 + s * t / (c * c))


def _close(dev: float, scale: float, tol: float) -> bool:
    return dev <= tol + tol * scale


class MobiusGyrogroup:
    identity = 0j

    def __init__(self, tol: float = DEFAULT_TOL):
        self.tol = tol

    def add(self, a, b):
        return mobius_add(complex(a), complex(b))

    def neg(self, a):
        return -complex(a)

    def gyr(self, a, b, c):
        return mobius_gyr(complex(a), complex(b), complex(c))

    def deviation(self, x, y) -> float:
        return abs(complex(x) - complex(y))

    def equal(self, x, y) -> bool:
        return _close(self.deviation(x, y), max(abs(x), abs(y)), self.tol)

    def sample(self, rng: np.random.Generator, count: int, radius: float = SAMPLE_RADIUS) -> list[complex]:
        # uniform in |z|^2 on [0, radius^2]
        r = np.sqrt(rng.uniform(0.0, radius * radius, count))
        theta = rng.uniform(0.0, 2 * math.pi, count)
        return [complex(z) for z in r * np.exp(1j * theta)]


class EinsteinGyrogroup:
    def __init__(self, c: float = 1.0, tol: float = DEFAULT_TOL):
        if not c > 0:
            raise ValueError("c must be positive")
        self.c = c
        self.tol = tol
        self.identity = np.zeros(3)

    def add(self, u, v):
        return einstein_add(u, v, self.c)

    def neg(self, u):
        return -np.asarray(u, dtype=float)

    def gamma(self, u) -> float:
        return gamma(u, self.c)

    def deviation(self, x, y) -> float:
        return float(np.linalg.norm(np.asarray(x) - np.asarray(y)))

    def equal(self, x, y) -> bool:
        scale = max(float(np.linalg.norm(x)), float(np.linalg.norm(y))) / self.c
        return _close(self.deviation(x, y) / self.c, scale, self.tol)

    def sample(self, rng: np.random.Generator, count: int, radius: float = SAMPLE_RADIUS) -> list[np.ndarray]:
        # uniform in the ball of radius radius*c
        d = rng.normal(size=(count, 3))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        r = radius * self.c * rng.uniform(0.0, 1.0, count) ** (1.0 / 3.0)
        return list(d * r[:, None])


@dataclass
class AnalyticConfig:
    model: str = "mobius"
    samples: int = 1000
    seed: int = 0
    c: float = 1.0
    tol: float = DEFAULT_TOL
    closed_form_tol: float = CLOSED_FORM_TOL
    window: int = 2
    radius: float = SAMPLE_RADIUS


def make_model(config: AnalyticConfig):
    if config.model == "mobius":
        return MobiusGyrogroup(config.tol)
    if config.model == "einstein":
        return EinsteinGyrogroup(config.c, config.tol)
    raise ValueError(f"unknown model {config.model!r}")


def sample_triples(G, rng: np.random.Generator, count: int, radius: float = SAMPLE_RADIUS) -> list[tuple]:
    pts = G.sample(rng, 3 * count, radius)
    return [tuple(pts[3 * i:3 * i + 3]) for i in range(count)]


def analytic_suite(config: AnalyticConfig | None = None, **overrides) -> Report:
    """Seeded identity and gyrocommutativity suite on one analytic model."""
    config = config or AnalyticConfig()
    for k, v in overrides.items():
        setattr(config, k, v)
    G = make_model(config)
    report = Report(f"analytic_{config.model}")
    report.details.update(samples=config.samples, seed=config.seed, tol=config.tol)
    if config.model == "einstein":
        report.details["c"] = config.c
    if config.samples <= 0:
        report.details["vacuous"] = True
        report.notes.append("vacuous pass: no samples")
        return report

    rng = np.random.default_rng(config.seed)
    triples = sample_triples(G, rng, config.samples, config.radius)
    suite = identity_suite(G, triples, window=config.window, gyrocommutative=True)
    report.merge(suite, "identities")
    report.details["max_deviation"] = suite.details.get("max_deviation", 0.0)
    if not report.passed:
        return report

    if config.model == "mobius":
        _mobius_extras(G, triples, config, report)
    else:
        _einstein_extras(G, triples, rng, config, report)
    return report


def _mobius_extras(G: MobiusGyrogroup, triples, config: AnalyticConfig, report: Report) -> None:
    worst_gyr = worst_mod = 0.0
    report.checks += ["gyr_closed_form", "gyr_preserves_modulus", "closure"]
    for a, b, c in triples:
        closed = G.gyr(a, b, c)
        dev = abs(closed - gyr_of(G, a, b, c))
        mod = abs(abs(closed) - abs(c))
        worst_gyr = max(worst_gyr, dev)
        worst_mod = max(worst_mod, mod)
        if dev > config.closed_form_tol:
            report.fail("gyr_closed_form", (a, b, c), deviation=dev)
            break
        if mod > config.closed_form_tol:
            report.fail("gyr_preserves_modulus", (a, b, c), deviation=mod)
            break
        if not abs(G.add(a, b)) < 1:
            report.fail("closure", (a, b))
            break
    report.details["gyr_closed_form_deviation"] = worst_gyr
    report.details["modulus_deviation"] = worst_mod


def _einstein_extras(G: EinsteinGyrogroup, triples, rng, config: AnalyticConfig, report: Report) -> None:
    c = config.c
    report.checks += ["collinear_oracle", "negation", "closure"]
    worst = 0.0
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    speeds = rng.uniform(-config.radius * c, config.radius * c, size=(len(triples), 2))
    for s, t in speeds:
        got = G.add(s * axis, t * axis)
        dev = float(np.linalg.norm(got - collinear_add(s, t, c) * axis)) / c
        worst = max(worst, dev)
        if dev > config.closed_form_tol:
            report.fail("collinear_oracle", (s, t), deviation=dev)
            return
    report.details["collinear_deviation"] = worst
    for u, v, _ in triples:
        if not G.equal(G.add(G.neg(u), u), G.identity):
            report.fail("negation", (u,))
            return
        if not np.linalg.norm(G.add(u, v)) < c:
            report.fail("closure", (u, v))
            return
