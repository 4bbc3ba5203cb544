"""Text formats for Cayley tables (``.gyro``) and finite topologies (``.topo``).

``.gyro``: first content line is n, then n rows of n indices.
``.topo``: first content line is n, then one open set per line as indices;
``-`` is the empty set and ``*`` the whole carrier.
Lines starting with ``#`` and blank lines are ignored everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import bits
from .finite import FiniteGyrogroup, validate
from .topology import MAX_CARRIER, FiniteTopology

FIXTURES = ("g8.gyro", "g8-coset.topo", "z2.gyro", "z4.gyro", "s3.gyro", "k4.gyro")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = ""):
        self.line = line
        self.source = source
        where = f"{source}:" if source else ""
        where += f"line {line}: " if line is not None else ""
        super().__init__(where + message)


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _ints(line: str, no: int, source: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"malformed integer in {line!r}", no, source) from None


def _header(lines, source: str) -> int:
    if not lines:
        raise ParseError("empty file, expected the carrier size", None, source)
    no, first = lines[0]
    vals = _ints(first, no, source)
    if len(vals) != 1 or vals[0] < 1:
        raise ParseError(f"expected a positive carrier size, got {first!r}", no, source)
    return vals[0]


# --- .gyro -------------------------------------------------------------------

def parse_table(text: str, source: str = "") -> np.ndarray:
    """Syntax-only parse of a ``.gyro`` document into an n x n index array."""
    lines = _content_lines(text)
    n = _header(lines, source)
    rows = lines[1:]
    if len(rows) != n:
        at = rows[n][0] if len(rows) > n else (rows[-1][0] if rows else lines[0][0])
        raise ParseError(f"expected {n} rows, found {len(rows)}", at, source)
    table = []
    for no, line in rows:
        vals = _ints(line, no, source)
        if len(vals) != n:
            raise ParseError(f"expected {n} entries, found {len(vals)}", no, source)
        bad = next((v for v in vals if not 0 <= v < n), None)
        if bad is not None:
            raise ParseError(f"entry {bad} outside 0..{n - 1}", no, source)
        table.append(vals)
    return np.asarray(table, dtype=np.int64)


def parse_gyro(text: str, source: str = "", name: str = "", *, relabel_identity: bool = False) -> FiniteGyrogroup:
    """Parse and validate; raises ParseError or AxiomViolation."""
    return validate(parse_table(text, source), name or Path(source).stem, relabel_identity=relabel_identity)


def serialize_gyro(G: FiniteGyrogroup) -> str:
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in G.table)
    return f"{G.n}\n{rows}\n"


# --- .topo -------------------------------------------------------------------

def parse_topo(text: str, source: str = "", n_expected: int | None = None) -> FiniteTopology:
    """Parse the listed opens and complete them under unions and intersections.

    The number of opens added by completion is kept in ``completion_added``.
    """
    lines = _content_lines(text)
    n = _header(lines, source)
    if n > MAX_CARRIER:
        raise ParseError(f"carrier size {n} exceeds {MAX_CARRIER}", lines[0][0], source)
    if n_expected is not None and n != n_expected:
        raise ParseError(f"carrier size {n} does not match the gyrogroup order {n_expected}", lines[0][0], source)
    opens = []
    for no, line in lines[1:]:
        if line == "-":
            opens.append(0)
        elif line == "*":
            opens.append(bits.full_mask(n))
        else:
            vals = _ints(line, no, source)
            bad = next((v for v in vals if not 0 <= v < n), None)
            if bad is not None:
                raise ParseError(f"index {bad} outside 0..{n - 1}", no, source)
            opens.append(bits.mask_of(vals))
    return FiniteTopology.from_opens(n, opens)


def serialize_topo(t: FiniteTopology) -> str:
    full = t.full
    lines = [str(t.n)]
    for o in t.opens():
        lines.append("-" if o == 0 else "*" if o == full else " ".join(map(str, bits.members(o))))
    return "\n".join(lines) + "\n"


# --- subsets on the command line ------------------------------------------------

@dataclass
class SubsetArg:
    mask: int
    added_identity: bool


def parse_subset(text: str, n: int, *, neighbourhood: bool = False) -> SubsetArg:
    """Comma-separated indices; neighbourhood arguments get 0 added if missing."""
    text = text.strip()
    if text in ("*", "all"):
        return SubsetArg(bits.full_mask(n), False)
    vals = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"malformed index {tok!r} in subset {text!r}") from None
        if not 0 <= v < n:
            raise ParseError(f"index {v} outside 0..{n - 1}")
        vals.append(v)
    mask = bits.mask_of(vals)
    added = neighbourhood and not bits.contains(mask, 0)
    return SubsetArg(mask | 1 if added else mask, added)


# --- files and bundled fixtures -----------------------------------------------------

def resolve(path: str) -> Path:
    """A filesystem path if it exists, otherwise a bundled fixture of that name."""
    p = Path(path)
    if p.exists():
        return p
    data = resources.files("gyrotopo") / "data" / p.name
    if data.is_file():
        return Path(str(data))
    raise FileNotFoundError(path)


def read_gyro(path: str, **kw) -> FiniteGyrogroup:
    p = resolve(path)
    return parse_gyro(p.read_text(), str(path), **kw)


def read_topo(path: str, n_expected: int | None = None) -> FiniteTopology:
    p = resolve(path)
    return parse_topo(p.read_text(), str(path), n_expected)


def fixture_text(name: str) -> str:
    return (resources.files("gyrotopo") / "data" / name).read_text()


def load_fixture_gyro(name: str) -> FiniteGyrogroup:
    return parse_gyro(fixture_text(name), name)


def load_fixture_topo(name: str, n_expected: int | None = None) -> FiniteTopology:
    return parse_topo(fixture_text(name), name, n_expected)


# reference gyration pattern of G8: 'I' identity, 'A' = (4,6)(5,7)
G8_GYRATION_PATTERN = (
    "IIIIIIII",
    "IIIIAAAA",
    "IIIIAAAA",
    "IIIIIIII",
    "IAAIIAIA",
    "IAAIAIAI",
    "IAAIIAIA",
    "IAAIAIAI",
)
G8_A = (0, 1, 2, 3, 6, 7, 4, 5)


def g8_gyration_mismatches(G: FiniteGyrogroup) -> list[tuple[int, int]]:
    """Cells where the derived gyration differs from the reference pattern."""
    ident = tuple(range(8))
    if G.n != 8:
        return [(-1, -1)]
    out = []
    for a in range(8):
        for b in range(8):
            want = G8_A if G8_GYRATION_PATTERN[a][b] == "A" else ident
            if G.gyration(a, b) != want:
                out.append((a, b))
    return out
