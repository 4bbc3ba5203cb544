"""Subsets of a finite carrier {0..n-1} encoded as int bitmasks."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def members(mask: int) -> list[int]:
    return list(iter_members(mask))


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def contains(mask: int, x: int) -> bool:
    return bool(mask >> x & 1)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def size(mask: int) -> int:
    return mask.bit_count()


def image(mask: int, f: Sequence[int]) -> int:
    """Image of a subset under an elementwise map given as a lookup sequence."""
    m = 0
    for x in iter_members(mask):
        m |= 1 << int(f[x])
    return m


def fmt(mask: int) -> str:
    """Brace notation used in reports, e.g. ``{0,1,2,3}``."""
    return "{" + ",".join(map(str, members(mask))) + "}"
