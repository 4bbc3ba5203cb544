import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyrotopo import bits
from gyrotopo.topology import (
    FiniteTopology,
    TooManyOpens,
    all_topologies,
    cardinal_report,
    is_T0,
    is_T1,
    is_T2,
    separation,
    worst_min_subcover,
    worst_min_subcover_bruteforce,
)

from oracles import opens_loop


@st.composite
def preorder_topologies(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return FiniteTopology.from_preorder(n, pairs)


def test_topology_counts():
    # number of topologies on 1..4 labelled points
    assert [len(all_topologies(n)) for n in range(1, 5)] == [1, 4, 29, 355]


@given(preorder_topologies())
def test_opens_are_unions_of_minimal(t):
    assert list(t.opens()) == opens_loop(t)


@given(preorder_topologies())
def test_opens_closed_under_union_and_intersection(t):
    opens = set(t.opens())
    assert {0, t.full} <= opens
    for a, b in itertools.product(opens, repeat=2):
        assert a | b in opens and a & b in opens


@given(preorder_topologies(), st.integers(0, 63))
def test_interior_and_closure(t, raw):
    A = raw & t.full
    opens = t.opens()
    assert t.interior(A) == max((o for o in opens if bits.is_subset(o, A)), key=bits.size)
    closed = [t.full & ~o for o in opens]
    assert t.closure(A) == min((c for c in closed if bits.is_subset(A, c)), key=bits.size)


@given(preorder_topologies())
def test_from_opens_round_trip(t):
    assert FiniteTopology.from_opens(t.n, t.opens()) == t


@given(preorder_topologies(max_n=5))
def test_separation_definitions(t):
    opens = t.opens()
    pts = range(t.n)

    def t0():
        return all(any(bits.contains(o, x) != bits.contains(o, y) for o in opens)
                   for x, y in itertools.combinations(pts, 2))

    def t1():
        return all(any(bits.contains(o, x) and not bits.contains(o, y) for o in opens)
                   for x, y in itertools.permutations(pts, 2))

    def t2():
        return all(any(bits.contains(o, x) and bits.contains(p, y) and o & p == 0
                       for o in opens for p in opens)
                   for x, y in itertools.combinations(pts, 2))

    assert (is_T0(t), is_T1(t), is_T2(t)) == (t0(), t1(), t2())


@given(preorder_topologies(max_n=4))
def test_min_subcover_matches_brute_force(t):
    assert worst_min_subcover(t) == worst_min_subcover_bruteforce(t)


def test_cardinals_collapse_on_finite():
    t = FiniteTopology.from_opens(3, [0b001, 0b011])
    c = cardinal_report(t)
    assert (c.character, c.pseudocharacter, c.lindelof) == (1, 1, 1)
    assert c.min_subcover == 1


def test_separation_levels():
    assert separation(FiniteTopology.discrete(4)) == "T2"
    assert separation(FiniteTopology.indiscrete(4)) == "none"
    sierpinski = FiniteTopology.from_opens(2, [0b01])
    assert separation(sierpinski) == "T0"


def test_invalid_minimal_rejected():
    with pytest.raises(ValueError):
        FiniteTopology(2, [0b01, 0b01])
    with pytest.raises(ValueError):
        FiniteTopology(3, [0b011, 0b110, 0b100])


def test_open_limit():
    with pytest.raises(TooManyOpens):
        FiniteTopology.discrete(12).opens(limit=100)
    assert FiniteTopology.discrete(12).count_opens(limit=5000) == 4096


def test_subspace_and_product():
    t = FiniteTopology.from_opens(4, [0b0011])
    sub, members = t.subspace(0b0101)
    assert members == [0, 2]
    assert sub.opens() == (0, 0b01, 0b11)
    p = FiniteTopology.discrete(2).product(FiniteTopology.indiscrete(2))
    assert p.count_opens() == 4
