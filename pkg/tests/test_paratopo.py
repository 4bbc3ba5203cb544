import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyrotopo import bits
from gyrotopo.core import UNBOUNDED, HypothesisFailure, PreconditionError
from gyrotopo.corpus import gyrogroups, instances
from gyrotopo.finite import enumerate_subgyrogroups
from gyrotopo.paratopo import (
    base_condition_witness,
    base_properties,
    classify,
    generate_topology,
    generate_topology_bruteforce,
    good_refinement,
    hausdorff_number,
    hausdorff_number_search,
    inverse_continuous_by_opens,
    is_omega_balanced,
    is_omega_good,
    is_topological,
    paratopological_by_opens,
    paratopological_witness,
    periodicity_witness,
    quotient_topology,
    quotient_topology_by_opens,
    strongly_by_base,
    strongly_lemmas,
    strongly_witness,
    subordination_witness,
    two_pseudocompact_witness,
    weak_hausdorff_number,
    weak_hausdorff_number_search,
)
from gyrotopo.topology import FiniteTopology

from oracles import base_loop, para_loop, strong_loop, subordination_loop

SMALL = [i for i in instances() if i.gyrogroup.n <= 4]
ALL = list(instances())


def test_fast_checks_match_loops_on_corpus():
    for inst in ALL:
        G, t = inst.gyrogroup, inst.topology
        assert paratopological_witness(G, t) == para_loop(G, t), inst.name
        assert strongly_witness(G, t) == strong_loop(G, t), inst.name


def test_paratopological_matches_definition_on_small_corpus():
    for inst in SMALL:
        G, t = inst.gyrogroup, inst.topology
        assert (paratopological_by_opens(G, t) is None) == (paratopological_witness(G, t) is None), inst.name


def test_topological_and_strongly_match_definitions():
    for inst in SMALL:
        G, t = inst.gyrogroup, inst.topology
        if paratopological_witness(G, t) is not None:
            continue
        assert is_topological(G, t) == inverse_continuous_by_opens(G, t), inst.name
        assert strongly_by_base(G, t) == (strongly_witness(G, t) is None), inst.name


def test_hausdorff_numbers_match_search():
    checked = 0
    for inst in SMALL:
        G, t = inst.gyrogroup, inst.topology
        if paratopological_witness(G, t) is not None:
            continue
        assert hausdorff_number_search(G, t) == hausdorff_number(G, t), inst.name
        assert weak_hausdorff_number_search(G, t) == weak_hausdorff_number(G, t), inst.name
        checked += 1
    assert checked > 10


def test_base_conditions_match_loop_on_random_families():
    rng = random.Random(3)
    for G in gyrogroups():
        for _ in range(120):
            fam = list(dict.fromkeys(rng.getrandbits(G.n) | 1 for _ in range(rng.randint(1, 5))))
            assert base_condition_witness(G, fam) == base_loop(G, fam, subordination_loop), (G.name, fam)
            U = rng.getrandbits(G.n) | 1
            assert subordination_witness(G, fam, U) == subordination_loop(G, fam, U)


def test_z2_negative_control(small_groups):
    t = FiniteTopology.from_opens(2, [0b01])
    assert paratopological_witness(small_groups["z2"], t) == (1, 1)
    assert paratopological_by_opens(small_groups["z2"], t) is not None


def test_g8_round_trip(g8):
    t = generate_topology(g8, [0b1111])
    assert t.opens() == (0, 0b1111, 0b11110000, 0xFF)
    c = classify(g8, t)
    assert (c.is_paratopological, c.is_strongly, c.is_topological) == (True, True, True)
    assert c.separation == "none" and c.hs == 1 and c.whs == 1
    assert base_properties(g8, t).passed


@pytest.mark.parametrize("G", [G for G in gyrogroups() if G.n <= 8], ids=lambda G: G.name)
def test_generated_topology_matches_brute_force(G):
    for info in enumerate_subgyrogroups(G):
        if not info.is_normal:
            continue
        fam = [info.members]
        t = generate_topology(G, fam)
        assert list(t.opens()) == generate_topology_bruteforce(G, fam)


def test_generation_rejects_non_invariant(g8):
    with pytest.raises(HypothesisFailure) as err:
        generate_topology(g8, [0b100001])
    assert err.value.report.violation.startswith("condition_")


def test_generation_rejects_non_halving(g8):
    with pytest.raises(HypothesisFailure) as err:
        generate_topology(g8, [0b11])
    assert err.value.report.violation == "condition_1_halving"


def test_strongly_lemmas_on_corpus():
    for inst in ALL:
        G, t = inst.gyrogroup, inst.topology
        if paratopological_witness(G, t) is None and strongly_witness(G, t) is None:
            assert strongly_lemmas(G, t).passed, inst.name


def test_strongly_lemmas_precondition(small_groups):
    t = FiniteTopology.from_opens(2, [0b01])
    with pytest.raises(PreconditionError):
        strongly_lemmas(small_groups["z2"], t)


def test_periodicity_witness(small_groups):
    z4 = small_groups["z4"]
    discrete = FiniteTopology.discrete(4)
    assert periodicity_witness(z4, discrete) is None
    # {0} open but 1 never lands in {0,...}: orbit of 1 reaches 0, so still periodic
    assert periodicity_witness(z4, FiniteTopology.from_opens(4, [0b0001])) is None


def test_two_pseudocompact_examples(g8, coset_topo):
    assert two_pseudocompact_witness(g8, coset_topo) is None
    z2 = FiniteTopology.discrete(2)
    assert two_pseudocompact_witness(gyrogroups()[1], z2) is None


def test_two_pseudocompact_chain_brute_force():
    # every strictly decreasing chain of nonempty opens
    for inst in SMALL[:200]:
        G, t = inst.gyrogroup, inst.topology
        opens = [o for o in t.opens() if o]
        found = None
        for r in range(1, len(opens) + 1):
            for chain in itertools.combinations(sorted(opens, key=bits.size, reverse=True), r):
                if all(bits.is_subset(b, a) and a != b for a, b in zip(chain, chain[1:])):
                    inter = t.full
                    for O in chain:
                        inter &= t.closure(G.neg_set(O))
                    if inter == 0:
                        found = chain
                        break
            if found:
                break
        assert (found is None) == (two_pseudocompact_witness(G, t) is None), inst.name


def test_omega_balanced_and_good(g8, coset_topo):
    assert is_omega_balanced(g8, coset_topo)
    assert is_omega_good(g8, coset_topo, 0b1111)
    assert not is_omega_good(g8, coset_topo, 0b0011)


def test_good_refinement(g8, coset_topo):
    V = good_refinement(g8, coset_topo, [0xFF, 0b1111, 0b1111])
    assert V == 0b1111
    with pytest.raises(PreconditionError):
        good_refinement(g8, coset_topo, [0b1111, 0xFF])


def test_quotient_topology_matches_opens(g8, coset_topo):
    for info in enumerate_subgyrogroups(g8):
        if not info.is_L:
            continue
        space = quotient_topology(g8, coset_topo, info.members)
        assert list(space.topology.opens()) == quotient_topology_by_opens(g8, coset_topo, info.members)


def test_finite_degeneracy_of_hausdorff_numbers():
    # M + M inside M and injective translations force x + M = M on x in M, so -M = M
    for inst in ALL:
        G, t = inst.gyrogroup, inst.topology
        if paratopological_witness(G, t) is not None:
            continue
        M = t.minimal[0]
        assert all(G.left_shift(x, M) == M for x in bits.iter_members(M)), inst.name
        assert G.neg_set(M) == M
        assert (hausdorff_number(G, t), weak_hausdorff_number(G, t)) == (1, 1)


def test_unbounded_value_on_raw_neighbourhood(small_groups):
    # the bare formula, outside the paratopological setting
    z4 = small_groups["z4"]
    t = FiniteTopology.from_opens(4, [0b0011])
    assert paratopological_witness(z4, t) is not None
    assert weak_hausdorff_number(z4, t) == UNBOUNDED
    assert hausdorff_number(z4, t) == UNBOUNDED


@given(st.sampled_from(SMALL))
def test_classification_consistency(inst):
    c = classify(inst.gyrogroup, inst.topology)
    if c.is_strongly:
        assert c.is_paratopological
        assert c.is_topological == c.inverse_continuous_at_zero
        if c.whs == 1:
            assert c.is_topological
    if c.is_paratopological:
        assert c.whs <= c.hs
