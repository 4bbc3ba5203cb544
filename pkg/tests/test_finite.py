import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyrotopo import bits
from gyrotopo.core import AxiomViolation, PreconditionError
from gyrotopo.finite import (
    check_axioms,
    closure,
    cyclic_group,
    cyclic_subgyrogroup,
    direct_product,
    enumerate_subgyrogroups,
    find_identity,
    is_gyrocommutative,
    is_L_subgyrogroup,
    is_normal,
    is_subgyrogroup,
    left_cosets,
    normality_verdicts,
    product_coordinates,
    product_index,
    quotient,
    relabel,
    restrict,
    validate,
)

from oracles import A_PERM, G8_GYR, G8_TABLE, is_normal_loop, subgyrogroups_loop


def test_table_matches_reference(g8):
    assert g8.table.tolist() == G8_TABLE


def test_gyrations_match_reference(g8):
    for a, b in itertools.product(range(8), repeat=2):
        want = tuple(A_PERM[x] for x in range(8)) if G8_GYR[a][b] == "A" else tuple(range(8))
        assert g8.gyration(a, b) == want, (a, b)
    assert len(g8.gyrations()) == 2


def test_g8_is_gyrocommutative_not_group(g8):
    assert is_gyrocommutative(g8)
    assert any(g8.gyration(a, b) != tuple(range(8)) for a in range(8) for b in range(8))


@pytest.mark.parametrize("cell,value", [((1, 3), 3), ((4, 4), 0), ((7, 7), 6)])
def test_single_corruption_is_caught(g8, cell, value):
    T = g8.table.copy()
    T[cell] = value
    report, G = check_axioms(T)
    assert G is None and not report.passed
    assert report.violation.startswith(("G", "translations"))
    assert report.witness


def test_corruption_witness_is_exact(g8):
    T = g8.table.copy()
    T[1, 3] = 3
    report, _ = check_axioms(T)
    assert (report.violation, report.witness) == ("G3_left_gyroassociative", (0, 2, 2))


def test_identity_elsewhere():
    swapped = [[1, 0], [0, 1]]
    report, G = check_axioms(swapped)
    assert G is None and report.violation == "G1_identity_index" and report.witness == (1,)
    with pytest.raises(AxiomViolation):
        validate(swapped)
    G = validate(swapped, relabel_identity=True)
    assert G.relabeling == (1, 0)
    assert G.table.tolist() == [[0, 1], [1, 0]]


def test_missing_inverse():
    report, G = check_axioms([[0, 1, 2], [1, 1, 1], [2, 2, 0]])
    assert G is None and report.violation == "G2_inverse"


@given(st.permutations(range(8)))
def test_relabel_preserves_validity(g8, perm):
    perm = [0] + [p for p in perm if p != 0]
    T = relabel(g8.table, perm)
    assert find_identity(T) == 0
    report, G = check_axioms(T)
    assert report.passed
    assert is_gyrocommutative(G)


def test_subgyrogroups_match_brute_force(g8, small_groups):
    for G in [g8, *small_groups.values()]:
        assert sorted(i.members for i in enumerate_subgyrogroups(G)) == subgyrogroups_loop(G)


def test_g8_subgyrogroup_lattice(g8):
    infos = enumerate_subgyrogroups(g8)
    assert [bits.fmt(i.members) for i in infos] == [
        "{0}", "{0,3}", "{0,5}", "{0,7}", "{0,1,2,3}", "{0,3,4,6}", "{0,3,5,7}", "{0,1,2,3,4,5,6,7}"]
    # A = (4,6)(5,7) moves {0,5} and {0,7}; everything else is normal
    assert [i.is_normal for i in infos] == [True, True, False, False, True, True, True, True]


def test_normality_criteria_agree_with_loop(g8, small_groups):
    for G in [g8, *small_groups.values(), direct_product(g8, small_groups["z2"])]:
        for info in enumerate_subgyrogroups(G):
            v = normality_verdicts(G, info.members)
            assert v.coset_law == v.gyr_conjugation == is_normal_loop(G, info.members)


def test_s3_has_non_normal_subgroup(small_groups):
    S3 = small_groups["s3"]
    non_normal = [i for i in enumerate_subgyrogroups(S3) if not i.is_normal]
    assert len(non_normal) == 3
    assert all(i.order == 2 for i in non_normal)


def test_enumeration_bound(g8):
    G = direct_product(g8, cyclic_group(4))
    with pytest.raises(PreconditionError):
        enumerate_subgyrogroups(G)
    assert len(enumerate_subgyrogroups(G, force=True)) > 7


def test_quotient_by_index_two(g8):
    Q = quotient(g8, 0b1111)
    assert Q.gyrogroup.n == 2
    assert Q.projection == (0, 0, 0, 0, 1, 1, 1, 1)
    assert Q.kernel == 0b1111
    assert Q.preimage(0b10) == 0b11110000


def test_quotient_rejects_non_normal(small_groups):
    S3 = small_groups["s3"]
    H = next(i.members for i in enumerate_subgyrogroups(S3) if not i.is_normal)
    with pytest.raises(PreconditionError):
        quotient(S3, H)


def test_cosets_partition(g8):
    for info in enumerate_subgyrogroups(g8):
        cosets, index = left_cosets(g8, info.members)
        assert sum(bits.size(c) for c in cosets) == 8
        assert cosets[0] == info.members
        assert all(bits.contains(cosets[index[x]], x) for x in range(8))


def test_cyclic_example(g8):
    cyc = cyclic_subgyrogroup(g8, 1)
    assert cyc.members == [0, 1, 2, 3]
    assert cyc.multiples[2] == 3 and cyc.multiples[3] == 2
    assert g8.add(1, g8.add(1, g8.add(1, 1))) == 0
    assert cyc.order == 4


def test_every_cyclic_subgyrogroup_is_a_group(g8):
    for a in range(8):
        cyc = cyclic_subgyrogroup(g8, a)
        assert cyc.order == bits.size(closure(g8, [a]))


def test_l_subgyrogroups(g8):
    assert is_L_subgyrogroup(g8, 0b1111)
    assert not is_L_subgyrogroup(g8, 0b100001)


def test_direct_product_coordinates(g8, small_groups):
    z2 = small_groups["z2"]
    P = direct_product(g8, z2)
    assert P.n == 16 and is_gyrocommutative(P)
    for i in range(16):
        c = product_coordinates((8, 2), i)
        assert product_index((8, 2), c) == i
    for i, j in itertools.product(range(16), repeat=2):
        (a, x), (b, y) = product_coordinates((8, 2), i), product_coordinates((8, 2), j)
        assert product_coordinates((8, 2), P.add(i, j)) == (g8.add(a, b), z2.add(x, y))


def test_restrict(g8):
    H, members = restrict(g8, 0b1111)
    assert members == [0, 1, 2, 3] and H.n == 4
    assert is_subgyrogroup(g8, 0b1111) and not is_subgyrogroup(g8, 0b10011)


def test_vectorized_helpers_match_scalar_versions(g8):
    sets = [0b1, 0b1111, 0b10100001, 0b11110000 | 1]
    S = g8.sumset_matrix(sets, sets)
    for i, A in enumerate(sets):
        for j, B in enumerate(sets):
            assert int(S[i, j]) == g8.sumset(A, B)
    T = g8.translate_masks(sets)
    for a in range(8):
        for k, A in enumerate(sets):
            assert int(T[a, k]) == g8.left_shift(a, A)


def test_conjugation_inverse(g8):
    C, inv = g8.conjugation_table, g8.conjugation_inverse_bits
    for x, y in itertools.product(range(8), repeat=2):
        phi = g8.conjugation_map(x, y)
        assert list(C[x, y]) == phi
        for v in range(8):
            assert int(inv[x, y, phi[v]]) == 1 << v


def test_gyrations_cached_copy(g8):
    s = g8.gyrations()
    s.clear()
    assert len(g8.gyrations()) == 2


def test_validate_rejects_non_square():
    with pytest.raises((ValueError, AxiomViolation)):
        validate(np.zeros((2, 3), dtype=int))
