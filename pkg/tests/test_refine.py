import pytest

from gyrotopo import bits
from gyrotopo.core import UNBOUNDED, HypothesisFailure, PreconditionError
from gyrotopo.finite import is_normal
from gyrotopo.refine import (
    Instance,
    diagonal_embedding,
    invariant_core,
    largest_invariant_open_inside,
    product_instance,
    product_report,
    projective_refine,
    refine_base,
    subgyrogroup_instance,
)
from gyrotopo.topology import FiniteTopology


def test_t2_refinement_on_coset_topology(g8, coset_topo):
    r = projective_refine(g8, coset_topo, 0b1111, "T2")
    assert r.feasible and r.certified, r.report.violation
    assert r.quotient.gyrogroup.n == 2
    assert r.projection == (0, 0, 0, 0, 1, 1, 1, 1)
    assert bits.is_subset(r.quotient.preimage(r.v0), 0b1111)
    assert r.quotient_topology == FiniteTopology.discrete(2)


@pytest.mark.parametrize("mode", ["T0", "T1", "T2"])
def test_discrete_refinement_is_identity_quotient(g8, mode):
    r = projective_refine(g8, FiniteTopology.discrete(8), 0b1, mode)
    assert r.certified and r.core == 1 and r.quotient.gyrogroup.n == 8


def test_refinement_checks_hold_for_every_invariant_open(g8):
    t = FiniteTopology.discrete(8)
    for r in refine_base(g8, t, "T2"):
        assert r.certified
        assert is_normal(g8, r.core)
        assert bits.is_subset(r.quotient.preimage(r.v0), r.u0)


def test_infeasible_mode_is_a_result(g8, coset_topo):
    r = projective_refine(g8, coset_topo, 0b1111, "T2", hs=lambda G, t: UNBOUNDED)
    assert not r.feasible and not r.certified
    assert r.report.violation == "infeasible"
    r = projective_refine(g8, coset_topo, 0b1111, "T1", whs=lambda G, t: UNBOUNDED)
    assert not r.feasible


def test_refinement_preconditions(g8, coset_topo, small_groups):
    with pytest.raises(PreconditionError):
        projective_refine(g8, coset_topo, 0b0011, "T2")
    with pytest.raises(PreconditionError):
        projective_refine(small_groups["z2"], FiniteTopology.from_opens(2, [0b01]), 1)
    with pytest.raises(ValueError):
        projective_refine(g8, coset_topo, 0b1111, "T3")


def test_invariant_core(g8):
    cert = invariant_core(g8, [0b1111])
    assert cert.core == 0b1111 and cert.variant == "d_variant"
    with pytest.raises(HypothesisFailure):
        invariant_core(g8, [0b11])


def test_largest_invariant_open_inside(g8):
    t = FiniteTopology.discrete(8)
    assert largest_invariant_open_inside(g8, t, 0b10011111) == 0b1111
    assert largest_invariant_open_inside(g8, t, 0xFF) == 0xFF


def test_embedding_discrete(g8):
    t = FiniteTopology.discrete(8)
    emb = diagonal_embedding(g8, t, refine_base(g8, t, "T0"))
    assert emb.embedding


def test_embedding_not_injective_on_non_t0(g8, coset_topo):
    emb = diagonal_embedding(g8, coset_topo, refine_base(g8, coset_topo, "T0"))
    assert not emb.injective and emb.kernel_witness == 1
    assert emb.homomorphism and emb.continuous


def test_products(g8, coset_topo, small_groups):
    z2 = Instance(small_groups["z2"], FiniteTopology.discrete(2), "z2")
    P, rep = product_report([Instance(g8, coset_topo, "g8"), z2])
    assert rep.passed and P.gyrogroup.n == 16
    assert rep.details["hs"] == 1
    with pytest.raises(PreconditionError):
        product_instance([Instance(g8, coset_topo)] * 3)


def test_subgyrogroup_instance(g8, coset_topo):
    K = subgyrogroup_instance(Instance(g8, coset_topo, "g8"), 0b1111)
    assert K.gyrogroup.n == 4
    assert K.topology == FiniteTopology.indiscrete(4)
