import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropia.arith import Entropy
from entropia.duality import (
    FinAb,
    annihilator,
    character_group,
    check_annihilator_preimage,
    check_dual_quotient,
    co_annihilator,
    dual_endo,
    dual_shift_model,
    dual_system,
    quotient_invariant_factors,
)
from entropia.entropy import check_bridge, halg, htop
from entropia.exceptions import NotAbelian, NotAHomomorphism, NotRepresentable
from entropia.finite import (
    abelian_invariant_lists,
    all_endomorphisms,
    construct_cyclic,
    construct_product,
    construct_symmetric,
)
from entropia.model import equals, image, preimage
from entropia.padic import PAdicGroup
from entropia.shift import ShiftGroup

from oracles import annihilator_by_pairing, homomorphism_count_vanishing_on

SMALL = [FinAb(f) for f in abelian_invariant_lists(16) if f]
UP_TO_64 = [FinAb(f) for f in abelian_invariant_lists(64) if f]


def test_presentation():
    assert FinAb.from_orders([2, 3]).factors == (6,)
    assert FinAb.from_orders([4, 6]).factors == (2, 12)
    assert FinAb.from_orders([1]).factors == ()
    with pytest.raises(ValueError):
        FinAb((4, 2))
    G = FinAb((2, 4))
    assert G.order == 8 and G.exponent == 4 and G.pairing((1, 0), (1, 0)) == 2


def test_z4_example():
    G = FinAb((4,))
    H = G.subgroup([(2,)])
    assert annihilator(H).elements == frozenset({(0,), (2,)})
    assert homomorphism_count_vanishing_on(G, H) == 2


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_annihilator_against_pairing_and_counting(G):
    for H in G.all_subgroups():
        A = annihilator(H)
        assert A.elements == annihilator_by_pairing(G, H)
        assert A.order == homomorphism_count_vanishing_on(G, H)
        assert A.order * H.order == G.order
        assert co_annihilator(A) == H


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_sum_and_intersection_exchange(G):
    subs = G.all_subgroups()
    for A in subs[:12]:
        for B in subs[:12]:
            S = G.subgroup(list(A.elements | B.elements))
            I = G.subgroup(list(A.elements & B.elements))
            assert annihilator(S).elements == annihilator(A).elements & annihilator(B).elements
            assert annihilator(I) == G.subgroup(
                list(annihilator(A).elements | annihilator(B).elements))


@pytest.mark.parametrize("G", UP_TO_64, ids=repr)
def test_dual_endo_adjoint_exhaustively(G):
    rng = np.random.default_rng(G.order)
    for _ in range(3):
        phi = G.random_endo(rng)
        psi = dual_endo(phi)
        for x in G.elements:
            fx = phi(x)
            for y in G.elements:
                assert G.pairing(fx, y) == G.pairing(x, psi(y))
        assert dual_endo(psi) == phi


def test_ill_defined_matrix_rejected():
    with pytest.raises(NotAHomomorphism):
        FinAb((2, 4)).endo([[1, 0], [1, 1]])


@settings(max_examples=60)
@given(st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_annihilator_preimage_identity(G, seed):
    rng = np.random.default_rng(seed)
    phi = G.random_endo(rng)
    subs = G.all_subgroups()
    U = subs[int(rng.integers(len(subs)))]
    assert check_annihilator_preimage(phi, U).holds


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_dual_quotient(G):
    subs = G.all_subgroups()
    for A in subs:
        for B in subs:
            if B <= A:
                assert check_dual_quotient(A, B).holds


def test_quotient_invariant_factors():
    G = FinAb((2, 4))
    assert quotient_invariant_factors(G.whole(), G.trivial()) == (2, 4)
    assert quotient_invariant_factors(G.whole(), G.subgroup([(0, 2)])) == (2, 2)
    assert quotient_invariant_factors(G.whole(), G.subgroup([(0, 1)])) == (2,)
    assert quotient_invariant_factors(G.trivial(), G.trivial()) == ()
    H = FinAb((2, 4, 8))
    assert quotient_invariant_factors(H.whole(), H.subgroup([(1, 0, 0)])) == (4, 8)


@pytest.mark.parametrize("orders", [[2], [6], [2, 2], [2, 4], [3, 3]])
def test_character_group(orders):
    G = construct_product(orders)
    X = character_group(G)
    assert X.group.order == G.order and X.group.is_abelian
    L = G.exponent
    for chi in X.chars:
        for a in range(G.order):
            for b in range(G.order):
                assert chi[G.mul(a, b)] == (chi[a] + chi[b]) % L
    for H in G.all_subgroups():
        assert len(X.annihilator(H.elements)) * H.order == G.order


def test_character_group_needs_abelian():
    with pytest.raises(NotAbelian):
        character_group(construct_symmetric(3))


def test_tabulated_dual_endo_is_adjoint():
    G = construct_product([2, 4])
    X = character_group(G)
    for theta in all_endomorphisms(G):
        dual = X.dual_endo(theta)
        for i, chi in enumerate(X.chars):
            chi_theta = X.chars[dual.images[i]]
            assert all(chi_theta[x] == chi[theta.images[x]] for x in range(G.order))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_shift_dual_adjointness(q):
    G = ShiftGroup(construct_cyclic(q))
    for s in (-2, -1, 0, 1):
        for theta in all_endomorphisms(G.F):
            phi = G.shift_endo(s, theta)
            target, dual_phi, dualize = dual_shift_model(G, phi)
            assert target.orientation == "right"
            for A in (G.U(0), G.U(2), G.window(-1, [G.triv, G.full]),
                      G.window(0, [G.F.generate([q // 2 or 1]).elements])):
                # ann(phi^-1 A) = phi^(ann A)
                try:
                    rhs = image(dual_phi, dualize(A))
                except NotRepresentable:
                    continue
                assert equals(dualize(preimage(phi, A)), rhs)
                # ann(phi A) = phi^-1(ann A)
                try:
                    lhs = dualize(image(phi, A))
                except NotRepresentable:
                    continue
                assert equals(lhs, preimage(dual_phi, dualize(A)))


def test_dual_swaps_compact_and_open():
    G = ShiftGroup(construct_cyclic(2))
    _, _, dualize = dual_shift_model(G)
    assert dualize(G.U(0)).compact and dualize(G.U(0)).open
    assert dualize(G.whole()) == dualize(G.whole()).model.trivial()


def test_bridge_examples():
    for q in (2, 3, 4):
        G = ShiftGroup(construct_cyclic(q))
        for phi in (G.right_shift(), G.left_shift()):
            r = check_bridge(phi)
            assert r.holds
        assert htop(dual_system(G.right_shift())) == Entropy.log(q)
    Z4 = construct_cyclic(4)
    assert check_bridge(Z4.power_map(3)).holds
    assert halg(dual_system(Z4.power_map(2))).is_zero


def test_bridge_unsupported_cases():
    with pytest.raises(NotRepresentable):
        check_bridge(PAdicGroup(2).mult(2))
    with pytest.raises(NotAbelian):
        check_bridge(construct_symmetric(3).conjugation(1))
