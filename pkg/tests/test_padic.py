from fractions import Fraction

import pytest

from entropia.arith import Entropy, Factored
from entropia.entropy import (
    check_inverse_modulus,
    halg,
    halg_via_inverse_invariant,
    halg_with_respect_to_limit,
    halg_with_respect_to_limitfree,
    modulus,
)
from entropia.exceptions import NotAGroup, QuotientNotRepresentable, ZeroMultiplier
from entropia.model import image, index, preimage
from entropia.padic import MultEndo, PAdicGroup, padic_halg_closed_form, valuation

from oracles import level_index_by_counting, level_preimage_by_search


def test_prime_check():
    with pytest.raises(NotAGroup):
        PAdicGroup(6)
    assert PAdicGroup(7).p == 7


def test_multiplier_valuation():
    G = PAdicGroup(3)
    assert G.mult(Fraction(2, 9)).v == -2
    assert G.mult(18).v == 2
    assert valuation(Fraction(5, 7), 5) == 1
    with pytest.raises(ZeroMultiplier):
        G.mult(0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_index_against_counting(p):
    G = PAdicGroup(p)
    for a in range(-1, 3):
        for b in range(a, 4):
            assert int(index(G.level(a), G.level(b))) == level_index_by_counting(p, a, b)


@pytest.mark.parametrize("p,v", [(2, 1), (3, -1), (5, 2), (2, -3)])
def test_preimage_against_search(p, v):
    G = PAdicGroup(p)
    for k in (-2, 0, 3):
        assert preimage(MultEndo(G, v), G.level(k)).level == level_preimage_by_search(p, v, k)


def test_level_ops():
    G = PAdicGroup(2)
    assert index(G.level(0), G.level(0)).is_one()
    assert index(G.level(0), G.level(3)) == 8
    assert image(G.mult(2), G.level(0)) == G.level(1)
    assert G.whole().compact is False and G.trivial().open is False


def test_closed_form_examples():
    G = PAdicGroup(5)
    assert padic_halg_closed_form(MultEndo(G, 0)) == Entropy.zero()
    assert padic_halg_closed_form(MultEndo(G, -1)) == Entropy.log(5)
    assert padic_halg_closed_form(MultEndo(G, 2)) == Entropy.zero()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("v", range(-4, 5))
def test_generic_routes_match_closed_form(p, v):
    G = PAdicGroup(p)
    phi = MultEndo(G, v)
    expected = padic_halg_closed_form(phi)
    for level in range(-2, 3):
        U = G.level(level)
        lim, rep = halg_with_respect_to_limit(phi, U)
        assert rep.certified
        assert lim == expected
        assert halg_with_respect_to_limitfree(phi, U) == expected
    assert halg(phi) == expected


def test_stabilization_bound_examples():
    G = PAdicGroup(3)
    for v, level in [(-1, 0), (0, 4), (3, -5)]:
        phi = MultEndo(G, v)
        assert G.stabilization_bound(phi, G.level(level)) == 2
    _, rep = halg_with_respect_to_limit(MultEndo(G, -1), G.level(0))
    # t_n = p^{n-1}
    assert rep.t[:3] == (Factored.of(1), Factored.of(3), Factored.of(9))
    assert rep.beta[0] == rep.beta[1] == 3


@pytest.mark.parametrize("v", range(-2, 3))
def test_modulus_and_inverse_identity(v):
    G = PAdicGroup(3)
    phi = MultEndo(G, v)
    assert modulus(phi) == Factored.of(Fraction(3) ** -v)
    report = check_inverse_modulus(phi)
    assert report.holds
    assert report.lhs == Entropy.log(3 ** max(0, v))


def test_inverse_invariant_formula():
    G = PAdicGroup(5)
    assert halg_via_inverse_invariant(G.mult(Fraction(1, 5)), G.level(0)) == Entropy.log(5)


def test_quotient_support_is_limited():
    G = PAdicGroup(2)
    phi = G.mult(2)
    restricted, induced = G.restriction_and_quotient(phi, G.whole())
    assert restricted is phi and induced.model.order == 1
    with pytest.raises(QuotientNotRepresentable):
        G.restriction_and_quotient(phi, G.level(0))
