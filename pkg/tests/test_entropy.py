from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropia.arith import Entropy, Factored
from entropia.entropy import (
    CLOSED_FORM,
    Options,
    TrajectoryReport,
    check_addition_theorem,
    check_conjugation_invariance,
    check_inverse_modulus,
    check_logarithmic_law,
    check_monotonicity,
    check_weak_addition,
    halg,
    halg_detail,
    halg_via_inverse_invariant,
    halg_with_respect_to_limit,
    halg_with_respect_to_limitfree,
    htop,
    modulus,
    trajectory,
    trajectory_table,
    u_minus,
)
from entropia.exceptions import (
    HypothesisFailed,
    InconsistentResult,
    IterationBudgetExceeded,
    NotAutomorphism,
    PreconditionFailed,
)
from entropia.finite import (
    all_endomorphisms,
    construct_cyclic,
    construct_dihedral,
    construct_product,
    construct_symmetric,
    random_endomorphism,
)
from entropia.padic import PAdicGroup
from entropia.shift import ShiftGroup

from oracles import brute_halg_zero_witness, set_trajectory, set_u_minus

FINITE = [construct_cyclic(6), construct_cyclic(8), construct_product([2, 2]),
          construct_symmetric(3), construct_dihedral(4), construct_product([2, 4])]


def test_report_validation():
    one, two = Factored.one(), Factored.of(2)
    TrajectoryReport(2, (one, two), (two,), False, "ok")
    with pytest.raises(InconsistentResult):
        TrajectoryReport(2, (one,), (two,), False, "lengths")
    with pytest.raises(InconsistentResult):
        TrajectoryReport(2, (one, Factored.of(Fraction(1, 2))), (Factored.of(Fraction(1, 2)),),
                         False, "non-integer")
    with pytest.raises(InconsistentResult):
        TrajectoryReport(3, (one, two, Factored.of(8)), (two, Factored.of(4)), False, "rising")
    with pytest.raises(InconsistentResult):
        TrajectoryReport(2, (one, Factored.of(3)), (two,), False, "product")


def test_trajectory_examples():
    Z6 = construct_cyclic(6)
    U = Z6.generate([3])
    assert trajectory(Z6.power_map(5), U, 2).elements == frozenset({0, 3})
    with pytest.raises(ValueError):
        trajectory(Z6.power_map(5), U, 0)
    G = ShiftGroup(construct_cyclic(2))
    rep = trajectory_table(G.right_shift(), G.U(0), 5)
    assert [int(t) for t in rep.t] == [1, 2, 4, 8, 16]


def test_limit_route_is_certified_by_the_bound_or_a_fixed_point():
    G = ShiftGroup(construct_cyclic(5))
    h, rep = halg_with_respect_to_limit(G.right_shift(), G.U(1))
    assert h == Entropy.log(5) and rep.certified and "n0" in rep.certificate
    h, rep = halg_with_respect_to_limit(G.left_shift(), G.U(1))
    assert h == Entropy.zero() and "fixed point" in rep.certificate


def test_heuristic_window_when_no_bound(monkeypatch):
    G = ShiftGroup(construct_cyclic(3))
    monkeypatch.setattr(ShiftGroup, "stabilization_bound", lambda self, phi, U: None)
    h, rep = halg_with_respect_to_limit(G.right_shift(), G.U(0), Options(window=4))
    assert h == Entropy.log(3) and not rep.certified
    with pytest.raises(IterationBudgetExceeded):
        halg_with_respect_to_limit(G.right_shift(), G.U(0), Options(budget=2, window=4))


def test_preconditions():
    G = ShiftGroup(construct_cyclic(2))
    with pytest.raises(PreconditionFailed):
        halg_with_respect_to_limit(G.right_shift(), G.whole())
    with pytest.raises(PreconditionFailed):
        halg_via_inverse_invariant(G.left_shift(), G.U(0))
    with pytest.raises(NotAutomorphism):
        modulus(G.shift_endo(0, G.F.power_map(0)))


def test_u_minus_of_finite_examples():
    Z6 = construct_cyclic(6)
    r = u_minus(Z6.power_map(2), Z6.generate([3]))
    assert r.u_minus.elements == set_u_minus(Z6, Z6.power_map(2).images, {0, 3})


def test_halg_via_inverse_invariant_examples():
    G = ShiftGroup(construct_cyclic(3))
    assert halg_via_inverse_invariant(G.right_shift(), G.U(2)) == Entropy.log(3)
    Q = PAdicGroup(2)
    assert halg_via_inverse_invariant(Q.mult(Fraction(1, 4)), Q.level(3)) == Entropy.log(4)


def test_halg_detail_reports_members_and_cutoff():
    G = ShiftGroup(construct_cyclic(2))
    d = halg_detail(G.right_shift())
    assert d.cutoff == 1 and [k for k, _ in d.members] == [1, 2, 3]
    assert all(v == Entropy.log(2) for _, v in d.members)
    S3 = construct_symmetric(3)
    d = halg_detail(S3.conjugation(1))
    assert len(d.members) == S3.chain_length


@pytest.mark.parametrize("G", FINITE, ids=lambda G: G.name)
def test_finite_groups_have_zero_entropy_against_set_oracles(G):
    endos = all_endomorphisms(G)
    for f in endos[:40]:
        for k in range(1, G.chain_length + 1):
            U = G.chain(k)
            for n in (1, 2, 3):
                assert trajectory(f, U, n).elements == set_trajectory(G, f.images, U.elements, n)
            assert brute_halg_zero_witness(G, f.images, U.elements)[-1] == 1
            C = u_minus(f, U).u_minus
            assert C.elements == set_u_minus(G, f.images, U.elements)
            lim, rep = halg_with_respect_to_limit(f, U)
            assert lim.is_zero and rep.certified
            assert halg_with_respect_to_limitfree(f, U).is_zero
        assert halg(f).is_zero
        assert htop(f).is_zero


@settings(max_examples=40)
@given(st.sampled_from(FINITE), st.integers(0, 2**32 - 1))
def test_random_finite_endomorphism_properties(G, seed):
    f = random_endomorphism(G, np.random.default_rng(seed))
    assert halg(f).is_zero
    assert check_logarithmic_law(f, 3).holds
    if f.is_automorphism:
        assert modulus(f).is_one()
        assert check_inverse_modulus(f).holds


def test_htop_examples():
    for q in (2, 3, 4):
        G = ShiftGroup(construct_cyclic(q))
        assert htop(G.right_shift()) == Entropy.log(q)
        assert htop(G.left_shift()) == Entropy.zero()
    Q = PAdicGroup(3)
    for v in range(-2, 3):
        assert htop(Q.mult(Fraction(3) ** v)) == Entropy.log(3 ** max(0, -v))


def test_logarithmic_law():
    G = ShiftGroup(construct_cyclic(2))
    for m in range(0, 5):
        r = check_logarithmic_law(G.right_shift(), m)
        assert r.holds and r.lhs == Entropy.log(2 ** m)
    with pytest.raises(ValueError):
        check_logarithmic_law(G.right_shift(), -1)


def test_weak_addition():
    A = ShiftGroup(construct_cyclic(2))
    B = ShiftGroup(construct_cyclic(3))
    r = check_weak_addition(A.right_shift(), B.right_shift())
    assert r.holds and r.lhs == Entropy.log(6)
    Q = PAdicGroup(5)
    r = check_weak_addition(A.right_shift(), Q.mult(Fraction(1, 5)))
    assert r.holds and r.lhs == Entropy.log(10)


def test_conjugation_invariance():
    G = ShiftGroup(construct_cyclic(5))
    alpha = G.shift_endo(0, G.F.power_map(2))
    r = check_conjugation_invariance(G.right_shift(), alpha)
    assert r.holds and r.details["trajectory_identity"]
    S3 = construct_symmetric(3)
    r = check_conjugation_invariance(S3.power_map(1), S3.conjugation(2))
    assert r.holds
    with pytest.raises(NotAutomorphism):
        check_conjugation_invariance(G.right_shift(), G.shift_endo(0, G.F.power_map(0)))


def test_inverse_modulus():
    for q in (2, 3):
        G = ShiftGroup(construct_cyclic(q))
        assert modulus(G.right_shift()) == q
        r = check_inverse_modulus(G.right_shift())
        assert r.holds and r.lhs.is_zero


def test_addition_theorem_on_a_stable_subgroup():
    G = ShiftGroup(construct_cyclic(4))
    phi = G.shift_endo(-1, G.F.power_map(3))
    H = G.constant(G.F.generate([2]))
    r = check_addition_theorem(phi, H)
    assert r.hypotheses_hold and r.relation == "=" and r.holds
    assert r.lhs == Entropy.log(4)
    assert r.verdict == "HOLDS"


def test_addition_theorem_without_stability_falls_back():
    G = ShiftGroup(construct_cyclic(4))
    phi = G.shift_endo(-1, G.F.power_map(2))
    H = G.constant(G.F.generate([2]))
    r = check_addition_theorem(phi, H)
    assert r.hypotheses_hold is False and r.relation == ">="
    assert r.verdict == "HYPOTHESIS-FAILED"
    assert not r.hypotheses["stable"]


def test_addition_theorem_needs_invariance():
    G = ShiftGroup(construct_product([2, 2]))
    swap = G.F.endo([0, 2, 1, 3])
    H = G.constant(G.F.generate([1]))
    with pytest.raises(HypothesisFailed):
        check_addition_theorem(G.shift_endo(-1, swap), H)
    with pytest.raises(HypothesisFailed):
        check_monotonicity(G.shift_endo(-1, swap), H)


def test_addition_theorem_on_finite_groups():
    Z6 = construct_cyclic(6)
    r = check_addition_theorem(Z6.power_map(5), Z6.generate([2]))
    assert r.holds and r.hypotheses_hold
    S3 = construct_symmetric(3)
    A3 = next(H for H in S3.all_normal_subgroups() if H.order == 3)
    assert check_addition_theorem(S3.conjugation(1), A3).holds


def test_monotonicity():
    G = ShiftGroup(construct_cyclic(4))
    phi = G.shift_endo(-1, G.F.power_map(2))
    r = check_monotonicity(phi, G.constant(G.F.generate([2])))
    assert r.holds and r.lhs >= r.rhs


def test_report_json_shape():
    G = ShiftGroup(construct_cyclic(2))
    js = check_logarithmic_law(G.right_shift(), 2).to_json()
    assert js["verdict"] == "HOLDS" and js["lhs"]["float"].startswith("1.386")
    assert js["details"]["m"] == 2


def test_closed_form_marker_repr():
    assert "closed" in repr(CLOSED_FORM).lower()
