"""Q_p as a lattice of level subgroups p^k Z_p under multiplication maps.

Elements of Q_p are never represented. A multiplication by r != 0 is
recorded only through v = v_p(r): the unit part of r stabilizes every
level subgroup, so it does not affect any subgroup computation here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import INFINITE, Entropy, Factored
from .exceptions import NotAGroup, QuotientNotRepresentable, ZeroMultiplier
from .model import GroupModel

# level of the whole group and of the zero subgroup
WHOLE_LEVEL = -math.inf
ZERO_LEVEL = math.inf


def valuation(r, p: int) -> int:
    r = Fraction(r)
    if r == 0:
        raise ZeroMultiplier("multiplication by zero is not in the endomorphism class")
    v = 0
    num, den = r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PAdicGroup(GroupModel):
    p: int
    kind = "padic"

    def __post_init__(self):
        if self.p < 2 or Factored.of(self.p).exponents != {self.p: 1}:
            raise NotAGroup(f"{self.p} is not prime")

    is_compact = False
    is_discrete = False
    is_abelian = True

    def level(self, k) -> LevelSubgroup:
        return LevelSubgroup(self, k)

    def whole(self):
        return LevelSubgroup(self, WHOLE_LEVEL)

    def trivial(self):
        return LevelSubgroup(self, ZERO_LEVEL)

    def chain(self, k: int):
        """p^{-k} Z_p."""
        if k < 1:
            raise ValueError("chain members are indexed from 1")
        return LevelSubgroup(self, -k)

    def identity_endo(self):
        return MultEndo(self, 0)

    def mult(self, r) -> MultEndo:
        return MultEndo(self, valuation(r, self.p))

    def _product(self, A, B):
        return LevelSubgroup(self, min(A.level, B.level))

    def _intersect(self, A, B):
        return LevelSubgroup(self, max(A.level, B.level))

    def _preimage(self, phi, A):
        # v_p(r x) >= k  iff  v_p(x) >= k - v
        return LevelSubgroup(self, A.level - phi.v)

    def _image(self, phi, A):
        return LevelSubgroup(self, A.level + phi.v)

    def _index(self, A, B):
        if A.level == B.level:
            return Factored.one()
        if math.isinf(A.level) or math.isinf(B.level):
            return INFINITE
        return Factored({self.p: int(B.level - A.level)})

    def _contains(self, A, B) -> bool:
        return A.level <= B.level

    def compose(self, f, g):
        return MultEndo(self, f.v + g.v)

    def inverse(self, f):
        return MultEndo(self, -f.v)

    def power(self, f, m: int):
        return MultEndo(self, m * f.v)

    def family_cutoff(self, phi):
        return 1, ("H_alg(phi, p^-k Z_p) does not depend on k: multiplication by p "
                   "commutes with phi and maps each chain member onto the next")

    def stabilization_bound(self, phi, U) -> int:
        # T_n is a level subgroup moving by at most |v| per step: beta_n is
        # constant from n = 1
        return 2

    def u_minus_closed_form(self, phi, U):
        if phi.v > 0 and not math.isinf(U.level):
            return self.whole()
        return U

    def htop_steps(self, phi) -> int:
        return 2

    def restriction_and_quotient(self, phi, H):
        from .finite import construct_cyclic

        trivial = construct_cyclic(1)
        if H.level == WHOLE_LEVEL:
            return phi, trivial.identity_endo()
        if H.level == ZERO_LEVEL:
            return trivial.identity_endo(), phi
        raise QuotientNotRepresentable("only {0} and Q_p are supported as H in the p-adic model")


@dataclass(frozen=True)
class LevelSubgroup:
    """p^level Z_p; level -inf is Q_p and +inf is {0}."""

    model: PAdicGroup = field(repr=False)
    level: float

    def __post_init__(self):
        if not math.isinf(self.level):
            object.__setattr__(self, "level", int(self.level))

    normal = True

    @property
    def compact(self) -> bool:
        return self.level != WHOLE_LEVEL

    @property
    def open(self) -> bool:
        return self.level != ZERO_LEVEL

    def __repr__(self):
        if self.level == WHOLE_LEVEL:
            return f"Q_{self.model.p}"
        if self.level == ZERO_LEVEL:
            return "{0}"
        return f"{self.model.p}^{self.level} Z_{self.model.p}"


@dataclass(frozen=True)
class MultEndo:
    """Multiplication by an element of valuation ``v``."""

    model: PAdicGroup = field(repr=False)
    v: int

    is_automorphism = True

    @property
    def kernel(self):
        return self.model.trivial()

    def __repr__(self):
        return f"MultEndo(p={self.model.p}, v={self.v})"


def padic_halg_closed_form(phi: MultEndo) -> Entropy:
    """log p^max(0, -v), the entropy of multiplication by a valuation-v element."""
    return Entropy.log(Fraction(phi.model.p) ** max(0, -phi.v))
