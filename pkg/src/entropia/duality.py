"""Duality for finite abelian groups and for shift groups with abelian
coefficients.

A finite abelian group is presented as Z/d_1 x ... x Z/d_k with
d_1 | ... | d_k and paired with itself by
``<x, y> = sum_i x_i y_i (L / d_i) mod L`` where L = d_k, so the dual of a
presentation is the same presentation. Annihilators are solved as linear
congruences over Z/L through a Smith decomposition.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .arith import Factored
from .exceptions import NotAbelian, NotAHomomorphism, NotContained, NotRepresentable
from .finite import (
    FiniteEndo,
    FiniteGroup,
    construct_cyclic,
    extend_homomorphism,
    from_multiplication,
    generating_set,
)


class FinAb:
    def __init__(self, factors):
        factors = tuple(int(d) for d in factors)
        if any(d < 2 for d in factors):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"{factors} is not a divisibility chain")
        self.factors = factors

    @classmethod
    def from_orders(cls, orders) -> FinAb:
        """Invariant factors of Z/n_1 x ... x Z/n_r."""
        orders = [int(n) for n in orders if int(n) > 1]
        if not orders:
            return cls(())
        S, _, _ = smith_normal_decomp(Matrix.diag(*orders))
        diag = sorted(abs(int(S[i, i])) for i in range(len(orders)))
        return cls([d for d in diag if d > 1])

    def __eq__(self, other):
        return isinstance(other, FinAb) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "FinAb(" + " x ".join(f"Z{d}" for d in self.factors) + ")" if self.factors else "FinAb(0)"

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(*(range(d) for d in self.factors)))

    def reduce(self, x) -> tuple:
        return tuple(int(a) % d for a, d in zip(x, self.factors))

    def add(self, x, y) -> tuple:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def scale(self, n: int, x) -> tuple:
        return tuple((n * a) % d for a, d in zip(x, self.factors))

    def pairing(self, x, y) -> int:
        """<x, y> as an integer mod L, meaning the angle value/L."""
        L = self.exponent
        return sum(a * b * (L // d) for a, b, d in zip(x, y, self.factors)) % L

    def subgroup(self, gens) -> FinAbSubgroup:
        zero = tuple(0 for _ in self.factors)
        seen = {zero}
        frontier = [zero]
        gens = [self.reduce(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return FinAbSubgroup(self, frozenset(seen))

    def whole(self) -> FinAbSubgroup:
        return FinAbSubgroup(self, frozenset(self.elements))

    def trivial(self) -> FinAbSubgroup:
        return self.subgroup([])

    @cached_property
    def group(self) -> FiniteGroup:
        """The same group as a tabulated FiniteGroup labelled by tuples."""
        return from_multiplication(list(self.elements), self.add, repr(self))

    def all_subgroups(self) -> list[FinAbSubgroup]:
        G = self.group
        return [FinAbSubgroup(self, frozenset(G.labels[i] for i in H.elements))
                for H in G.all_subgroups()]

    def endo(self, matrix) -> FinAbEndo:
        return FinAbEndo(self, tuple(tuple(int(v) for v in row) for row in matrix))

    def identity_endo(self) -> FinAbEndo:
        k = self.rank
        return self.endo([[int(i == j) for j in range(k)] for i in range(k)])

    def random_endo(self, rng) -> FinAbEndo:
        d = self.factors
        rows = []
        for i in range(self.rank):
            # column j may only carry multiples of d_i / gcd(d_i, d_j)
            rows.append([int(rng.integers(d[i])) * (d[i] // math.gcd(d[i], d[j])) % d[i]
                         for j in range(self.rank)])
        return self.endo(rows)


@dataclass(frozen=True)
class FinAbSubgroup:
    ambient: FinAb = field(repr=False)
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def generators(self) -> list:
        gens: list = []
        current = {tuple(0 for _ in self.ambient.factors)}
        for x in sorted(self.elements):
            if x not in current:
                gens.append(x)
                current = set(self.ambient.subgroup(gens).elements)
        return gens

    def __le__(self, other):
        return self.elements <= other.elements


@dataclass(frozen=True)
class FinAbEndo:
    """x -> M x with row i reduced mod d_i."""

    ambient: FinAb = field(repr=False)
    matrix: tuple

    def __post_init__(self):
        d = self.ambient.factors
        k = len(d)
        if len(self.matrix) != k or any(len(row) != k for row in self.matrix):
            raise NotAHomomorphism("matrix shape does not match the presentation")
        for i, j in itertools.product(range(k), range(k)):
            if (self.matrix[i][j] * d[j]) % d[i]:
                raise NotAHomomorphism(f"entry ({i},{j}) is not compatible with Z{d[j]} -> Z{d[i]}")

    def __call__(self, x) -> tuple:
        return self.ambient.reduce(sum(m * a for m, a in zip(row, x)) for row in self.matrix)

    def image(self, H: FinAbSubgroup) -> FinAbSubgroup:
        return FinAbSubgroup(self.ambient, frozenset(self(x) for x in H.elements))

    def preimage(self, H: FinAbSubgroup) -> FinAbSubgroup:
        return FinAbSubgroup(self.ambient,
                             frozenset(x for x in self.ambient.elements if self(x) in H.elements))


def _solve_annihilator(G: FinAb, gens) -> FinAbSubgroup:
    """All y with <h, y> = 0 for every generator h."""
    d, L, k = G.factors, G.exponent, G.rank
    if not gens or k == 0:
        return G.whole()
    C = Matrix([[h[i] * (L // d[i]) for i in range(k)] for h in gens])
    S, _, V = smith_normal_decomp(C)
    solutions = []
    for i in range(k):
        s = int(S[i, i]) if i < min(S.shape) else 0
        scale = L // math.gcd(s, L)
        solutions.append([int(V[r, i]) * scale for r in range(k)])
    return G.subgroup(solutions)


def annihilator(H: FinAbSubgroup) -> FinAbSubgroup:
    """Characters vanishing on H, as a subgroup of the (identical) dual presentation."""
    return _solve_annihilator(H.ambient, H.generators())


def co_annihilator(A: FinAbSubgroup) -> FinAbSubgroup:
    """Elements killed by every character in A; the pairing is symmetric."""
    return _solve_annihilator(A.ambient, A.generators())


def dual_endo(phi: FinAbEndo) -> FinAbEndo:
    """The adjoint for the fixed pairing: N_ji = M_ij d_j / d_i."""
    d = phi.ambient.factors
    k = len(d)
    return phi.ambient.endo([[phi.matrix[i][j] * d[j] // d[i] for i in range(k)] for j in range(k)])


def quotient_invariant_factors(A: FinAbSubgroup, B: FinAbSubgroup) -> tuple:
    """Invariant factors of A/B, read off from the p^j-torsion counts."""
    G = A.ambient
    size = A.order // B.order
    per_prime = {}
    for p in Factored.of(size).exponents if size > 1 else ():
        parts = []
        prev = 1
        j = 1
        while True:
            count = sum(1 for x in A.elements if G.scale(p**j, x) in B.elements) // B.order
            # count = p^(sum_i min(j, e_i)); the jump counts parts of size >= j
            jump = round(math.log(count // prev, p)) if count > prev else 0
            if jump == 0:
                break
            parts.append(jump)
            prev = count
            j += 1
        # parts[j-1] = #{i : e_i >= j}
        exps = [sum(1 for c in parts if c > i) for i in range(parts[0])] if parts else []
        per_prime[p] = sorted(exps)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for i in range(width):
        q = 1
        for p, exps in per_prime.items():
            j = i - (width - len(exps))
            if j >= 0:
                q *= p ** exps[j]
        factors.append(q)
    return tuple(factors)


@dataclass(frozen=True)
class DualityReport:
    name: str
    holds: bool
    details: dict


def check_dual_quotient(A: FinAbSubgroup, B: FinAbSubgroup) -> DualityReport:
    """A/B against B^perp / A^perp: same order and same invariant factors."""
    if not B <= A:
        raise NotContained("B must be a subgroup of A")
    Bp, Ap = annihilator(B), annihilator(A)
    left = quotient_invariant_factors(A, B)
    right = quotient_invariant_factors(Bp, Ap)
    holds = A.order * Ap.order == Bp.order * B.order and left == right
    return DualityReport("dual-quotient", holds, {"A/B": left, "B^perp/A^perp": right})


def check_annihilator_preimage(phi: FinAbEndo, U: FinAbSubgroup) -> DualityReport:
    """(phi^-1 U)^perp against dual(phi)(U^perp)."""
    lhs = annihilator(phi.preimage(U))
    rhs = dual_endo(phi).image(annihilator(U))
    return DualityReport("annihilator-preimage", lhs == rhs,
                         {"lhs_order": lhs.order, "rhs_order": rhs.order})


# -- tabulated abelian groups ---------------------------------------------------


@dataclass(frozen=True)
class CharacterGroup:
    """Characters of a tabulated abelian group as value tables in Z/exponent."""

    source: FiniteGroup
    group: FiniteGroup
    chars: tuple

    def annihilator(self, elements) -> frozenset:
        return frozenset(i for i, chi in enumerate(self.chars) if all(chi[x] == 0 for x in elements))

    def dual_endo(self, theta: FiniteEndo) -> FiniteEndo:
        pos = {chi: i for i, chi in enumerate(self.chars)}
        images = [pos[tuple(chi[theta.images[x]] for x in range(self.source.order))]
                  for chi in self.chars]
        return FiniteEndo(self.group, tuple(images))


@lru_cache(maxsize=256)
def character_group(G: FiniteGroup) -> CharacterGroup:
    if not G.is_abelian:
        raise NotAbelian(f"{G.name} is not abelian")
    L = G.exponent
    ZL = construct_cyclic(L)
    gens = generating_set(G)
    chars = []
    for imgs in itertools.product(range(L), repeat=len(gens)):
        f = extend_homomorphism(G, gens, imgs, ZL)
        if f is not None:
            chars.append(f)
    if len(chars) != G.order:
        raise NotAbelian("character count does not match the group order")
    pos = {chi: i for i, chi in enumerate(chars)}
    table = [[pos[tuple((a + b) % L for a, b in zip(u, v))] for v in chars] for u in chars]
    dual = FiniteGroup(table, name=f"dual({G.name})", validate=False)
    return CharacterGroup(G, dual, tuple(chars))


# -- shift groups -------------------------------------------------------------------


class ShiftDual:
    """Dual of a shift group over abelian F: coefficients F^, reversed
    orientation, and coordinatewise annihilators (which swap F and e)."""

    def __init__(self, G):
        from .shift import ShiftGroup

        if not G.F.is_abelian:
            raise NotAbelian("shift duality needs an abelian coefficient group")
        self.source = G
        self.chars = character_group(G.F)
        flipped = "right" if G.orientation == "left" else "left"
        self.target = ShiftGroup(self.chars.group, flipped)

    def pattern(self, A):
        ann = self.chars.annihilator
        return self.target.pattern(ann(A.left), A.start, [ann(v) for v in A.values], ann(A.right))

    def endo(self, phi):
        """(phi^ chi)_m = theta^(chi_{m-s}), the shift by -s."""
        return self.target.shift_endo(-phi.s, self.chars.dual_endo(phi.theta))


def dual_shift_model(G, phi=None):
    """(dual model, dual endomorphism or None, handle dualizer)."""
    d = ShiftDual(G)
    return d.target, (d.endo(phi) if phi is not None else None), d.pattern


def dual_system(phi):
    """The dual endomorphism on a concrete dual model."""
    from .product import PairEndo, product_endo
    from .shift import ShiftEndo

    if isinstance(phi, FiniteEndo):
        return character_group(phi.model).dual_endo(phi)
    if isinstance(phi, ShiftEndo):
        return ShiftDual(phi.model).endo(phi)
    if isinstance(phi, PairEndo):
        return product_endo(dual_system(phi.first), dual_system(phi.second))
    raise NotRepresentable(f"no concrete dual for the {phi.model.kind} model")
