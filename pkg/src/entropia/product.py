"""Direct products G1 x G2 of two models with componentwise handles."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import INFINITE
from .model import GroupModel


class ProductModel(GroupModel):
    """Chain member k is ``U1_k x U2_k``; rectangles of this shape are cofinal
    among compact subsets of the product."""

    kind = "product"

    def __init__(self, first: GroupModel, second: GroupModel):
        self.first = first
        self.second = second

    def __eq__(self, other):
        return (isinstance(other, ProductModel) and self.first == other.first
                and self.second == other.second)

    def __hash__(self):
        return hash((self.first, self.second))

    def __repr__(self):
        return f"ProductModel({self.first!r}, {self.second!r})"

    @property
    def is_compact(self):
        return self.first.is_compact and self.second.is_compact

    @property
    def is_discrete(self):
        return self.first.is_discrete and self.second.is_discrete

    @property
    def is_abelian(self):
        return self.first.is_abelian and self.second.is_abelian

    def pair(self, A, B) -> PairSubgroup:
        return PairSubgroup(self, A, B)

    def endo(self, f, g) -> PairEndo:
        return PairEndo(self, f, g)

    def whole(self):
        return self.pair(self.first.whole(), self.second.whole())

    def trivial(self):
        return self.pair(self.first.trivial(), self.second.trivial())

    def chain(self, k: int):
        return self.pair(self.first.chain(k), self.second.chain(k))

    @property
    def chain_length(self):
        a, b = self.first.chain_length, self.second.chain_length
        return None if a is None or b is None else max(a, b)

    def identity_endo(self):
        return self.endo(self.first.identity_endo(), self.second.identity_endo())

    def _product(self, A, B):
        return self.pair(self.first._product(A.first, B.first),
                         self.second._product(A.second, B.second))

    def _intersect(self, A, B):
        return self.pair(self.first._intersect(A.first, B.first),
                         self.second._intersect(A.second, B.second))

    def _preimage(self, phi, A):
        return self.pair(self.first._preimage(phi.first, A.first),
                         self.second._preimage(phi.second, A.second))

    def _image(self, phi, A):
        return self.pair(self.first._image(phi.first, A.first),
                         self.second._image(phi.second, A.second))

    def _index(self, A, B):
        a = self.first._index(A.first, B.first)
        b = self.second._index(A.second, B.second)
        if a is INFINITE or b is INFINITE:
            return INFINITE
        return a * b

    def _contains(self, A, B):
        return (self.first._contains(A.first, B.first)
                and self.second._contains(A.second, B.second))

    def compose(self, f, g):
        return self.endo(self.first.compose(f.first, g.first),
                         self.second.compose(f.second, g.second))

    def inverse(self, f):
        return self.endo(self.first.inverse(f.first), self.second.inverse(f.second))

    def family_cutoff(self, phi):
        c1, why1 = self.first.family_cutoff(phi.first)
        c2, why2 = self.second.family_cutoff(phi.second)
        return max(c1, c2), f"first factor: {why1}; second factor: {why2}"

    def stabilization_bound(self, phi, U):
        a = self.first.stabilization_bound(phi.first, U.first)
        b = self.second.stabilization_bound(phi.second, U.second)
        return None if a is None or b is None else max(a, b)

    def u_minus_closed_form(self, phi, U):
        from .entropy import u_minus

        return self.pair(u_minus(phi.first, U.first).u_minus,
                         u_minus(phi.second, U.second).u_minus)

    def htop_steps(self, phi):
        return max(self.first.htop_steps(phi.first), self.second.htop_steps(phi.second))


@dataclass(frozen=True)
class PairSubgroup:
    model: ProductModel = field(repr=False)
    first: object
    second: object

    @property
    def normal(self):
        return self.first.normal and self.second.normal

    @property
    def compact(self):
        return self.first.compact and self.second.compact

    @property
    def open(self):
        return self.first.open and self.second.open


@dataclass(frozen=True)
class PairEndo:
    model: ProductModel = field(repr=False)
    first: object
    second: object

    @property
    def is_automorphism(self):
        return self.first.is_automorphism and self.second.is_automorphism

    @property
    def kernel(self):
        return self.model.pair(self.first.kernel, self.second.kernel)


def product_endo(phi1, phi2) -> PairEndo:
    """``phi1 x phi2`` on the product of their models."""
    return ProductModel(phi1.model, phi2.model).endo(phi1, phi2)
