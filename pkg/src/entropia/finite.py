"""Finite groups given by Cayley tables, with brute-force subgroup lattices.

Elements are the indices ``0..n-1``. Every finite group is compact and
discrete, hence strongly compactly covered; its cofinal chain ends at the
whole group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .arith import Factored
from .exceptions import (
    NotAGroup,
    NotAHomomorphism,
    NotAutomorphism,
    NotInvariant,
    NotNormal,
    NotRepresentable,
    TooLarge,
)
from .model import GroupModel

ENUMERATION_CAP = 512


class FiniteGroup(GroupModel):
    """A finite group from its composition table ``table[a][b] = a*b``."""

    kind = "finite"

    def __init__(self, table, name: str = "", labels=None, validate: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        self.table = rows
        self.name = name or f"G{len(rows)}"
        self.labels = tuple(labels) if labels is not None else None
        self._hash = hash(rows)
        if validate:
            self._validate()

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- structure ---------------------------------------------------------

    @cached_property
    def arr(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(len(self.table), -1)

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def identity(self) -> int:
        arr = self.arr
        n = self.order
        for e in range(n):
            if np.array_equal(arr[e], np.arange(n)) and np.array_equal(arr[:, e], np.arange(n)):
                return e
        raise NotAGroup("no identity element")

    @cached_property
    def inv(self) -> np.ndarray:
        e = self.identity
        rows, cols = np.nonzero(self.arr == e)
        inv = np.full(self.order, -1, dtype=np.int64)
        inv[rows] = cols
        return inv

    def _validate(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise NotAGroup("table must be a non-empty square")
        arr = self.arr
        if arr.min() < 0 or arr.max() >= n:
            raise NotAGroup("table entries out of range")
        e = self.identity
        for a in range(n):
            if not np.any(arr[a] == e) or not np.any(arr[:, a] == e):
                raise NotAGroup(f"element {a} has no inverse")
            if len(set(self.table[a])) != n:
                raise NotAGroup(f"row {a} is not a permutation")
        inv = self.inv
        if np.any(arr[inv, np.arange(n)] != e):
            raise NotAGroup("left and right inverses differ")
        if n <= ENUMERATION_CAP:
            for a in range(n):
                # (a*b)*c == a*(b*c) for all b, c
                left = arr[arr[a]]
                right = arr[a][arr]
                if not np.array_equal(left, right):
                    b, c = map(int, np.argwhere(left != right)[0])
                    raise NotAGroup(f"associativity fails for ({a}, {b}, {c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.arr, self.arr.T))

    @property
    def is_compact(self) -> bool:
        return True

    @property
    def is_discrete(self) -> bool:
        return True

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    # -- subgroups ---------------------------------------------------------

    def closure(self, gens, base=()) -> frozenset:
        """The subgroup generated by ``base`` and ``gens``."""
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        mask[list(base)] = True
        mask[list(gens)] = True
        gens = np.flatnonzero(mask)
        while True:
            current = np.flatnonzero(mask)
            new = np.unique(self.arr[np.ix_(current, gens)])
            if mask[new].all():
                return frozenset(int(x) for x in current)
            mask[new] = True

    def subgroup(self, elements) -> FiniteSubgroup:
        """Wrap an element set, checking that it is a subgroup."""
        elements = frozenset(int(x) for x in elements)
        if not self.is_subgroup(elements):
            raise NotAGroup(f"{sorted(elements)} is not a subgroup of {self.name}")
        return FiniteSubgroup(self, elements)

    def generate(self, gens) -> FiniteSubgroup:
        return FiniteSubgroup(self, self.closure(gens))

    def is_subgroup(self, elements) -> bool:
        if not elements or self.identity not in elements:
            return False
        idx = np.fromiter(elements, dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        return bool(mask[self.arr[np.ix_(idx, idx)]].all() and mask[self.inv[idx]].all())

    def is_normal_set(self, elements) -> bool:
        idx = np.fromiter(elements, dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        conj = self.arr[self.arr[:, idx], self.inv[:, None]]
        return bool(mask[conj].all())

    def whole(self) -> FiniteSubgroup:
        return FiniteSubgroup(self, frozenset(range(self.order)))

    def trivial(self) -> FiniteSubgroup:
        return FiniteSubgroup(self, frozenset([self.identity]))

    @cached_property
    def _cyclic_subgroups(self) -> tuple[frozenset, ...]:
        seen = {}
        for a in range(self.order):
            H = self.closure([a])
            seen.setdefault(H, None)
        return tuple(seen)

    def _enumerate(self) -> tuple[frozenset, ...]:
        if self.order > ENUMERATION_CAP:
            raise TooLarge(f"order {self.order} exceeds the enumeration cap {ENUMERATION_CAP}")
        cyclic = self._cyclic_subgroups
        found = set(cyclic)
        queue = list(cyclic)
        while queue:
            H = queue.pop()
            for C in cyclic:
                if C <= H:
                    continue
                J = self.closure(C, base=H)
                if J not in found:
                    found.add(J)
                    queue.append(J)
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    @cached_property
    def _all_subgroup_sets(self) -> tuple[frozenset, ...]:
        return self._enumerate()

    def all_subgroups(self) -> list[FiniteSubgroup]:
        return [FiniteSubgroup(self, s) for s in self._all_subgroup_sets]

    @cached_property
    def _normal_subgroup_sets(self) -> tuple[frozenset, ...]:
        return tuple(s for s in self._all_subgroup_sets if self.is_normal_set(s))

    def all_normal_subgroups(self) -> list[FiniteSubgroup]:
        return [FiniteSubgroup(self, s) for s in self._normal_subgroup_sets]

    @cached_property
    def lattice_height(self) -> int:
        """Upper bound on the length of any strict chain of subgroups."""
        return sum(e for _, e in Factored.of(self.order).exponents.items())

    @cached_property
    def _chain_sets(self) -> tuple[frozenset, ...]:
        whole = frozenset(range(self.order))
        trivial = frozenset([self.identity])
        if self.order > ENUMERATION_CAP:
            return (trivial, whole) if trivial != whole else (whole,)
        normals = self._normal_subgroup_sets
        chain = [trivial]
        while chain[-1] != whole:
            bigger = [N for N in normals if chain[-1] < N]
            chain.append(min(bigger, key=len))
        return tuple(chain)

    def chain(self, k: int) -> FiniteSubgroup:
        if k < 1:
            raise ValueError("chain members are indexed from 1")
        sets = self._chain_sets
        return FiniteSubgroup(self, sets[min(k, len(sets)) - 1])

    @property
    def chain_length(self) -> int:
        return len(self._chain_sets)

    def identity_endo(self) -> FiniteEndo:
        return FiniteEndo(self, tuple(range(self.order)))

    def endo(self, images) -> FiniteEndo:
        return FiniteEndo(self, tuple(int(x) for x in images))

    def power_map(self, m: int) -> FiniteEndo:
        """x -> x^m, an endomorphism when the group is abelian."""
        images = []
        for a in range(self.order):
            x = self.identity
            for _ in range(m % self.exponent):
                x = self.table[x][a]
            images.append(x)
        return FiniteEndo(self, tuple(images))

    def conjugation(self, g: int) -> FiniteEndo:
        """The inner automorphism x -> g x g^-1."""
        inv_g = int(self.inv[g])
        return FiniteEndo(self, tuple(self.table[self.table[g][x]][inv_g] for x in range(self.order)))

    # -- model-api ---------------------------------------------------------

    def _product(self, A, B):
        a = np.fromiter(A.elements, dtype=np.int64)
        b = np.fromiter(B.elements, dtype=np.int64)
        return FiniteSubgroup(self, frozenset(int(x) for x in np.unique(self.arr[np.ix_(a, b)])))

    def _intersect(self, A, B):
        return FiniteSubgroup(self, A.elements & B.elements)

    def _preimage(self, phi, A):
        mask = np.zeros(self.order, dtype=bool)
        mask[list(A.elements)] = True
        return FiniteSubgroup(self, frozenset(int(x) for x in np.flatnonzero(mask[phi.arr])))

    def _image(self, phi, A):
        return FiniteSubgroup(self, frozenset(phi.images[a] for a in A.elements))

    def _index(self, A, B):
        return Factored.of(Fraction(len(A.elements), len(B.elements)))

    def _contains(self, A, B) -> bool:
        return B.elements <= A.elements

    def _is_subgroup(self, A) -> bool:
        return self.is_subgroup(A.elements)

    def compose(self, f, g):
        return FiniteEndo(self, tuple(f.images[x] for x in g.images), validate=False)

    def inverse(self, f):
        if not f.is_automorphism:
            raise NotAutomorphism(f"{f!r} is not bijective")
        inv = [0] * self.order
        for x, y in enumerate(f.images):
            inv[y] = x
        return FiniteEndo(self, tuple(inv), validate=False)

    def family_cutoff(self, phi):
        c = self.chain_length
        return c, f"finite chain of {c} normal subgroups ending at the whole group"

    def stabilization_bound(self, phi, U) -> int:
        # T_n can grow strictly at most lattice_height times
        return self.lattice_height + 1

    def htop_steps(self, phi) -> int:
        return self.order.bit_length() + 1

    def restriction_and_quotient(self, phi, H):
        return restrict_endo(phi, H), induced_endo(phi, H)


@dataclass(frozen=True)
class FiniteSubgroup:
    model: FiniteGroup = field(repr=False)
    elements: frozenset

    compact = True
    open = True

    @cached_property
    def normal(self) -> bool:
        return self.model.is_normal_set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"FiniteSubgroup({self.model.name}, {sorted(self.elements)})"


@dataclass(frozen=True)
class FiniteEndo:
    model: FiniteGroup = field(repr=False)
    images: tuple
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        G = self.model
        if len(self.images) != G.order or not all(0 <= y < G.order for y in self.images):
            raise NotAHomomorphism("image table has the wrong shape")
        if self.validate:
            f = self.arr
            lhs = f[G.arr]
            rhs = G.arr[np.ix_(f, f)]
            if not np.array_equal(lhs, rhs):
                a, b = map(int, np.argwhere(lhs != rhs)[0])
                raise NotAHomomorphism(f"f({a}*{b}) != f({a})*f({b})")

    @cached_property
    def arr(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    @property
    def is_automorphism(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def kernel(self) -> FiniteSubgroup:
        e = self.model.identity
        return FiniteSubgroup(self.model, frozenset(x for x, y in enumerate(self.images) if y == e))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __repr__(self):
        return f"FiniteEndo({self.model.name}, {list(self.images)})"


# -- constructors -----------------------------------------------------------


def from_multiplication(elements, mul, name: str = "") -> FiniteGroup:
    """Tabulate a group given as a list of hashable elements and a product."""
    elements = list(elements)
    pos = {x: i for i, x in enumerate(elements)}
    table = [[pos[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, name=name, labels=elements)


def construct_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise NotAGroup("cyclic order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}",
                       labels=range(n))


def construct_product(orders) -> FiniteGroup:
    """Z_{d1} x ... x Z_{dk}; elements are tuples in lexicographic order."""
    orders = tuple(int(d) for d in orders)
    if any(d < 1 for d in orders):
        raise NotAGroup("orders must be positive")
    elements = list(itertools.product(*(range(d) for d in orders)))
    name = "x".join(f"Z{d}" for d in orders) or "Z1"
    return from_multiplication(
        elements, lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, orders)), name
    )


def construct_from_table(table, name: str = "") -> FiniteGroup:
    return FiniteGroup(table, name=name)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    elements = [(a, b) for a in range(G.order) for b in range(H.order)]
    return from_multiplication(
        elements, lambda x, y: (G.table[x[0]][y[0]], H.table[x[1]][y[1]]), f"{G.name}x{H.name}"
    )


def from_permutations(gens, name: str = "") -> FiniteGroup:
    """The permutation group generated by ``gens`` (tuples on 0..m-1)."""
    gens = [tuple(g) for g in gens]
    m = len(gens[0])
    ident = tuple(range(m))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(m))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elements = sorted(seen)
    return from_multiplication(elements, lambda p, q: tuple(p[q[i]] for i in range(m)), name)


def construct_symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    return from_multiplication(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), f"S{n}")


def construct_alternating(n: int) -> FiniteGroup:
    def even(p):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inversions % 2 == 0

    perms = [p for p in itertools.permutations(range(n)) if even(p)]
    return from_multiplication(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), f"A{n}")


def construct_dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations([rot, ref], name=f"D{n}")


def construct_dicyclic(n: int) -> FiniteGroup:
    """Dic_n of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>."""
    m = 2 * n

    def mul(u, v):
        (k, e), (l, f) = u, v
        if e == 0:
            return ((k + l) % m, f)
        if f == 0:
            return ((k - l) % m, 1)
        return ((k - l + n) % m, 0)

    elements = [(k, e) for e in (0, 1) for k in range(m)]
    return from_multiplication(elements, mul, "Q8" if n == 2 else f"Dic{n}")


def parse_table_text(text: str, name: str = "") -> FiniteGroup:
    """Plain text format: first line n, then n lines of n indices."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise NotAGroup("empty table file")
    try:
        n = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise NotAGroup(f"non-integer entry: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise NotAGroup(f"expected {n} rows of {n} entries")
    return FiniteGroup(rows, name=name)


def format_table_text(G: FiniteGroup) -> str:
    lines = [str(G.order)] + [" ".join(map(str, row)) for row in G.table]
    return "\n".join(lines) + "\n"


# -- quotients and induced maps ---------------------------------------------


def quotient(G: FiniteGroup, N: FiniteSubgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """G/N as a tabulated group plus the projection as an index map."""
    if not N.normal:
        raise NotNormal(f"{N!r} is not normal")
    idx = np.fromiter(N.elements, dtype=np.int64)
    reps = G.arr[:, idx].min(axis=1)
    cosets = sorted(set(int(r) for r in reps))
    pos = {r: i for i, r in enumerate(cosets)}
    proj = tuple(pos[int(r)] for r in reps)
    table = [[proj[G.table[a][b]] for b in cosets] for a in cosets]
    return FiniteGroup(table, name=f"{G.name}/{len(N.elements)}", validate=False), proj


def subgroup_as_group(G: FiniteGroup, H: FiniteSubgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """H as a group in its own right plus the embedding into G."""
    embed = tuple(sorted(H.elements))
    pos = {x: i for i, x in enumerate(embed)}
    table = [[pos[G.table[a][b]] for b in embed] for a in embed]
    return FiniteGroup(table, name=f"{G.name}<{len(embed)}>", validate=False), embed


def induced_endo(phi: FiniteEndo, N: FiniteSubgroup) -> FiniteEndo:
    G = phi.model
    if not {phi.images[x] for x in N.elements} <= N.elements:
        raise NotInvariant("phi(N) is not contained in N")
    Q, proj = quotient(G, N)
    reps = {}
    for g, c in enumerate(proj):
        reps.setdefault(c, g)
    return FiniteEndo(Q, tuple(proj[phi.images[reps[c]]] for c in range(Q.order)))


def restrict_endo(phi: FiniteEndo, H: FiniteSubgroup) -> FiniteEndo:
    G = phi.model
    if not {phi.images[x] for x in H.elements} <= H.elements:
        raise NotInvariant("phi(H) is not contained in H")
    K, embed = subgroup_as_group(G, H)
    pos = {x: i for i, x in enumerate(embed)}
    return FiniteEndo(K, tuple(pos[phi.images[x]] for x in embed))


# -- endomorphism enumeration -------------------------------------------------


def generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """A small generating set, greedily preferring high-order elements."""
    by_order = sorted(range(G.order), key=lambda a: -G.element_order(a))
    gens: list[int] = []
    current = frozenset([G.identity])
    for a in by_order:
        if a not in current:
            gens.append(a)
            current = G.closure(gens)
            if len(current) == G.order:
                break
    return tuple(gens)


def extend_homomorphism(G: FiniteGroup, gens, gen_images, target: FiniteGroup | None = None):
    """Extend generator images to a homomorphism G -> target; None if impossible."""
    T = target or G
    f = [-1] * G.order
    f[G.identity] = T.identity
    queue = [G.identity]
    for x in queue:
        for g, y in zip(gens, gen_images):
            xg = G.table[x][g]
            val = T.table[f[x]][y]
            if f[xg] < 0:
                f[xg] = val
                queue.append(xg)
            elif f[xg] != val:
                return None
    return tuple(f)


def all_endomorphisms(G: FiniteGroup, limit: int | None = None) -> list[FiniteEndo]:
    """Every endomorphism (or the first ``limit``), via generator images."""
    gens = generating_set(G)
    candidates = [
        [y for y in range(G.order) if G.element_order(g) % G.element_order(y) == 0] for g in gens
    ]
    out = []
    for choice in itertools.product(*candidates):
        images = extend_homomorphism(G, gens, choice)
        if images is not None:
            out.append(FiniteEndo(G, images, validate=False))
            if limit is not None and len(out) >= limit:
                break
    return out


def random_endomorphism(G: FiniteGroup, rng, tries: int = 200) -> FiniteEndo:
    """A random endomorphism; falls back to the identity after ``tries``."""
    gens = generating_set(G)
    orders = [G.element_order(g) for g in gens]
    pool = {o: [y for y in range(G.order) if o % G.element_order(y) == 0] for o in set(orders)}
    for _ in range(tries):
        choice = [pool[o][rng.integers(len(pool[o]))] for o in orders]
        images = extend_homomorphism(G, gens, choice)
        if images is not None:
            return FiniteEndo(G, images, validate=False)
    return G.identity_endo()


def abelian_invariant_lists(order_max: int):
    """Invariant-factor lists d1 | d2 | ... of every abelian group of order <= order_max."""
    out = [()]
    for n in range(2, order_max + 1):
        exps = Factored.of(n).exponents
        per_prime = []
        for p, e in exps.items():
            per_prime.append([[p**k for k in part] for part in _partitions(e)])
        for combo in itertools.product(*per_prime):
            width = max(len(c) for c in combo)
            factors = []
            for i in range(width):
                d = 1
                for c in combo:
                    # largest powers go to the last invariant factor
                    cc = sorted(c)
                    j = i - (width - len(cc))
                    if j >= 0:
                        d *= cc[j]
                factors.append(d)
            out.append(tuple(factors))
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def small_groups(order_max: int = 24) -> list[FiniteGroup]:
    """A catalogue of abelian and non-abelian groups up to ``order_max``."""
    groups = [construct_product(d) if d else construct_cyclic(1) for d in abelian_invariant_lists(order_max)]
    for n in range(3, order_max // 2 + 1):
        groups.append(construct_dihedral(n))
    for n in range(2, order_max // 4 + 1):
        groups.append(construct_dicyclic(n))
    if order_max >= 12:
        groups.append(construct_alternating(4))
    if order_max >= 24:
        groups.append(construct_symmetric(4))
        groups.append(direct_product(construct_cyclic(2), construct_alternating(4)))
    if order_max >= 16:
        groups.append(direct_product(construct_cyclic(2), construct_dihedral(4)))
        groups.append(direct_product(construct_cyclic(2), construct_dicyclic(2)))
    if order_max >= 18:
        groups.append(direct_product(construct_cyclic(3), construct_symmetric(3)))
    return [G for G in groups if G.order <= order_max]
