"""Two-sided shift groups over a finite coefficient group F.

With left orientation the group is ``prod_{n<=0} F (+) sum_{n>=1} F``: arbitrary
coordinates on the compact left tail, finitely supported on the discrete
right tail. Right orientation mirrors this and is what duals of
left-oriented models look like.

Subgroups are rectangular patterns ``{x : x_n in N_n}``: a finite window of
normal subgroups of F between two constant tails. Endomorphisms are uniform
shifts ``(phi x)_n = theta(x_{n+s})`` for an endomorphism ``theta`` of F.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import INFINITE, Factored
from .exceptions import (
    NotAutomorphism,
    NotConstantPattern,
    NotNormal,
    NotRepresentable,
    NotStable,
    TooLarge,
)
from .finite import (
    ENUMERATION_CAP,
    FiniteEndo,
    FiniteGroup,
    FiniteSubgroup,
    from_multiplication,
    induced_endo,
    quotient,
    restrict_endo,
    subgroup_as_group,
)
from .model import GroupModel

ORIENTATIONS = ("left", "right")


class ShiftGroup(GroupModel):
    kind = "shift"

    def __init__(self, F: FiniteGroup, orientation: str = "left"):
        if orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")
        self.F = F
        self.orientation = orientation
        self.full = frozenset(range(F.order))
        self.triv = frozenset([F.identity])
        self._normals = frozenset(F._normal_subgroup_sets)
        self._prod_cache: dict = {}
        self._pre_cache: dict = {}
        self._img_cache: dict = {}

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, ShiftGroup) and self.orientation == other.orientation
                and self.F == other.F)

    def __hash__(self):
        return hash((self.F, self.orientation))

    def __repr__(self):
        return f"ShiftGroup({self.F.name}, {self.orientation})"

    @property
    def is_compact(self) -> bool:
        return self.F.order == 1

    @property
    def is_discrete(self) -> bool:
        return self.F.order == 1

    @property
    def is_abelian(self) -> bool:
        return self.F.is_abelian

    # -- handle construction ---------------------------------------------

    def pattern(self, left, start: int, values, right) -> RectangularSubgroup:
        """Canonical pattern: window trimmed so its ends differ from the tails."""
        left, right = frozenset(left), frozenset(right)
        values = [frozenset(v) for v in values]
        for N in [left, right, *values]:
            if N not in self._normals:
                raise NotNormal(f"{sorted(N)} is not a normal subgroup of {self.F.name}")
        start = int(start)
        while values and values[0] == left:
            values.pop(0)
            start += 1
        while values and values[-1] == right:
            values.pop()
        if not values and left == right:
            start = 0
        return RectangularSubgroup(self, left, start, tuple(values), right)

    @property
    def compact_default(self):
        return self.full

    def window(self, start: int, values, left=None, right=None) -> RectangularSubgroup:
        """A pattern with compact-open tails unless the tails are given."""
        if left is None:
            left = self.full if self.orientation == "left" else self.triv
        if right is None:
            right = self.triv if self.orientation == "left" else self.full
        return self.pattern(left, start, values, right)

    def U(self, k: int) -> RectangularSubgroup:
        """U_k: full on the compact side up to coordinate k (left orientation)
        or from coordinate 1-k (right orientation), trivial elsewhere."""
        if self.orientation == "left":
            return self.pattern(self.full, k + 1, (), self.triv)
        return self.pattern(self.triv, 1 - k, (), self.full)

    def chain(self, k: int) -> RectangularSubgroup:
        if k < 1:
            raise ValueError("chain members are indexed from 1")
        return self.U(k)

    def constant(self, N) -> RectangularSubgroup:
        N = N.elements if isinstance(N, FiniteSubgroup) else N
        return self.pattern(N, 0, (), N)

    def whole(self):
        return self.constant(self.full)

    def trivial(self):
        return self.constant(self.triv)

    def shift_endo(self, s: int, theta: FiniteEndo | None = None) -> ShiftEndo:
        return ShiftEndo(self, int(s), theta if theta is not None else self.F.identity_endo())

    def right_shift(self) -> ShiftEndo:
        """x_n -> x_{n-1}."""
        return self.shift_endo(-1)

    def left_shift(self) -> ShiftEndo:
        """x_n -> x_{n+1}."""
        return self.shift_endo(1)

    def identity_endo(self):
        return self.shift_endo(0)

    # -- coefficient-level helpers -----------------------------------------

    def _fprod(self, N, M):
        key = (N, M)
        if key not in self._prod_cache:
            arr = self.F.arr
            n = np.fromiter(N, dtype=np.int64)
            m = np.fromiter(M, dtype=np.int64)
            self._prod_cache[key] = frozenset(int(x) for x in np.unique(arr[np.ix_(n, m)]))
        return self._prod_cache[key]

    def _theta_pre(self, theta: FiniteEndo, N):
        key = (theta.images, N)
        if key not in self._pre_cache:
            mask = np.zeros(self.F.order, dtype=bool)
            mask[list(N)] = True
            self._pre_cache[key] = frozenset(int(x) for x in np.flatnonzero(mask[theta.arr]))
        return self._pre_cache[key]

    def _theta_img(self, theta: FiniteEndo, N):
        key = (theta.images, N)
        if key not in self._img_cache:
            img = frozenset(theta.images[x] for x in N)
            if img not in self._normals:
                raise NotRepresentable(
                    f"theta maps a normal subgroup onto the non-normal {sorted(img)}")
            self._img_cache[key] = img
        return self._img_cache[key]

    # -- model-api ---------------------------------------------------------

    def _zip(self, A, B, op):
        lo = min(A.start, B.start)
        hi = max(A.end, B.end)
        values = [op(A.at(n), B.at(n)) for n in range(lo, hi)]
        return self.pattern(op(A.left, B.left), lo, values, op(A.right, B.right))

    def _product(self, A, B):
        return self._zip(A, B, self._fprod)

    def _intersect(self, A, B):
        return self._zip(A, B, frozenset.__and__)

    def _preimage(self, phi, A):
        # x_m must lie in theta^-1(A_{m-s})
        pre = lambda N: self._theta_pre(phi.theta, N)  # noqa: E731
        return self.pattern(pre(A.left), A.start + phi.s, [pre(v) for v in A.values],
                            pre(A.right))

    def _image(self, phi, A):
        # (phi x)_n = theta(x_{n+s}) ranges over theta(A_{n+s})
        img = lambda N: self._theta_img(phi.theta, N)  # noqa: E731
        return self.pattern(img(A.left), A.start - phi.s, [img(v) for v in A.values],
                            img(A.right))

    def _index(self, A, B):
        if A.left != B.left or A.right != B.right:
            return INFINITE
        q = Fraction(1)
        for n in range(min(A.start, B.start), max(A.end, B.end)):
            q *= Fraction(len(A.at(n)), len(B.at(n)))
        return Factored.of(q)

    def _contains(self, A, B) -> bool:
        if not (B.left <= A.left and B.right <= A.right):
            return False
        return all(B.at(n) <= A.at(n)
                   for n in range(min(A.start, B.start), max(A.end, B.end)))

    def compose(self, f, g):
        return ShiftEndo(self, f.s + g.s, self.F.compose(f.theta, g.theta))

    def inverse(self, f):
        if not f.theta.is_automorphism:
            raise NotAutomorphism("theta is not an automorphism of F")
        return ShiftEndo(self, -f.s, self.F.inverse(f.theta))

    def family_cutoff(self, phi):
        return 1, ("H_alg(phi, U_k) does not depend on k: translation by one coordinate "
                   "commutes with phi and maps U_k onto U_{k+1}")

    def stabilization_bound(self, phi, U) -> int:
        """n0 = width(U) + |s| + 2, plus the subgroup-lattice height of F when
        theta is non-trivial and either s = 0 or theta is not bijective."""
        n0 = len(U.values) + abs(phi.s) + 2
        is_identity = phi.theta.images == tuple(range(self.F.order))
        if not is_identity and (phi.s == 0 or not phi.theta.is_automorphism):
            n0 += self.F.lattice_height
        return n0

    def u_minus_closed_form(self, phi, U):
        pre = lambda N: self._theta_pre(phi.theta, N)  # noqa: E731
        prod = self._fprod

        def lfp(base):
            X = base
            while True:
                Y = prod(base, pre(X))
                if Y == X:
                    return X
                X = Y

        s = phi.s
        if s == 0:
            return self.pattern(lfp(U.left), U.start, [lfp(v) for v in U.values], lfp(U.right))

        step = abs(s)
        if s > 0:
            source, dest = U.left, U.right
            coord = lambda k: U.start + k  # noqa: E731
        else:
            source, dest = U.right, U.left
            coord = lambda k: U.end - 1 - k  # noqa: E731
        D = lfp(source)
        xs: list = []

        def get(k):
            return D if k < 0 else xs[k]

        width = len(U.values)
        seen: dict = {}
        k = 0
        while True:
            xs.append(prod(U.at(coord(k)), pre(get(k - step))))
            if k >= width - 1:
                state = tuple(get(j) for j in range(k - step + 1, k + 1))
                if state in seen:
                    k1 = seen[state]
                    cycle = [get(j) for j in range(k1 - step + 1, k + 1)]
                    if any(c != cycle[0] for c in cycle):
                        raise NotRepresentable("inverse-invariant hull has a periodic tail")
                    E = cycle[0]
                    explicit = [get(j) for j in range(0, k1 - step + 1)]
                    break
                seen[state] = k
            k += 1
        if s > 0:
            return self.pattern(D, U.start, explicit, E)
        explicit.reverse()
        return self.pattern(E, U.end - len(explicit), explicit, D)

    def restriction_and_quotient(self, phi, H):
        if H.values or H.left != H.right:
            raise NotConstantPattern("H must carry the same subgroup on every coordinate")
        N = self.F.subgroup(H.left)
        if not {phi.theta.images[x] for x in N.elements} <= N.elements:
            raise NotStable("theta(N) is not contained in N")
        theta_N = restrict_endo(phi.theta, N)
        theta_bar = induced_endo(phi.theta, N)
        G_N = ShiftGroup(theta_N.model, self.orientation)
        G_Q = ShiftGroup(theta_bar.model, self.orientation)
        return G_N.shift_endo(phi.s, theta_N), G_Q.shift_endo(phi.s, theta_bar)


@dataclass(frozen=True)
class RectangularSubgroup:
    """``{x : x_n in left for n < start, values[n-start] inside the window,
    right beyond it}``."""

    model: ShiftGroup = field(repr=False)
    left: frozenset
    start: int
    values: tuple
    right: frozenset

    normal = True

    @property
    def end(self) -> int:
        return self.start + len(self.values)

    def at(self, n: int) -> frozenset:
        if n < self.start:
            return self.left
        if n < self.end:
            return self.values[n - self.start]
        return self.right

    @property
    def compact(self) -> bool:
        G = self.model
        discrete_tail = self.right if G.orientation == "left" else self.left
        return discrete_tail == G.triv

    @property
    def open(self) -> bool:
        G = self.model
        compact_tail = self.left if G.orientation == "left" else self.right
        return compact_tail == G.full

    def is_constant(self) -> bool:
        return not self.values and self.left == self.right

    def __repr__(self):
        def name(N):
            if N == self.model.full:
                return "F"
            if N == self.model.triv:
                return "e"
            return f"<{len(N)}>"

        inner = " ".join(name(v) for v in self.values)
        return f"[{name(self.left)} | {self.start}: {inner} | {name(self.right)}]"


@dataclass(frozen=True)
class ShiftEndo:
    """``(phi x)_n = theta(x_{n+s})``; s = -1 with theta = id is the right shift."""

    model: ShiftGroup = field(repr=False)
    s: int
    theta: FiniteEndo

    def __post_init__(self):
        if self.theta.model != self.model.F:
            raise ValueError("theta must be an endomorphism of the coefficient group")

    @property
    def is_automorphism(self) -> bool:
        return self.theta.is_automorphism

    @property
    def kernel(self) -> RectangularSubgroup:
        return self.model.constant(self.theta.kernel.elements)

    def __repr__(self):
        return f"ShiftEndo(s={self.s}, theta={list(self.theta.images)})"


def truncate(G: ShiftGroup, a: int, b: int, cap: int = ENUMERATION_CAP):
    """The finite group F^{b-a+1} of coordinates a..b, and a map sending a
    rectangular handle to its set of truncated elements."""
    F = G.F
    width = b - a + 1
    if width < 1:
        raise ValueError("empty window")
    if F.order**width > cap:
        raise TooLarge(f"|F|^{width} = {F.order ** width} exceeds the cap {cap}")
    elements = list(itertools.product(range(F.order), repeat=width))
    Fw = from_multiplication(
        elements, lambda x, y: tuple(F.table[u][v] for u, v in zip(x, y)), f"{F.name}^{width}")

    def project(A: RectangularSubgroup) -> FiniteSubgroup:
        allowed = [A.at(n) for n in range(a, b + 1)]
        members = [i for i, x in enumerate(elements) if all(c in N for c, N in zip(x, allowed))]
        return FiniteSubgroup(Fw, frozenset(members))

    return Fw, project
