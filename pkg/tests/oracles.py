"""Brute-force references that share no code paths with the library's
subgroup arithmetic: everything is done on raw element sets."""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- finite groups --------------------------------------------------------------


def naive_closure(table, gens, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = table[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroups_by_subsets(G):
    """Every subset closed under the product (finite, so a subgroup)."""
    n = G.order
    e = G.identity
    others = [x for x in range(n) if x != e]
    out = set()
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            S = set(combo) | {e}
            if all(G.table[a][b] in S for a in S for b in S):
                out.add(frozenset(S))
    return out


def naive_is_normal(G, S):
    inv = [next(y for y in range(G.order) if G.table[x][y] == G.identity) for x in range(G.order)]
    return all(G.table[G.table[g][h]][inv[g]] in S for g in range(G.order) for h in S)


def set_product(G, A, B):
    return frozenset(G.table[a][b] for a in A for b in B)


def set_preimage(images, S):
    return frozenset(x for x, y in enumerate(images) if y in S)


def set_image(images, S):
    return frozenset(images[x] for x in S)


def compose_maps(f, g):
    """f o g on image tuples."""
    return tuple(f[x] for x in g)


def map_power(f, n):
    out = tuple(range(len(f)))
    for _ in range(n):
        out = compose_maps(f, out)
    return out


def set_trajectory(G, images, U, n):
    T = frozenset(U)
    for k in range(1, n):
        T = set_product(G, T, set_image(map_power(images, k), U))
    return T


def set_u_minus_chain(G, images, U, steps):
    """U^(0), ..., U^(steps)."""
    chain = [frozenset(U)]
    for _ in range(steps):
        chain.append(set_product(G, U, set_preimage(images, chain[-1])))
    return chain


def set_u_minus(G, images, U):
    X = frozenset(U)
    while True:
        Y = set_product(G, U, set_preimage(images, X))
        if Y == X:
            return X
        X = Y


def brute_halg_zero_witness(G, images, U):
    """[T_{n+1}:T_n] for n until the trajectory stops growing."""
    betas = []
    n = 1
    T = set_trajectory(G, images, U, 1)
    while True:
        T2 = set_trajectory(G, images, U, n + 1)
        betas.append(Fraction(len(T2), len(T)))
        if T2 == T:
            return betas
        T, n = T2, n + 1


# -- shift groups on a finite window ----------------------------------------------


def rect_members(A, lo, hi):
    """Elements of A supported in [lo, hi] (identity elsewhere), as tuples."""
    return set(itertools.product(*(sorted(A.at(n)) for n in range(lo, hi + 1))))


def window_coordinates(A, lo, hi):
    """Per-coordinate sets of A on [lo, hi] read off from its members."""
    members = rect_members(A, lo, hi)
    return [frozenset(x[i] for x in members) for i in range(hi - lo + 1)]


def oracle_preimage(phi, A, lo, hi):
    """{x supported in [lo,hi] : phi(x) in A}; coordinates of phi(x) off the
    support are the identity, which every A_n contains."""
    F = phi.model.F
    th = phi.theta.images
    s = phi.s
    out = set()
    for x in itertools.product(range(F.order), repeat=hi - lo + 1):
        ok = True
        for i, v in enumerate(x):
            n = lo + i - s
            if th[v] not in A.at(n):
                ok = False
                break
        if ok:
            out.add(x)
    return out


def oracle_image(phi, A, lo, hi):
    """phi(A) restricted to [lo, hi]: coordinates theta(x_{n+s}) for x in A."""
    th = phi.theta.images
    s = phi.s
    source = [sorted(A.at(n + s)) for n in range(lo, hi + 1)]
    return {tuple(th[v] for v in x) for x in itertools.product(*source)}


def oracle_product(A, B, lo, hi):
    table = A.model.F.table
    a_members = rect_members(A, lo, hi)
    b_members = rect_members(B, lo, hi)
    return {tuple(table[u][v] for u, v in zip(a, b)) for a in a_members for b in b_members}


def oracle_index(A, B, lo, hi):
    return Fraction(len(rect_members(A, lo, hi)), len(rect_members(B, lo, hi)))


# -- p-adic levels ----------------------------------------------------------------


def valuation(x: Fraction, p: int) -> int:
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def level_index_by_counting(p, a, b):
    """[p^a Z_p : p^b Z_p] by counting residues of p^a Z mod p^b Z."""
    shift = -min(a, 0)
    a, b = a + shift, b + shift
    return sum(1 for x in range(p**b) if x == 0 or valuation(x, p) >= a)


def level_preimage_by_search(p, v, k):
    """Least j with v_p(p^v * p^j) >= k, checked on p^j times units."""
    for j in range(k - v - 10, k - v + 10):
        samples = [Fraction(p) ** j * u for u in (1, 2 if p != 2 else 3, p + 1)]
        if all(valuation(Fraction(p) ** v * x, p) >= k for x in samples):
            below = Fraction(p) ** (j - 1)
            assert valuation(Fraction(p) ** v * below, p) < k
            return j
    raise AssertionError("no level found")


# -- finite abelian duality --------------------------------------------------------


def annihilator_by_pairing(G, H):
    return frozenset(y for y in G.elements if all(G.pairing(h, y) == 0 for h in H.elements))


def homomorphism_count_vanishing_on(G, H):
    """Number of homomorphisms G -> Q/Z killing H, via generator images in Z/L."""
    L = G.exponent
    k = G.rank
    count = 0
    for imgs in itertools.product(range(L), repeat=k):
        # e_i has order d_i, so its image must be killed by d_i
        if any((d * c) % L for d, c in zip(G.factors, imgs)):
            continue
        if all(sum(h_i * c for h_i, c in zip(h, imgs)) % L == 0 for h in H.elements):
            count += 1
    return count
