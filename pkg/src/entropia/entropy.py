"""Entropy engine written once against the model contract.

Every quantity is an exact index; nothing here depends on which model the
handles come from.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import INFINITE, Entropy, Factored, sup
from .exceptions import (
    HypothesisFailed,
    InconsistentResult,
    IterationBudgetExceeded,
    NotAbelian,
    NotAutomorphism,
    NotRepresentable,
    PreconditionFailed,
)
from .model import compose, contains, equals, image, index, intersect, inverse, power, preimage, product

# after this many non-stabilizing U^(n) steps the model's closed form is consulted
CLOSED_FORM_AFTER = 4
# extra chain members evaluated when a model certifies cutoff on an infinite chain
CUTOFF_WITNESSES = 2


@dataclass(frozen=True)
class Options:
    budget: int = 64
    window: int = 3
    cutoff: int | None = None


DEFAULTS = Options()


# -- trajectories ---------------------------------------------------------------


def trajectory(phi, U, n: int):
    """T_n = U phi(U) ... phi^{n-1}(U)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    T = img = U
    for _ in range(n - 1):
        img = image(phi, img)
        T = product(T, img)
    return T


@dataclass(frozen=True)
class TrajectoryReport:
    """t[i] = [T_{i+1}:U] and beta[i] = [T_{i+2}:T_{i+1}]."""

    n_max: int
    t: tuple
    beta: tuple
    certified: bool
    certificate: str

    def __post_init__(self):
        if len(self.t) != len(self.beta) + 1 or not self.t or not self.t[0].is_one():
            raise InconsistentResult("trajectory report has inconsistent lengths")
        for i, b in enumerate(self.beta):
            if not b.is_integer():
                raise InconsistentResult(f"beta_{i + 1} = {b} is not a positive integer")
            if i and b > self.beta[i - 1]:
                raise InconsistentResult(f"beta increases at n = {i + 1}")
            if self.t[i + 1] != self.t[i] * b:
                raise InconsistentResult(f"t_{i + 2} != t_{i + 1} * beta_{i + 1}")

    @property
    def limit(self) -> Factored:
        return self.beta[-1]


def trajectory_table(phi, U, n: int) -> TrajectoryReport:
    """t_1..t_n and beta_1..beta_{n-1} with no stopping rule."""
    T = img = U
    t = [Factored.one()]
    beta = []
    for _ in range(n - 1):
        img = image(phi, img)
        nxt = product(T, img)
        b = _finite_index(nxt, T)
        beta.append(b)
        t.append(t[-1] * b)
        T = nxt
    return TrajectoryReport(n, tuple(t), tuple(beta), False, "table only")


def _finite_index(A, B) -> Factored:
    q = index(A, B)
    if q is INFINITE:
        raise NotRepresentable("trajectory left the compact open subgroups")
    return q


def _check_compact_open_normal(U):
    if not (U.normal and U.compact and U.open):
        raise PreconditionFailed(f"{U!r} must be a compact open normal subgroup")


def halg_with_respect_to_limit(phi, U, opts: Options = DEFAULTS):
    """log beta where beta is the eventual value of [T_{n+1}:T_n]."""
    _check_compact_open_normal(U)
    n0 = phi.model.stabilization_bound(phi, U)
    T = img = U
    t = [Factored.one()]
    beta: list[Factored] = []
    for n in range(1, opts.budget + 1):
        img = image(phi, img)
        nxt = product(T, img)
        b = _finite_index(nxt, T)
        beta.append(b)
        t.append(t[-1] * b)
        T = nxt
        cert = None
        if b.is_one():
            cert = f"fixed point T_{n + 1} = T_{n}"
        elif n0 is not None and n >= n0:
            cert = f"model bound n0 = {n0}"
        if cert is not None:
            report = TrajectoryReport(n + 1, tuple(t), tuple(beta), True, cert)
            return Entropy.log(b), report
        w = opts.window
        if n0 is None and n >= w and all(x == b for x in beta[-w:]):
            report = TrajectoryReport(n + 1, tuple(t), tuple(beta), False,
                                      f"heuristic: beta constant for {w} steps")
            return Entropy.log(b), report
    raise IterationBudgetExceeded(f"beta_n did not stabilize within {opts.budget} steps")


# -- the limit-free route ---------------------------------------------------------


class _ClosedForm:
    def __repr__(self):
        return "ClosedForm"


CLOSED_FORM = _ClosedForm()


@dataclass(frozen=True)
class UMinusResult:
    u_minus: object
    steps: object  # iteration count, or CLOSED_FORM

    @property
    def closed_form(self) -> bool:
        return self.steps is CLOSED_FORM


def u_minus(phi, U, opts: Options = DEFAULTS) -> UMinusResult:
    """Smallest subgroup containing U with phi^{-1} of it inside it."""
    model = phi.model
    X = U
    closed = None
    for n in range(1, opts.budget + 1):
        Y = product(U, preimage(phi, X))
        if equals(Y, X):
            result = UMinusResult(X, n - 1)
            break
        X = Y
        if n >= CLOSED_FORM_AFTER and closed is None:
            try:
                closed = model.u_minus_closed_form(phi, U)
            except NotRepresentable:
                closed = False
            if closed:
                if not (contains(closed, X) and equals(product(U, preimage(phi, closed)), closed)):
                    raise InconsistentResult("closed-form U^- is not a fixed point above U^(n)")
                result = UMinusResult(closed, CLOSED_FORM)
                break
    else:
        raise IterationBudgetExceeded(f"U^(n) did not stabilize within {opts.budget} steps")
    if not contains(result.u_minus, preimage(phi, result.u_minus)):
        raise InconsistentResult("U^- is not inversely invariant")
    return result


def halg_with_respect_to_limitfree(phi, U, opts: Options = DEFAULTS) -> Entropy:
    """log [U : U cap phi^{-1} U^-], cross-checked against [U^- : phi^{-1} U^-]."""
    _check_compact_open_normal(U)
    C = u_minus(phi, U, opts).u_minus
    back = preimage(phi, C)
    q = index(U, intersect(U, back))
    direct = index(C, back)
    if direct is not INFINITE and direct != q:
        raise InconsistentResult(f"[U^-:phi^-1 U^-] = {direct} but [U:U cap phi^-1 U^-] = {q}")
    return Entropy.log(q)


# -- suprema over the chain -------------------------------------------------------


@dataclass(frozen=True)
class HalgDetail:
    value: Entropy
    members: tuple  # (k, H_alg(phi, U_k))
    cutoff: int
    justification: str


def _chain_range(model, phi, opts: Options):
    c, why = model.family_cutoff(phi)
    if opts.cutoff is not None:
        c, why = opts.cutoff, "cutoff given by the caller"
    extra = CUTOFF_WITNESSES if model.chain_length is None else 0
    return c, why, range(1, c + extra + 1)


def _certified_sup(values, c, what):
    tail = [v for k, v in values if k >= c]
    if tail and any(v != tail[0] for v in tail):
        raise InconsistentResult(f"{what} still changes past the certified cutoff {c}")
    return sup(v for _, v in values)


def halg_detail(phi, opts: Options = DEFAULTS) -> HalgDetail:
    model = phi.model
    c, why, ks = _chain_range(model, phi, opts)
    values = []
    for k in ks:
        v = halg_with_respect_to_limitfree(phi, model.chain(k), opts)
        values.append((k, v))
        if v.is_infinite:
            break
    return HalgDetail(_certified_sup(values, c, "H_alg(phi, U_k)"), tuple(values), c, why)


def halg(phi, opts: Options = DEFAULTS) -> Entropy:
    return halg_detail(phi, opts).value


def halg_via_inverse_invariant(phi, A) -> Entropy:
    """log [A : phi^{-1}A] for an open normal A with phi^{-1}A <= A."""
    if not (A.open and A.normal):
        raise PreconditionFailed("A must be open and normal")
    back = preimage(phi, A)
    if not contains(A, back):
        raise PreconditionFailed("phi^-1 A is not contained in A")
    q = index(A, back)
    if q is INFINITE:
        raise PreconditionFailed("[A : phi^-1 A] is infinite")
    return Entropy.log(q)


def modulus(phi, U=None) -> Factored:
    """[U phi(U) : U] / [U phi(U) : phi(U)], checked to be independent of U."""
    if not phi.is_automorphism:
        raise NotAutomorphism("the modulus is defined for automorphisms only")
    model = phi.model
    if U is not None:
        return _modulus_at(phi, U)
    n = model.chain_length or 3
    values = {_modulus_at(phi, model.chain(k)) for k in range(1, min(n, 3) + 1)}
    if len(values) != 1:
        raise InconsistentResult(f"modulus depends on the chain member: {values}")
    return values.pop()


def _modulus_at(phi, U):
    _check_compact_open_normal(U)
    img = image(phi, U)
    top = product(U, img)
    return index(top, U) / index(top, img)


def htop(phi, opts: Options = DEFAULTS) -> Entropy:
    """sup log [phi M : M] over compact M <= phi M among the trivial subgroup,
    chain members and their phi-power images."""
    model = phi.model
    c, _, ks = _chain_range(model, phi, opts)
    steps = model.htop_steps(phi)
    values = []
    for k in ks:
        best = _htop_candidate(phi, model.trivial())
        M = model.chain(k)
        for _ in range(steps + 1):
            v = _htop_candidate(phi, M)
            if v is not None and (best is None or v > best):
                best = v
            try:
                M = image(phi, M)
            except NotRepresentable:
                break
        values.append((k, best))
    return _certified_sup(values, c, "htop candidate value")


def _htop_candidate(phi, M):
    if not M.compact:
        return None
    img = image(phi, M)
    if not contains(img, M):
        return None
    q = index(img, M)
    if q is INFINITE:
        return None
    return Entropy.log(q)


# -- theorem checkers -------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    name: str
    holds: bool
    lhs: Entropy
    rhs: Entropy
    relation: str = "="
    hypotheses: dict = field(default_factory=dict)
    hypotheses_hold: bool | None = None
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.hypotheses_hold is False:
            return "HYPOTHESIS-FAILED"
        return "HOLDS" if self.holds else "VIOLATED"

    def to_json(self) -> dict:
        def enc(x):
            return x.to_json() if isinstance(x, (Entropy, Factored)) else x

        return {
            "check": self.name,
            "verdict": self.verdict,
            "holds": self.holds,
            "relation": self.relation,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "hypotheses": self.hypotheses,
            "hypotheses_hold": self.hypotheses_hold,
            "details": {k: enc(v) for k, v in self.details.items()},
        }


def check_logarithmic_law(phi, m: int, opts: Options = DEFAULTS) -> CheckReport:
    if m < 0:
        raise ValueError("m must be non-negative")
    h = halg(phi, opts)
    # phi^0 is the identity, whose entropy vanishes
    lhs = Entropy.zero() if m == 0 else halg(power(phi, m), opts)
    rhs = h * m
    return CheckReport("logarithmic-law", lhs == rhs, lhs, rhs, details={"m": m, "h(phi)": h})


def check_weak_addition(phi1, phi2, opts: Options = DEFAULTS) -> CheckReport:
    from .product import product_endo

    h1, h2 = halg(phi1, opts), halg(phi2, opts)
    lhs = halg(product_endo(phi1, phi2), opts)
    rhs = h1 + h2
    return CheckReport("weak-addition", lhs == rhs, lhs, rhs,
                       details={"h(phi1)": h1, "h(phi2)": h2})


def check_conjugation_invariance(phi, alpha, opts: Options = DEFAULTS, n_max: int = 4) -> CheckReport:
    if not alpha.is_automorphism:
        raise NotAutomorphism("alpha must be an automorphism")
    psi = compose(alpha, compose(phi, inverse(alpha)))
    lhs, rhs = halg(phi, opts), halg(psi, opts)
    model = phi.model
    c, _ = model.family_cutoff(phi)
    spot = True
    for k in range(1, min(c, 3) + 1):
        K = model.chain(k)
        aK = image(alpha, K)
        for n in range(1, n_max + 1):
            if not equals(trajectory(psi, aK, n), image(alpha, trajectory(phi, K, n))):
                spot = False
    return CheckReport("conjugation", lhs == rhs and spot, lhs, rhs,
                       details={"trajectory_identity": spot})


def check_inverse_modulus(phi, opts: Options = DEFAULTS) -> CheckReport:
    delta = modulus(phi)
    h = halg(phi, opts)
    lhs = halg(inverse(phi), opts)
    rhs = h - Entropy.log(delta)
    return CheckReport("inverse-modulus", lhs == rhs, lhs, rhs,
                       details={"h(phi)": h, "modulus": delta})


def addition_hypotheses(phi, H) -> dict:
    """Stability data for H; the two equivalent forms are cross-checked."""
    img = image(phi, H)
    hyp = {
        "normal": bool(H.normal),
        "invariant": contains(H, img),
        "stable": equals(img, H),
        "kernel_in_H": contains(H, phi.kernel),
        "preimage_is_H": equals(preimage(phi, H), H),
    }
    try:
        hyp["H_in_image"] = contains(image(phi, phi.model.whole()), H)
    except NotRepresentable:
        hyp["H_in_image"] = None
    if hyp["H_in_image"] is not None:
        a = hyp["stable"] and hyp["kernel_in_H"]
        b = hyp["preimage_is_H"] and hyp["H_in_image"]
        if a != b:
            raise InconsistentResult("stability criteria disagree")
    return hyp


def _split_entropies(phi, H, opts):
    restricted, induced = phi.model.restriction_and_quotient(phi, H)
    return halg(phi, opts), halg(restricted, opts), halg(induced, opts)


def check_addition_theorem(phi, H, opts: Options = DEFAULTS) -> CheckReport:
    """Equality when H is phi-stable and contains ker phi; otherwise the
    monotonicity inequality, with the hypothesis failure recorded."""
    hyp = addition_hypotheses(phi, H)
    if not (hyp["normal"] and hyp["invariant"]):
        raise HypothesisFailed("H must be normal and phi-invariant")
    h, h_res, h_quo = _split_entropies(phi, H, opts)
    details = {"h(phi)": h, "h(restriction)": h_res, "h(quotient)": h_quo}
    if hyp["stable"] and hyp["kernel_in_H"]:
        rhs = h_quo + h_res
        return CheckReport("addition-theorem", h == rhs, h, rhs, "=", hyp, True, details)
    rhs = max(h_res, h_quo)
    return CheckReport("addition-theorem", h >= rhs, h, rhs, ">=", hyp, False, details)


def check_monotonicity(phi, H, opts: Options = DEFAULTS) -> CheckReport:
    hyp = addition_hypotheses(phi, H)
    if not (hyp["normal"] and hyp["invariant"]):
        raise HypothesisFailed("H must be normal and phi-invariant")
    h, h_res, h_quo = _split_entropies(phi, H, opts)
    rhs = max(h_res, h_quo)
    return CheckReport("monotonicity", h >= rhs, h, rhs, ">=", hyp, True,
                       {"h(restriction)": h_res, "h(quotient)": h_quo})


def check_bridge(phi, opts: Options = DEFAULTS) -> CheckReport:
    from .duality import dual_system

    if not phi.model.is_abelian:
        raise NotAbelian("the dual is only defined for abelian models")
    dual_phi = dual_system(phi)
    lhs = halg(phi, opts)
    rhs = htop(dual_phi, opts)
    return CheckReport("bridge", lhs == rhs, lhs, rhs,
                       details={"dual_model": repr(dual_phi.model)})
