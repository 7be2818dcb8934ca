"""The contract every group model implements, plus model-agnostic dispatch.

A model is an immutable value object. Subgroup and endomorphism handles
carry a reference to their model; the free functions below check that
all handles involved belong to the same model and then delegate to it.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from .exceptions import IncompatibleModels, NotContained, PreconditionFailed


class GroupModel(ABC):
    """A locally compact group with a declared ascending cofinal chain of
    compact open normal subgroups."""

    kind: str = "abstract"

    @property
    @abstractmethod
    def is_compact(self) -> bool: ...

    @property
    @abstractmethod
    def is_discrete(self) -> bool: ...

    @property
    @abstractmethod
    def is_abelian(self) -> bool: ...

    @abstractmethod
    def whole(self): ...

    @abstractmethod
    def trivial(self): ...

    @abstractmethod
    def chain(self, k: int):
        """The k-th member (k >= 1) of the ascending cofinal chain."""

    @property
    def chain_length(self) -> int | None:
        """Number of distinct chain members, or None for an infinite chain."""
        return None

    @abstractmethod
    def identity_endo(self): ...

    # lattice operations on this model's own handles
    @abstractmethod
    def _product(self, A, B): ...

    @abstractmethod
    def _intersect(self, A, B): ...

    @abstractmethod
    def _preimage(self, phi, A): ...

    @abstractmethod
    def _image(self, phi, A): ...

    @abstractmethod
    def _index(self, A, B):
        """[A:B] for B <= A, as a Factored integer or INFINITE."""

    @abstractmethod
    def _contains(self, A, B) -> bool: ...

    def _is_subgroup(self, A) -> bool:
        """Whether a product handle is closed; only element-set models can fail."""
        return True

    @abstractmethod
    def compose(self, f, g):
        """The endomorphism ``f o g`` (apply g first)."""

    @abstractmethod
    def inverse(self, f): ...

    def power(self, f, m: int):
        if m < 0:
            return self.power(self.inverse(f), -m)
        result = self.identity_endo()
        base = f
        while m:
            if m & 1:
                result = self.compose(base, result)
            base = self.compose(base, base)
            m >>= 1
        return result

    # hooks consumed by the entropy engine
    @abstractmethod
    def family_cutoff(self, phi) -> tuple[int, str]:
        """How many chain members suffice for suprema, with a justification."""

    def stabilization_bound(self, phi, U) -> int | None:
        """An n0 with beta_n constant for n >= n0, when the model knows one."""
        return None

    def u_minus_closed_form(self, phi, U):
        """The smallest inversely phi-invariant subgroup containing U, when
        the model can write it down directly; None otherwise."""
        return None

    def htop_steps(self, phi) -> int:
        """How many phi-power images of chain members the htop search scans."""
        return 3

    def restriction_and_quotient(self, phi, H):
        """Endomorphisms ``phi|_H`` and the induced map on ``G/H``."""
        from .exceptions import QuotientNotRepresentable

        raise QuotientNotRepresentable(f"{self.kind} model cannot form quotients")


def _model_of(*handles):
    model = handles[0].model
    for h in handles[1:]:
        if h.model is not model and h.model != model:
            raise IncompatibleModels(f"{h!r} does not belong to {model!r}")
    return model


def product(A, B):
    model = _model_of(A, B)
    P = model._product(A, B)
    # without a normal factor AB is a subgroup only when AB = BA
    if not (A.normal or B.normal) and not model._is_subgroup(P):
        raise PreconditionFailed("AB is not a subgroup and neither factor is normal")
    return P


def intersect(A, B):
    return _model_of(A, B)._intersect(A, B)


def preimage(phi, A):
    return _model_of(phi, A)._preimage(phi, A)


def image(phi, A):
    return _model_of(phi, A)._image(phi, A)


def contains(A, B) -> bool:
    """True when B is a subgroup of A."""
    return _model_of(A, B)._contains(A, B)


def equals(A, B) -> bool:
    model = _model_of(A, B)
    return model._contains(A, B) and model._contains(B, A)


def index(A, B):
    model = _model_of(A, B)
    if not model._contains(A, B):
        raise NotContained(f"{B!r} is not contained in {A!r}")
    return model._index(A, B)


def compose(f, g):
    return _model_of(f, g).compose(f, g)


def inverse(f):
    return f.model.inverse(f)


def power(f, m: int):
    return f.model.power(f, m)
