"""Exact positive rationals in factored form and entropy values ``log q``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    from sympy import factorint

    return tuple(sorted(factorint(n).items()))


class Factored:
    """A positive rational stored as a map prime -> nonzero exponent."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps=()):
        items = dict(exps.items() if isinstance(exps, dict) else exps)
        clean = tuple(sorted((int(p), int(e)) for p, e in items.items() if e != 0))
        for p, _ in clean:
            if p < 2 or _factor(p) != ((p, 1),):
                raise ValueError(f"{p} is not a prime")
        self._exps = clean
        self._hash = hash(clean)

    @classmethod
    def of(cls, value) -> Factored:
        """Factor a positive int or Fraction (or pass through a Factored)."""
        if isinstance(value, Factored):
            return value
        q = Fraction(value)
        if q <= 0:
            raise ValueError(f"expected a positive rational, got {value}")
        exps: dict[int, int] = {}
        for p, e in _factor(q.numerator) if q.numerator > 1 else ():
            exps[p] = exps.get(p, 0) + e
        for p, e in _factor(q.denominator) if q.denominator > 1 else ():
            exps[p] = exps.get(p, 0) - e
        return cls(exps)

    @classmethod
    def one(cls) -> Factored:
        return cls()

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exps)

    @property
    def value(self) -> Fraction:
        num = den = 1
        for p, e in self._exps:
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        return Fraction(num, den)

    def is_one(self) -> bool:
        return not self._exps

    def is_integer(self) -> bool:
        return all(e > 0 for _, e in self._exps)

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.value.numerator

    def __mul__(self, other):
        other = Factored.of(other)
        exps = dict(self._exps)
        for p, e in other._exps:
            exps[p] = exps.get(p, 0) + e
        return Factored(exps)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * Factored.of(other) ** -1

    def __pow__(self, m: int):
        return Factored({p: e * m for p, e in self._exps})

    def __eq__(self, other):
        if isinstance(other, Factored):
            return self._exps == other._exps
        if isinstance(other, (int, Fraction)):
            return other > 0 and self == Factored.of(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.value < Factored.of(other).value

    def __le__(self, other):
        return self.value <= Factored.of(other).value

    def __gt__(self, other):
        return self.value > Factored.of(other).value

    def __ge__(self, other):
        return self.value >= Factored.of(other).value

    def __str__(self):
        if not self._exps:
            return "1"
        num = [f"{p}^{e}" if e > 1 else f"{p}" for p, e in self._exps if e > 0]
        den = [f"{p}^{-e}" if e < -1 else f"{p}" for p, e in self._exps if e < 0]
        top = " * ".join(num) or "1"
        if not den:
            return top
        bottom = " * ".join(den)
        return f"{top}/({bottom})" if len(den) > 1 else f"{top}/{bottom}"

    def __repr__(self):
        return f"Factored({self.value})"

    def to_json(self) -> dict[str, str]:
        return {str(p): str(e) for p, e in self._exps}

    @classmethod
    def from_json(cls, data) -> Factored:
        return cls({int(p): int(e) for p, e in data.items()})


class _Infinite:
    """Singleton for an infinite index."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__


INFINITE = _Infinite()


def is_infinite(x) -> bool:
    return x is INFINITE


@dataclass(frozen=True)
class Entropy:
    """``log q`` for a positive rational ``q`` held exactly, or +infinity.

    Sums multiply the underlying rationals, differences divide them and an
    integer multiple raises to a power. ``float`` is for display only.
    """

    q: Factored | None

    @classmethod
    def log(cls, q) -> Entropy:
        return cls(Factored.of(q))

    @classmethod
    def zero(cls) -> Entropy:
        return cls(Factored.one())

    @classmethod
    def infinite(cls) -> Entropy:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.q is None

    @property
    def is_zero(self) -> bool:
        return self.q is not None and self.q.is_one()

    def __add__(self, other: Entropy) -> Entropy:
        if self.is_infinite or other.is_infinite:
            return Entropy.infinite()
        return Entropy(self.q * other.q)

    def __sub__(self, other: Entropy) -> Entropy:
        if other.is_infinite:
            raise ArithmeticError("cannot subtract an infinite entropy")
        if self.is_infinite:
            return self
        return Entropy(self.q / other.q)

    def __mul__(self, m: int) -> Entropy:
        if not isinstance(m, int) or m < 0:
            raise TypeError("entropy can only be scaled by a natural number")
        if m == 0:
            return Entropy.zero()
        if self.is_infinite:
            return self
        return Entropy(self.q**m)

    __rmul__ = __mul__

    def _key(self):
        return math.inf if self.q is None else self.q.value

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __float__(self):
        if self.q is None:
            return math.inf
        return float(sum(e * math.log(p) for p, e in self.q.exponents.items()))

    def __str__(self):
        if self.q is None:
            return "inf"
        if self.q.is_one():
            return "0"
        return f"log {self.q.value}"

    def render(self) -> str:
        """Exact form plus a 12-significant-digit natural-log rendering."""
        if self.q is None:
            return "inf"
        if self.q.is_one():
            return "0"
        return f"log({self.q}) ~ {float(self):.12g}"

    def to_json(self) -> dict:
        if self.q is None:
            return {"kind": "infinite"}
        return {"kind": "finite", "q": str(self.q.value), "factors": self.q.to_json(),
                "float": f"{float(self):.12g}"}

    @classmethod
    def from_json(cls, data) -> Entropy:
        if data["kind"] == "infinite":
            return cls.infinite()
        return cls(Factored.from_json(data["factors"]))


def sup(values) -> Entropy:
    values = list(values)
    if not values:
        return Entropy.zero()
    return max(values, key=Entropy._key)
