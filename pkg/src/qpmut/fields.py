"""Exact coefficient fields: rationals (default) and prime fields F_p.

Coefficients are plain values that support +, -, *, /, ==, bool:
Fraction for the rationals, GF instances for F_p.  A FieldSpec mints
constants, parses and formats scalars, and tags serialized data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class GF:
    """Element of a prime field F_p.  Arithmetic coerces ints."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise TypeError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return GF(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return GF(self.p, self.v * pow(o.v, self.p - 2, self.p))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return GF(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.p},{self.v})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Field descriptor: kind 'q' (rationals) or 'fp' (prime field of size p)."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "q":
            if self.p:
                raise ValueError("rationals take no characteristic")
        elif self.kind == "fp":
            if not _is_prime(self.p):
                raise ValueError(f"field size must be prime, got {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "q" else self.p

    def zero(self):
        return Fraction(0) if self.kind == "q" else GF(self.p, 0)

    def one(self):
        return Fraction(1) if self.kind == "q" else GF(self.p, 1)

    def from_int(self, n: int):
        return Fraction(n) if self.kind == "q" else GF(self.p, n)

    def from_fraction(self, x: Fraction):
        if self.kind == "q":
            return Fraction(x)
        num = GF(self.p, x.numerator)
        den = GF(self.p, x.denominator)
        return num / den

    def parse(self, text: str):
        """Parse 'p/q' or integer literal."""
        return self.from_fraction(Fraction(text.strip()))

    def fmt(self, x) -> str:
        if self.kind == "q":
            return str(x)
        return str(x.v)

    def element_of(self, x) -> bool:
        if self.kind == "q":
            return isinstance(x, Fraction)
        return isinstance(x, GF) and x.p == self.p

    @staticmethod
    def from_string(s: str) -> "FieldSpec":
        """'q' or 'fp:<p>'."""
        s = s.strip().lower()
        if s == "q":
            return QQ
        if s.startswith("fp:"):
            return FieldSpec("fp", int(s[3:]))
        raise ValueError(f"unknown field spec {s!r} (expected 'q' or 'fp:<p>')")

    def to_string(self) -> str:
        return "q" if self.kind == "q" else f"fp:{self.p}"


QQ = FieldSpec("q")
