"""Exact coefficient fields: the rationals and prime fields.

Field objects are lightweight factories; the elements they hand out are
plain ``fractions.Fraction`` for QQ and ``GFElement`` for GF(p).  Both
element kinds support the usual arithmetic operators, compare equal to
ints, and never lose exactness.  Elements of different moduli refuse to
mix.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatch


class GFElement:
    """An element of GF(p), stored as a reduced int."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatch(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return GFElement(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return GFElement(self.p, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        return GFElement(self.p, pow(self.v, n, self.p))

    def inverse(self) -> "GFElement":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return GFElement(self.p, pow(self.v, -1, self.p))

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class RationalField:
    """The field QQ; a stateless singleton."""

    char = 0
    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def element(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldMismatch(f"cannot coerce {x!r} into QQ")

    def random(self, rng, lo: int = -3, hi: int = 3):
        """Small random integer, as a Fraction."""
        return Fraction(rng.randint(lo, hi))

    def is_zero(self, x) -> bool:
        return x == 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field GF(p) for a prime p."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"GF({p})"

    def zero(self):
        return GFElement(self.p, 0)

    def one(self):
        return GFElement(self.p, 1)

    def from_int(self, n: int):
        return GFElement(self.p, n)

    def element(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise FieldMismatch(f"element of GF({x.p}) given to GF({self.p})")
            return x
        if isinstance(x, int):
            return GFElement(self.p, x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return GFElement(self.p, x.numerator) / GFElement(self.p, x.denominator)
        raise FieldMismatch(f"cannot coerce {x!r} into GF({self.p})")

    def random(self, rng):
        return GFElement(self.p, rng.randrange(self.p))

    def is_zero(self, x) -> bool:
        return x == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str):
    """Parse 'q'/'qq' or 'p:101' style field descriptors (CLI syntax)."""
    s = name.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    if s.startswith("p:"):
        return GF(int(s[2:]))
    if s.isdigit():
        return GF(int(s))
    raise ValueError(f"unknown field descriptor {name!r}")
