"""Exact coefficient fields: arbitrary-precision rationals and F_p.

Elements are plain ``Fraction`` objects over the rationals and ``FpElement``
wrappers over a prime field; both support the usual arithmetic operators, so
the linear algebra and polynomial code stays field-generic.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 2**31 - 1


class FieldError(Exception):
    pass


class RationalField:
    """The field of rationals, elements stored as ``fractions.Fraction``."""

    name = "QQ"

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise FieldError("cannot coerce %r into QQ" % (value,))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def random(self, rng, lo=-9, hi=9):
        return Fraction(rng.randint(lo, hi))

    def render(self, value):
        if value.denominator == 1:
            return int(value)
        return "%d/%d" % (value.numerator, value.denominator)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class FpElement:
    """A residue in F_p; normalized to [0, p)."""

    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v % field.p
        self.field = field

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise FieldError("mixed prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        if isinstance(other, Fraction):
            return self.field.from_rational(other).v
        return NotImplemented

    def __add__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v + w, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v - w, self.field)

    def __rsub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(w - self.v, self.field)

    def __mul__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(self.v * w, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if w == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.v * pow(w, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(w * pow(self.v, -1, self.field.p), self.field)

    def __neg__(self):
        return FpElement(-self.v, self.field)

    def __pow__(self, e):
        return FpElement(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return self.v == w

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v


class PrimeField:
    """F_p for an odd prime p (default 2^31 - 1)."""

    def __init__(self, p=DEFAULT_PRIME):
        if p < 3 or p % 2 == 0:
            raise FieldError("prime field modulus must be odd, got %d" % p)
        self.p = p
        self.name = "F_%d" % p

    def __call__(self, value):
        if isinstance(value, FpElement):
            if value.field.p != self.p:
                raise FieldError("mixed prime fields")
            return value
        if isinstance(value, int):
            return FpElement(value, self)
        if isinstance(value, Fraction):
            return self.from_rational(value)
        if isinstance(value, str):
            return self.from_rational(Fraction(value))
        raise FieldError("cannot coerce %r into %s" % (value, self.name))

    def from_rational(self, q):
        """Reduce a rational mod p; bad reduction (p | denominator) raises."""
        den = q.denominator % self.p
        if den == 0:
            raise FieldError("bad reduction: denominator divisible by %d" % self.p)
        return FpElement(q.numerator * pow(den, -1, self.p), self)

    @property
    def zero(self):
        return FpElement(0, self)

    @property
    def one(self):
        return FpElement(1, self)

    def random(self, rng, lo=None, hi=None):
        return FpElement(rng.randrange(self.p), self)

    def render(self, value):
        return value.v

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


def parse_field_spec(spec):
    """Parse a ``--field`` value: ``q`` or ``fp:PRIME``."""
    if spec in ("q", "Q", "QQ"):
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    if spec == "fp":
        return PrimeField()
    raise FieldError("unknown field spec %r (expected 'q' or 'fp:PRIME')" % spec)
