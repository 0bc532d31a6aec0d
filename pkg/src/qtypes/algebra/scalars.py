"""Exact scalars: Gaussian rationals and extended contact values."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "ExtendedRational",
    "INFINITY",
    "as_rational",
    "gr",
    "ZERO",
    "ONE",
    "I_UNIT",
]

_MPQ = type(mpq(0))
_Q0 = mpq(0)
_Q1 = mpq(1)


def as_rational(x) -> mpq:
    """Coerce an int, Fraction, mpq or 'p/q' string to an exact mpq."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x).numerator, Fraction(x).denominator)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def to_fraction(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class GaussianRational:
    """An element re + i*im of Q(i), stored as two reduced mpq values."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> GaussianRational:
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls(x)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(to_fraction(self.re))
        return hash((to_fraction(self.re), to_fraction(self.im)))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _Q0)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return GaussianRational._raw(1 / a, _Q0)
        n = a * a + b * b
        return GaussianRational._raw(a / n, -b / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def __reduce__(self):
        return (GaussianRational, (to_fraction(self.re), to_fraction(self.im)))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def gr(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


@total_ordering
class ExtendedRational:
    """A contact/type value: Finite(x), AtLeast(x) or Infinite.

    AtLeast(x) is the honest outcome of a truncated computation that saw no
    nonzero coefficient below x.  Ordering convention: values are compared
    by their rational part first, and at equal parts Finite(x) < AtLeast(x);
    Infinite is above everything.
    """

    __slots__ = ("kind", "value")

    FINITE = "finite"
    AT_LEAST = "at_least"
    INFINITE = "infinite"

    def __init__(self, kind: str, value=0):
        if kind not in (self.FINITE, self.AT_LEAST, self.INFINITE):
            raise ValueError(f"unknown kind {kind!r}")
        value = Fraction(0) if kind == self.INFINITE else _to_frac(value)
        if value < 0:
            raise ValueError("contact values are nonnegative")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedRational is immutable")

    def __reduce__(self):
        return (ExtendedRational, (self.kind, self.value))

    @classmethod
    def finite(cls, x) -> ExtendedRational:
        return cls(cls.FINITE, x)

    @classmethod
    def at_least(cls, x) -> ExtendedRational:
        return cls(cls.AT_LEAST, x)

    @classmethod
    def infinite(cls) -> ExtendedRational:
        return INFINITY

    @property
    def is_finite(self) -> bool:
        return self.kind == self.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == self.INFINITE

    @property
    def is_at_least(self) -> bool:
        return self.kind == self.AT_LEAST

    def _key(self):
        if self.kind == self.INFINITE:
            return (1, Fraction(0), 0)
        return (0, self.value, 0 if self.kind == self.FINITE else 1)

    def __eq__(self, other):
        if isinstance(other, ExtendedRational):
            return self.kind == other.kind and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.kind == self.FINITE and self.value == other
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, ExtendedRational):
            if isinstance(other, (int, Fraction)):
                other = ExtendedRational.finite(other)
            else:
                return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash((self.kind, self.value))

    def __truediv__(self, k):
        """Normalize by a curve order: k is a positive Finite value or int."""
        if isinstance(k, ExtendedRational):
            if not k.is_finite:
                raise ValueError(f"cannot normalize by non-finite order {k}")
            k = k.value
        k = _to_frac(k)
        if k <= 0:
            raise ZeroDivisionError("normalizing order must be positive")
        if self.kind == self.INFINITE:
            return self
        return ExtendedRational(self.kind, self.value / k)

    def __mul__(self, k):
        k = _to_frac(k)
        if self.kind == self.INFINITE:
            return self
        return ExtendedRational(self.kind, self.value * k)

    __rmul__ = __mul__

    def __add__(self, other: ExtendedRational):
        if self.is_infinite or other.is_infinite:
            return INFINITY
        kind = self.FINITE if self.is_finite and other.is_finite else self.AT_LEAST
        return ExtendedRational(kind, self.value + other.value)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        if self.kind == self.INFINITE:
            return self if k else ExtendedRational.finite(1)
        return ExtendedRational(self.kind, self.value**k)

    def __repr__(self):
        if self.kind == self.INFINITE:
            return "Infinite"
        name = "Finite" if self.kind == self.FINITE else "AtLeast"
        return f"{name}({self.value})"

    def __str__(self):
        if self.kind == self.INFINITE:
            return "infinity"
        return f">= {self.value}" if self.kind == self.AT_LEAST else str(self.value)

    def to_json(self) -> dict:
        if self.kind == self.INFINITE:
            return {"kind": "infinite"}
        return {
            "kind": self.kind,
            "num": self.value.numerator,
            "den": self.value.denominator,
        }

    @classmethod
    def from_json(cls, data: dict) -> ExtendedRational:
        if data["kind"] == cls.INFINITE:
            return INFINITY
        return cls(data["kind"], Fraction(data["num"], data["den"]))


def _to_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, _MPQ):
        return to_fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


INFINITY = object.__new__(ExtendedRational)
object.__setattr__(INFINITY, "kind", ExtendedRational.INFINITE)
object.__setattr__(INFINITY, "value", Fraction(0))
