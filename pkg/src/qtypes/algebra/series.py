"""Truncated power series in t and in (t, conj(t)).

A :class:`UniSeries` with truncation B knows its coefficients exactly up to
t^(B-1); everything from t^B on is unknown.  Arithmetic keeps the smaller
truncation of its operands.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import ArityError
from .poly import PolyC
from .scalars import ZERO, ExtendedRational, GaussianRational

DEFAULT_TRUNCATION = 64

__all__ = [
    "DEFAULT_TRUNCATION",
    "UniSeries",
    "HermitianSeries",
    "compose",
    "series_order",
    "hermitian_pullback",
    "hermitian_order",
]


def _trim(coeffs: list) -> tuple:
    k = len(coeffs)
    while k and not coeffs[k - 1]:
        k -= 1
    return tuple(coeffs[:k])


class UniSeries:
    """Power series sum c_k t^k known modulo t^truncation."""

    __slots__ = ("truncation", "_c")

    def __init__(self, coeffs: Sequence = (), truncation: int = DEFAULT_TRUNCATION):
        if not isinstance(truncation, int) or truncation < 1:
            raise ValueError("truncation must be a positive integer")
        cs = [GaussianRational.coerce(c) for c in list(coeffs)[:truncation]]
        self.truncation = truncation
        self._c = _trim(cs)

    @classmethod
    def _wrap(cls, coeffs: list, truncation: int) -> UniSeries:
        obj = object.__new__(cls)
        obj.truncation = truncation
        obj._c = _trim(coeffs[:truncation])
        return obj

    @classmethod
    def monomial(cls, k: int, c=1, truncation: int = DEFAULT_TRUNCATION) -> UniSeries:
        return cls([0] * k + [c], truncation)

    @classmethod
    def zero(cls, truncation: int = DEFAULT_TRUNCATION) -> UniSeries:
        return cls((), truncation)

    @property
    def coeffs(self) -> tuple[GaussianRational, ...]:
        return self._c + (ZERO,) * (self.truncation - len(self._c))

    @property
    def stored(self) -> tuple[GaussianRational, ...]:
        """Coefficients up to the last nonzero one."""
        return self._c

    @property
    def degree(self) -> int:
        """Index of the last nonzero stored coefficient (-1 if none)."""
        return len(self._c) - 1

    def __getitem__(self, k: int) -> GaussianRational:
        if k < 0 or k >= self.truncation:
            raise IndexError(f"coefficient {k} outside truncation {self.truncation}")
        return self._c[k] if k < len(self._c) else ZERO

    def is_zero(self) -> bool:
        return not self._c

    def order(self) -> ExtendedRational:
        return series_order(self)

    def with_truncation(self, truncation: int) -> UniSeries:
        """Reinterpret the stored coefficients as exact up to a new truncation.

        Only sound when the series is known to be a polynomial of degree below
        ``truncation`` (e.g. it came from exact polynomial data).
        """
        return UniSeries._wrap(list(self._c), truncation)

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.truncation == other.truncation and self._c == other._c

    def __hash__(self):
        return hash((self.truncation, self._c))

    def __reduce__(self):
        return (UniSeries, (list(self._c), self.truncation))

    def __repr__(self):
        terms = [f"{c}*t^{k}" for k, c in enumerate(self._c) if c]
        return f"UniSeries({' + '.join(terms) or '0'} + O(t^{self.truncation}))"

    def __neg__(self):
        return UniSeries._wrap([-c for c in self._c], self.truncation)

    def __add__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        B = min(self.truncation, other.truncation)
        a, b = self._c, other._c
        n = min(max(len(a), len(b)), B)
        out = [
            (a[k] if k < len(a) else ZERO) + (b[k] if k < len(b) else ZERO) for k in range(n)
        ]
        return UniSeries._wrap(out, B)

    def __sub__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> UniSeries:
        c = GaussianRational.coerce(c)
        return UniSeries._wrap([c * x for x in self._c], self.truncation)

    def __mul__(self, other):
        if not isinstance(other, UniSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        B = min(self.truncation, other.truncation)
        a, b = self._c, other._c
        if not a or not b:
            return UniSeries._wrap([], B)
        n = min(len(a) + len(b) - 1, B)
        out = [ZERO] * n
        for i, x in enumerate(a):
            if i >= n:
                break
            if not x:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniSeries._wrap(out, B)

    __rmul__ = scale

    def conjugate(self) -> UniSeries:
        return UniSeries._wrap([c.conjugate() for c in self._c], self.truncation)

    def evaluate(self, t) -> GaussianRational:
        """Evaluate the stored (truncated) polynomial at t."""
        t = GaussianRational.coerce(t)
        acc = ZERO
        for c in reversed(self._c):
            acc = acc * t + c
        return acc

    def reparametrize(self, k: int) -> UniSeries:
        """The series s(t^k); known modulo t^(k*truncation)."""
        if k < 1:
            raise ValueError("reparametrization power must be positive")
        out = [ZERO] * ((len(self._c) - 1) * k + 1) if self._c else []
        for j, c in enumerate(self._c):
            out[j * k] = c
        return UniSeries._wrap(out, self.truncation * k)


def series_order(s: UniSeries) -> ExtendedRational:
    """Least k with a nonzero coefficient, or AtLeast(B) if none is stored."""
    for k, c in enumerate(s.stored):
        if c:
            return ExtendedRational.finite(k)
    return ExtendedRational.at_least(s.truncation)


def compose(p: PolyC, phi: Sequence[UniSeries]) -> UniSeries:
    """The pullback p(phi_1(t), ..., phi_n(t)) truncated at the curve's truncation."""
    if len(phi) != p.nvars:
        raise ArityError(f"arity mismatch: polynomial in {p.nvars} variables, curve has {len(phi)} components")
    B = min(s.truncation for s in phi)
    maxe = p.max_exponents()
    powers: list[list[UniSeries]] = []
    for s, k in zip(phi, maxe):
        pw = [UniSeries._wrap([GaussianRational(1)], B)]
        for _ in range(k):
            pw.append(pw[-1] * s)
        powers.append(pw)
    acc = [ZERO] * B
    top = 0
    for e, c in p.items():
        term = None
        for j, k in enumerate(e):
            if k:
                term = powers[j][k] if term is None else term * powers[j][k]
                if term.is_zero():
                    break
        if term is None:
            acc[0] = acc[0] + c
            top = max(top, 1)
            continue
        cs = term.stored
        for i, x in enumerate(cs):
            if x:
                acc[i] = acc[i] + c * x
        top = max(top, len(cs))
    return UniSeries._wrap(acc[:top], B)


class HermitianSeries:
    """Series sum c_(a,b) t^a conj(t)^b known for a + b < truncation."""

    __slots__ = ("truncation", "_c")

    def __init__(self, coeffs: Mapping | None = None, truncation: int = DEFAULT_TRUNCATION):
        if not isinstance(truncation, int) or truncation < 1:
            raise ValueError("truncation must be a positive integer")
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent")
            c = GaussianRational.coerce(c)
            if c and a + b < truncation:
                clean[(a, b)] = c
        self.truncation = truncation
        self._c = clean

    @classmethod
    def _wrap(cls, coeffs: dict, truncation: int) -> HermitianSeries:
        obj = object.__new__(cls)
        obj.truncation = truncation
        obj._c = {k: v for k, v in coeffs.items() if v and k[0] + k[1] < truncation}
        return obj

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def coefficient(self, a: int, b: int) -> GaussianRational:
        if a + b >= self.truncation:
            raise IndexError(f"({a},{b}) outside truncation {self.truncation}")
        return self._c.get((a, b), ZERO)

    def is_zero(self) -> bool:
        return not self._c

    def is_real(self) -> bool:
        """Reality test: c_(a,b) == conj(c_(b,a)) for every stored pair."""
        return all(
            self._c.get((b, a), ZERO) == c.conjugate() for (a, b), c in self._c.items()
        )

    def order(self) -> ExtendedRational:
        return hermitian_order(self)

    def __eq__(self, other):
        if not isinstance(other, HermitianSeries):
            return NotImplemented
        return self.truncation == other.truncation and self._c == other._c

    def __hash__(self):
        return hash((self.truncation, frozenset(self._c.items())))

    def __reduce__(self):
        return (HermitianSeries, (dict(self._c), self.truncation))

    def __repr__(self):
        terms = [f"{c}*t^{a}*tbar^{b}" for (a, b), c in sorted(self._c.items())]
        return f"HermitianSeries({' + '.join(terms) or '0'} + O({self.truncation}))"


def hermitian_order(s: HermitianSeries) -> ExtendedRational:
    """Least a + b with a nonzero coefficient, else AtLeast(B)."""
    if not s._c:
        return ExtendedRational.at_least(s.truncation)
    return ExtendedRational.finite(min(a + b for a, b in s._c))


def hermitian_pullback(
    h: PolyC,
    f: Sequence[PolyC],
    g: Sequence[PolyC],
    phi: Sequence[UniSeries],
) -> HermitianSeries:
    """Expansion of Re(h o phi) + sum |f_j o phi|^2 - sum |g_j o phi|^2."""
    n = len(phi)
    for p in (h, *f, *g):
        if p.nvars != n:
            raise ArityError(f"arity mismatch: polynomial in {p.nvars} variables, curve has {n} components")
    B = min(s.truncation for s in phi)
    out: dict = {}

    def add(key, c):
        acc = out.get(key)
        out[key] = c if acc is None else acc + c

    half = GaussianRational(1, 0) / 2
    H = compose(h, phi).stored
    for a, c in enumerate(H):
        if c:
            add((a, 0), c * half)
            add((0, a), c.conjugate() * half)
    for sign, group in ((1, f), (-1, g)):
        for q in group:
            F = compose(q, phi).stored
            Fbar = [c.conjugate() for c in F]
            for a, x in enumerate(F):
                if not x:
                    continue
                for b in range(min(len(F), B - a)):
                    y = Fbar[b]
                    if y:
                        add((a, b), x * y if sign > 0 else -(x * y))
    return HermitianSeries._wrap(out, B)
