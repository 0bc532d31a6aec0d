"""Sparse multivariate polynomials over Q(i)."""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ..errors import ArityError, SingularMatrixError
from .linalg import rank
from .scalars import ONE, ZERO, GaussianRational

__all__ = ["PolyC", "linear_substitute", "substitute_linear", "compose_poly", "var_names"]


def var_names(n: int) -> list[str]:
    return [f"z{j + 1}" for j in range(n)]


class PolyC:
    """Polynomial in ``nvars`` variables as a map exponent-tuple -> coefficient.

    Instances are canonical (no zero coefficients) and immutable.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable | None = None):
        if not isinstance(nvars, int) or nvars < 1:
            raise ValueError("nvars must be a positive integer")
        clean: dict[tuple[int, ...], GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = GaussianRational.coerce(c)
            acc = clean.get(exp)
            c = c if acc is None else acc + c
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: dict) -> PolyC:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> PolyC:
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> PolyC:
        c = GaussianRational.coerce(c)
        return cls._wrap(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, j: int) -> PolyC:
        exp = [0] * nvars
        exp[j] = 1
        return cls._wrap(nvars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], c=1) -> PolyC:
        return cls(nvars, {tuple(exp): c})

    @classmethod
    def linear_form(cls, coefficients: Sequence) -> PolyC:
        n = len(coefficients)
        terms = {}
        for j, c in enumerate(coefficients):
            exp = [0] * n
            exp[j] = 1
            terms[tuple(exp)] = c
        return cls(n, terms)

    @property
    def terms(self) -> Mapping[tuple[int, ...], GaussianRational]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exp), ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def order(self) -> int | None:
        """Lowest total degree of a term (vanishing order at the origin)."""
        return min((sum(e) for e in self._terms), default=None)

    def homogeneous_part(self, d: int) -> PolyC:
        return PolyC._wrap(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * self.nvars, ZERO)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if d is not None:
            return degs <= {d}
        return len(degs) <= 1

    def is_linear_form(self) -> bool:
        return bool(self._terms) and self.is_homogeneous(1)

    def linear_coefficients(self) -> list[GaussianRational]:
        """Coefficient vector of the degree-one part."""
        out = [ZERO] * self.nvars
        for e, c in self._terms.items():
            if sum(e) == 1:
                out[e.index(1)] = c
        return out

    def max_exponents(self) -> tuple[int, ...]:
        m = [0] * self.nvars
        for e in self._terms:
            for j, k in enumerate(e):
                if k > m[j]:
                    m[j] = k
        return tuple(m)

    # arithmetic -------------------------------------------------------

    def _check(self, other: PolyC):
        if other.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> PolyC:
        if isinstance(other, PolyC):
            self._check(other)
            return other
        return PolyC.constant(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            acc = terms.get(e)
            if acc is None:
                terms[e] = c
            else:
                s = acc + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return PolyC._wrap(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyC._wrap(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> PolyC:
        c = GaussianRational.coerce(c)
        if not c:
            return PolyC.zero(self.nvars)
        return PolyC._wrap(self.nvars, {e: c * v for e, v in self._terms.items()})

    def shift(self, exp: Sequence[int], c=ONE) -> PolyC:
        """Multiply by the monomial c * z^exp."""
        c = GaussianRational.coerce(c)
        return PolyC._wrap(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c * v for e, v in self._terms.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, PolyC):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(e)
                terms[e] = c1 * c2 if acc is None else acc + c1 * c2
        return PolyC._wrap(self.nvars, {e: c for e, c in terms.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = PolyC.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, PolyC):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, GaussianRational)):
            return self == PolyC.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __reduce__(self):
        return (PolyC, (self.nvars, list(self._terms.items())))

    # evaluation / substitution -----------------------------------------

    def evaluate(self, point: Sequence) -> GaussianRational:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [GaussianRational.coerce(x) for x in point]
        total = ZERO
        for e, c in self._terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def translate(self, point: Sequence) -> PolyC:
        """Return p(z + point), moving ``point`` to the origin."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        if all(GaussianRational.coerce(x).is_zero() for x in point):
            return self
        n = self.nvars
        images = [PolyC.variable(n, j) + GaussianRational.coerce(x) for j, x in enumerate(point)]
        return compose_poly(self, images)

    def sorted_terms(self):
        """Terms ordered by total degree, then lexicographically descending."""
        return sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), [-k for k in ec[0]]))

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else var_names(self.nvars)
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            coeff = _coeff_str(c)
            if not mono:
                body = coeff
            elif coeff == "1":
                body = mono
            elif coeff == "-1":
                body = "-" + mono
            else:
                body = f"{coeff}*{mono}"
            pieces.append(body)
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"PolyC({self.nvars}, {self.to_string()!r})"


def _rat_str(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"({q.numerator}/{q.denominator})"


def _coeff_str(c: GaussianRational) -> str:
    if not c.im:
        if c.re.denominator == 1:
            return str(c.re.numerator)
        return f"-{_rat_str(-c.re)}" if c.re < 0 else _rat_str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"-{_rat_str(-c.im)}*i" if c.im < 0 else f"{_rat_str(c.im)}*i"
    im = _rat_str(abs(c.im))
    sign = "+" if c.im > 0 else "-"
    re = _rat_str(c.re) if c.re > 0 else f"-{_rat_str(-c.re)}"
    return f"({re} {sign} {im}*i)"


def compose_poly(p: PolyC, images: Sequence[PolyC]) -> PolyC:
    """Exact polynomial composition p(images[0], ..., images[n-1])."""
    if len(images) != p.nvars:
        raise ArityError(f"arity mismatch: {p.nvars} variables, {len(images)} images")
    if not images:
        raise ValueError("no images")
    m = images[0].nvars
    for q in images:
        if q.nvars != m:
            raise ValueError("images must share one ring")
    maxe = p.max_exponents()
    powers = []
    for q, k in zip(images, maxe):
        pw = [PolyC.constant(m, 1)]
        for _ in range(k):
            pw.append(pw[-1] * q)
        powers.append(pw)
    total: dict = {}
    for e, c in p.items():
        term = PolyC.constant(m, c)
        for j, k in enumerate(e):
            if k:
                term = term * powers[j][k]
        for te, tc in term.items():
            acc = total.get(te)
            total[te] = tc if acc is None else acc + tc
    return PolyC._wrap(m, {e: c for e, c in total.items() if c})


def substitute_linear(p: PolyC, matrix: Sequence[Sequence]) -> PolyC:
    """p(M x) for an nvars x m matrix M; the result lives in m variables."""
    if len(matrix) != p.nvars:
        raise ArityError(f"arity mismatch: matrix has {len(matrix)} rows, poly has {p.nvars} variables")
    m = len(matrix[0])
    if any(len(row) != m for row in matrix):
        raise ValueError("ragged matrix")
    images = [PolyC.linear_form(list(row)) for row in matrix]
    return compose_poly(p, images)


def linear_substitute(p: PolyC, A: Sequence[Sequence]) -> PolyC:
    """Compose p with the invertible linear map z -> A z."""
    n = p.nvars
    if len(A) != n or any(len(row) != n for row in A):
        raise ArityError(f"matrix must be {n}x{n}")
    if rank(A) < n:
        raise SingularMatrixError("linear substitution matrix is singular")
    return substitute_linear(p, A)
