"""Local standard bases and the colength dim O/I of an ideal at a point.

Computations use the local degree order: a monomial is larger when its
total degree is smaller, ties broken lexicographically (z1 > z2 > ...).
Normal forms follow Mora's ecart-controlled division, which terminates in
the local ring where plain division would not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra.poly import PolyC
from .algebra.scalars import ExtendedRational, GaussianRational
from .errors import ArityError, BudgetExceeded, DegenerateSamplingError, NotProperError
from .sampling import SliceSampler, integer_rows, map_samples, summarize

ORDER_SPEC = "local-deglex"

DEFAULT_MAX_STEPS = 500_000
DEFAULT_MAX_DEGREE = 80


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an ideal in the local ring at ``base_point``."""

    nvars: int
    generators: tuple[PolyC, ...]
    base_point: tuple[GaussianRational, ...] | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal presentation needs at least one generator")
        for g in gens:
            if g.nvars != self.nvars:
                raise ArityError(f"generator in {g.nvars} variables, ideal in {self.nvars}")
        point = self.base_point
        if point is None:
            point = (GaussianRational(0),) * self.nvars
        point = tuple(GaussianRational.coerce(x) for x in point)
        if len(point) != self.nvars:
            raise ArityError("base point has wrong dimension")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "base_point", point)
        for g in self.local_generators:
            if g.constant_term():
                raise NotProperError(f"generator {g} is a unit at the base point")

    @classmethod
    def of(cls, *generators: PolyC, base_point=None) -> IdealPresentation:
        return cls(generators[0].nvars, tuple(generators), base_point)

    @property
    def at_origin(self) -> bool:
        return all(not x for x in self.base_point)

    @property
    def local_generators(self) -> tuple[PolyC, ...]:
        """Generators translated so the base point sits at the origin."""
        return _translated(self.generators, self.base_point)

    def with_generators(self, extra: Sequence[PolyC]) -> IdealPresentation:
        return IdealPresentation(self.nvars, self.generators + tuple(extra), self.base_point)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.local_generators)


@lru_cache(maxsize=4096)
def _translated(gens, point):
    return tuple(g.translate(point) for g in gens)


@dataclass(frozen=True)
class StandardBasisResult:
    basis: tuple[PolyC, ...]
    leading_exponents: frozenset[tuple[int, ...]]
    order_spec: str = ORDER_SPEC
    corner: int | None = None

    @property
    def nvars(self) -> int:
        return self.basis[0].nvars

    def staircase(self) -> list[tuple[int, ...]] | None:
        """Exponents of the standard monomials, or None when there are infinitely many."""
        return staircase(self.leading_exponents, self.nvars)


# --- monomial order helpers -------------------------------------------------


def order_key(e: tuple[int, ...]):
    """Smaller key = larger monomial in the local order."""
    return (sum(e), tuple(-x for x in e))


def _lead(p: dict) -> tuple[int, ...]:
    return min(p, key=order_key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _pure_powers(lms, n) -> list[int | None]:
    best: list[int | None] = [None] * n
    for e in lms:
        nz = [j for j, x in enumerate(e) if x]
        if len(nz) == 1:
            j = nz[0]
            if best[j] is None or e[j] < best[j]:
                best[j] = e[j]
        elif not nz:
            raise NotProperError("unit in the ideal")
    return best


def staircase(lms, n: int) -> list[tuple[int, ...]] | None:
    """Monomials not divisible by any exponent in ``lms``; None if infinite."""
    bounds = _pure_powers(lms, n)
    if any(b is None for b in bounds):
        return None
    lms = list(lms)
    return [
        e
        for e in itertools.product(*(range(b) for b in bounds))
        if not any(_divides(m, e) for m in lms)
    ]


def _corner(lms, n) -> int | None:
    """Least N with every monomial of degree N divisible by some exponent in lms."""
    st = staircase(lms, n)
    if st is None:
        return None
    return max((sum(e) for e in st), default=-1) + 1


# --- Mora normal form ---------------------------------------------------------


class _Budget:
    __slots__ = ("steps", "max_steps", "max_degree")

    def __init__(self, max_steps, max_degree):
        self.steps = 0
        self.max_steps = max_steps
        self.max_degree = max_degree

    def tick(self, p: dict):
        self.steps += 1
        if self.steps > self.max_steps:
            raise BudgetExceeded(f"more than {self.max_steps} reduction steps")
        if p and max(sum(e) for e in p) > self.max_degree:
            raise BudgetExceeded(f"intermediate degree above {self.max_degree}")


class _Elt:
    __slots__ = ("poly", "lm", "lc", "ecart")

    def __init__(self, poly: dict):
        self.poly = poly
        self.lm = _lead(poly)
        self.lc = poly[self.lm]
        self.ecart = max(sum(e) for e in poly) - sum(self.lm)


def _truncate(p: dict, corner: int | None) -> dict:
    if corner is None:
        return p
    return {e: c for e, c in p.items() if sum(e) < corner}


def _cut(elt: _Elt, corner: int) -> _Elt:
    """Drop terms of degree >= corner; they lie in m^corner, hence in the ideal."""
    if sum(elt.lm) >= corner:
        return _Elt({elt.lm: GaussianRational(1)})
    return _Elt(_truncate(elt.poly, corner))


def _reduce_once(h: dict, lm, lc, g: _Elt) -> dict:
    f = lc / g.lc
    shift = tuple(a - b for a, b in zip(lm, g.lm))
    out = dict(h)
    for e, c in g.poly.items():
        k = tuple(a + b for a, b in zip(e, shift))
        v = out.get(k)
        v = -(f * c) if v is None else v - f * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    out.pop(lm, None)
    return out


def _mora_nf(h: dict, T: list[_Elt], corner: int | None, budget: _Budget) -> dict:
    T = list(T)
    h = _truncate(h, corner)
    while h:
        lm = _lead(h)
        best = None
        for g in T:
            if _divides(g.lm, lm) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            return h
        eh = max(sum(e) for e in h) - sum(lm)
        if best.ecart > eh:
            T.append(_Elt(h))
        h = _truncate(_reduce_once(h, lm, h[lm], best), corner)
        budget.tick(h)
    return h


def _spoly(f: _Elt, g: _Elt) -> dict:
    lcm = tuple(max(a, b) for a, b in zip(f.lm, g.lm))
    sf = tuple(a - b for a, b in zip(lcm, f.lm))
    sg = tuple(a - b for a, b in zip(lcm, g.lm))
    out: dict = {}
    inv_f = f.lc.inverse()
    inv_g = g.lc.inverse()
    for e, c in f.poly.items():
        out[tuple(a + b for a, b in zip(e, sf))] = c * inv_f
    for e, c in g.poly.items():
        k = tuple(a + b for a, b in zip(e, sg))
        v = out.get(k)
        v = -(c * inv_g) if v is None else v - c * inv_g
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _compute_basis(gens, n, max_steps, max_degree):
    budget = _Budget(max_steps, max_degree)
    basis: list[_Elt] = []
    pairs: list[tuple[int, int]] = []
    corner = None

    def add(p: dict):
        nonlocal corner
        elt = _Elt(p)
        basis.append(elt)
        k = len(basis) - 1
        pairs.extend((i, k) for i in range(k))
        if corner is None:
            corner = _corner([b.lm for b in basis], n)
            if corner is not None:
                basis[:] = [_cut(b, corner) for b in basis]

    for g in gens:
        h = _mora_nf(dict(g.items()), basis, corner, budget)
        if h:
            add(h)

    def pkey(ij):
        a, b = basis[ij[0]], basis[ij[1]]
        return (sum(max(x, y) for x, y in zip(a.lm, b.lm)), ij)

    while pairs:
        # normal strategy: smallest lcm degree first
        pairs.sort(key=pkey, reverse=True)
        i, j = pairs.pop()
        a, b = basis[i], basis[j]
        if all(not (x and y) for x, y in zip(a.lm, b.lm)):
            continue  # coprime leading monomials
        if corner is not None and sum(max(x, y) for x, y in zip(a.lm, b.lm)) >= corner:
            continue  # the s-polynomial lies in m^corner
        s = _truncate(_spoly(a, b), corner)
        h = _mora_nf(s, basis, corner, budget)
        if h:
            add(h)
    return basis, corner


def _minimal_monic(elts: list[_Elt], n: int) -> list[PolyC]:
    elts = sorted(elts, key=lambda e: (order_key(e.lm), len(e.poly)))
    kept: list[_Elt] = []
    for e in elts:
        if not any(_divides(k.lm, e.lm) for k in kept):
            kept.append(e)
    out = []
    for e in kept:
        inv = e.lc.inverse()
        out.append(PolyC._wrap(n, {k: c * inv for k, c in e.poly.items()}))
    return out


def standard_basis(
    I: IdealPresentation,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> StandardBasisResult:
    """Minimal monic standard basis of I in the local ring at its base point.

    Raises BudgetExceeded when a cap is hit; that is a resource verdict, not
    a statement about the ideal.
    """
    return _standard_basis_cached(I.local_generators, I.nvars, max_steps, max_degree)


@lru_cache(maxsize=2048)
def _standard_basis_cached(gens, n, max_steps, max_degree):
    elts, corner = _compute_basis(gens, n, max_steps, max_degree)
    if not elts:
        raise ValueError("zero ideal has no standard basis here")
    basis = _minimal_monic(elts, n)
    lms = frozenset(_lead(b._terms) for b in basis)
    return StandardBasisResult(tuple(basis), lms, ORDER_SPEC, corner)


def normal_form(f: PolyC, sb: StandardBasisResult, max_steps: int = DEFAULT_MAX_STEPS) -> PolyC:
    """Mora weak normal form of f (already at the origin) against a standard basis.

    Zero exactly when f lies in the ideal of the local ring.
    """
    budget = _Budget(max_steps, DEFAULT_MAX_DEGREE * 4)
    T = [_Elt(dict(b.items())) for b in sb.basis]
    h = _mora_nf(dict(f.items()), T, sb.corner, budget)
    return PolyC._wrap(f.nvars, h)


def contains(I: IdealPresentation, f: PolyC, sb: StandardBasisResult | None = None) -> bool:
    """Membership of f (given in the original coordinates) in I at the base point."""
    sb = sb or standard_basis(I)
    return normal_form(f.translate(I.base_point), sb).is_zero()


def multiplicity(I: IdealPresentation) -> ExtendedRational:
    """D(I, x0) = dim O/I, the number of standard monomials."""
    st = standard_basis(I).staircase()
    if st is None:
        return ExtendedRational.infinite()
    return ExtendedRational.finite(len(st))


def is_zero_dimensional(I: IdealPresentation) -> bool:
    sb = standard_basis(I)
    return all(b is not None for b in _pure_powers(sb.leading_exponents, I.nvars))


def _multiplicity_sample(args):
    I, sampler, index = args
    M, rejected = sampler.draw(index, I.nvars)
    forms = [PolyC.linear_form(row) for row in integer_rows(M)]
    # forms vanish at the origin; shift them to vanish at the base point
    shifted = [f - f.evaluate(I.base_point) for f in forms]
    return multiplicity(I.with_generators(shifted)), rejected


def generic_multiplicity(
    I: IdealPresentation, q: int, sampler: SliceSampler, workers: int = 1
):
    """Multiplicity of (I, w_1..w_{q-1}) over sampled non-degenerate forms.

    The minimum over samples is the claimed generic value; the report's
    ``min_equals_mode`` flags any disagreement with the mode.
    """
    if not 2 <= q <= I.nvars:
        raise ValueError(f"need 2 <= q <= {I.nvars}, got q={q}")
    if sampler.q != q:
        sampler = SliceSampler(sampler.seed, sampler.samples, sampler.coefficient_range, q, sampler.max_attempts)
    try:
        results = map_samples(
            _multiplicity_sample, [(I, sampler, k) for k in range(sampler.samples)], workers
        )
    except DegenerateSamplingError as exc:
        raise DegenerateSamplingError(f"all draws degenerate: {exc}") from exc
    values = [v for v, _ in results]
    rejected = sum(r for _, r in results)
    report = summarize(values, rejected=rejected, seed=sampler.seed, statistic="min")
    return report
