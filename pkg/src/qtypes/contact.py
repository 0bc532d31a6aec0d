"""Curve germs and orders of contact along them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra.linalg import rank
from .algebra.poly import PolyC
from .algebra.scalars import ExtendedRational, GaussianRational
from .algebra.series import (
    DEFAULT_TRUNCATION,
    HermitianSeries,
    UniSeries,
    compose,
    hermitian_order,
    hermitian_pullback,
    series_order,
)
from .errors import ArityError, InvalidGermError
from .local import IdealPresentation

__all__ = [
    "CurveGerm",
    "HypersurfaceGerm",
    "LinearSlice",
    "QPositivityReport",
    "curve_order",
    "pullback_order",
    "ideal_contact",
    "hypersurface_contact",
    "hypersurface_pullback",
    "q_positivity",
]


def _origin(n):
    return (GaussianRational(0),) * n


@dataclass(frozen=True)
class CurveGerm:
    """A parametrized curve t -> (phi_1(t), ..., phi_n(t)) with phi(0) = base_point.

    ``polynomial`` marks components that are exact polynomials of degree
    below the truncation; for those, a vanishing truncated pullback can be
    confirmed exactly instead of being reported as a lower bound.
    """

    components: tuple[UniSeries, ...]
    base_point: tuple[GaussianRational, ...] | None = None
    polynomial: bool = False

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ArityError("a curve needs at least one component")
        point = _origin(len(comps)) if self.base_point is None else self.base_point
        point = tuple(GaussianRational.coerce(x) for x in point)
        if len(point) != len(comps):
            raise ArityError("base point has wrong dimension")
        for s, x in zip(comps, point):
            if s[0] != x:
                raise InvalidGermError(f"curve does not pass through the base point: {s[0]} != {x}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "base_point", point)
        if all(s.is_zero() for s in self.local_components):
            raise InvalidGermError("constant germ: every component vanishes identically")

    @classmethod
    def from_polynomials(
        cls,
        coefficient_lists: Sequence[Sequence],
        truncation: int = DEFAULT_TRUNCATION,
        base_point=None,
    ) -> CurveGerm:
        """Curve whose j-th component is sum_k coefficient_lists[j][k] t^k."""
        deg = max((len(c) for c in coefficient_lists), default=0)
        truncation = max(truncation, deg)
        comps = tuple(UniSeries(c, truncation) for c in coefficient_lists)
        return cls(comps, base_point, polynomial=True)

    @classmethod
    def monomial(
        cls, exponents: Sequence[int | None], coefficients: Sequence | None = None,
        truncation: int = DEFAULT_TRUNCATION,
    ) -> CurveGerm:
        """Curve (c_1 t^a_1, ..., c_n t^a_n); an exponent of None (or 0) is the zero component."""
        coefficients = coefficients or [1] * len(exponents)
        lists = []
        for a, c in zip(exponents, coefficients):
            lists.append([0] * a + [c] if a else [])
        return cls.from_polynomials(lists, truncation)

    @property
    def nvars(self) -> int:
        return len(self.components)

    @property
    def truncation(self) -> int:
        return min(s.truncation for s in self.components)

    @property
    def local_components(self) -> tuple[UniSeries, ...]:
        """Components minus the base point, so they vanish at t = 0."""
        if all(not x for x in self.base_point):
            return self.components
        return tuple(s - UniSeries([x], s.truncation) for s, x in zip(self.components, self.base_point))

    @property
    def max_degree(self) -> int:
        return max(s.degree for s in self.components)

    def tangent_direction(self) -> list[GaussianRational]:
        """Coefficient vector at the curve's order (the tangent of a single branch)."""
        k = curve_order(self)
        return [s[int(k.value)] if k.value < s.truncation else GaussianRational(0)
                for s in self.local_components]

    def evaluate(self, t) -> list[GaussianRational]:
        return [s.evaluate(t) for s in self.components]

    def reparametrize(self, k: int) -> CurveGerm:
        """The curve t -> phi(t^k)."""
        return CurveGerm(tuple(s.reparametrize(k) for s in self.components), self.base_point, self.polynomial)

    def exact_components(self, truncation: int) -> tuple[UniSeries, ...]:
        if not self.polynomial:
            raise InvalidGermError("exact recomposition needs polynomial components")
        return tuple(s.with_truncation(truncation) for s in self.local_components)

    def to_json(self) -> dict:
        from .report import series_json

        return {
            "components": [series_json(s) for s in self.components],
            "base_point": [str(x) for x in self.base_point],
            "polynomial": self.polynomial,
        }


def curve_order(phi: CurveGerm) -> ExtendedRational:
    """ord_0 phi = min_j ord_0 phi_j."""
    best = min(series_order(s) for s in phi.local_components)
    if not best.is_finite:
        raise InvalidGermError("constant germ: no component has a nonzero coefficient")
    return best


def _exact_bound(degree: int, phi: CurveGerm) -> int:
    return max(degree, 1) * max(phi.max_degree, 1) + 1


def pullback_order(p: PolyC, phi: CurveGerm) -> ExtendedRational:
    """ord_0 of p o phi for p already written at the curve's base point.

    A vanishing truncated pullback along a polynomial curve is recomputed
    without truncation and becomes either a Finite order or Infinite.
    """
    if p.nvars != phi.nvars:
        raise ArityError(f"arity mismatch: polynomial in {p.nvars} variables, curve in {phi.nvars}")
    o = series_order(compose(p, phi.local_components))
    if o.is_at_least and phi.polynomial:
        B = _exact_bound(p.degree, phi)
        if B > phi.truncation:
            o = series_order(compose(p, phi.exact_components(B)))
        if o.is_at_least:
            return ExtendedRational.infinite()
    return o


def ideal_contact(phi: CurveGerm, I: IdealPresentation) -> ExtendedRational:
    """inf over g in I of ord phi*g / ord phi, attained on the generators."""
    if phi.nvars != I.nvars:
        raise ArityError(f"arity mismatch: curve in {phi.nvars} variables, ideal in {I.nvars}")
    if phi.base_point != I.base_point:
        raise ValueError("curve and ideal live at different base points")
    num = min(pullback_order(g, phi) for g in I.local_generators)
    return num / curve_order(phi)


@dataclass(frozen=True)
class HypersurfaceGerm:
    """A real hypersurface r = Re(h) + sum |f_j|^2 - sum |g_j|^2 near base_point."""

    h: PolyC
    f: tuple[PolyC, ...] = ()
    g: tuple[PolyC, ...] = ()
    base_point: tuple[GaussianRational, ...] | None = None

    def __post_init__(self):
        n = self.h.nvars
        f, g = tuple(self.f), tuple(self.g)
        for p in (*f, *g):
            if p.nvars != n:
                raise ArityError("all polynomials of a hypersurface must share nvars")
        point = _origin(n) if self.base_point is None else self.base_point
        point = tuple(GaussianRational.coerce(x) for x in point)
        if len(point) != n:
            raise ArityError("base point has wrong dimension")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "base_point", point)
        for p in (self.h, *f, *g):
            if p.evaluate(point):
                raise InvalidGermError(f"{p} does not vanish at the base point")

    @property
    def nvars(self) -> int:
        return self.h.nvars

    @property
    def local(self) -> tuple[PolyC, tuple[PolyC, ...], tuple[PolyC, ...]]:
        pt = self.base_point
        return (
            self.h.translate(pt),
            tuple(p.translate(pt) for p in self.f),
            tuple(p.translate(pt) for p in self.g),
        )

    @property
    def degree(self) -> int:
        return max(p.degree for p in (self.h, *self.f, *self.g))

    def restrict(self, matrix) -> HypersurfaceGerm:
        """Pull the (local) decomposition back along a linear map x -> M x."""
        from .algebra.poly import substitute_linear

        h, f, g = self.local
        return HypersurfaceGerm(
            substitute_linear(h, matrix),
            tuple(substitute_linear(p, matrix) for p in f),
            tuple(substitute_linear(p, matrix) for p in g),
        )


def hypersurface_pullback(phi: CurveGerm, H: HypersurfaceGerm, exact: bool = True) -> HermitianSeries:
    """phi* r in (t, conj t); recomputed without truncation for polynomial curves when it vanishes."""
    if phi.nvars != H.nvars:
        raise ArityError(f"arity mismatch: curve in {phi.nvars} variables, hypersurface in {H.nvars}")
    if phi.base_point != H.base_point:
        raise ValueError("curve and hypersurface live at different base points")
    h, f, g = H.local
    s = hermitian_pullback(h, f, g, phi.local_components)
    if s.is_zero() and exact and phi.polynomial:
        B = 2 * _exact_bound(H.degree, phi)
        if B > phi.truncation:
            s = hermitian_pullback(h, f, g, phi.exact_components(B))
    return s


def _hermitian_contact_order(phi: CurveGerm, H: HypersurfaceGerm) -> tuple[ExtendedRational, HermitianSeries]:
    s = hypersurface_pullback(phi, H)
    o = hermitian_order(s)
    if o.is_at_least and phi.polynomial:
        o = ExtendedRational.infinite()
    return o, s


def hypersurface_contact(phi: CurveGerm, H: HypersurfaceGerm) -> ExtendedRational:
    """ord_0 phi* r / ord_0 phi."""
    o, _ = _hermitian_contact_order(phi, H)
    return o / curve_order(phi)


@dataclass(frozen=True)
class LinearSlice:
    """A non-degenerate tuple of linear forms w_1, ..., w_{q-1} in local coordinates."""

    forms: tuple[PolyC, ...]

    def __post_init__(self):
        forms = tuple(self.forms)
        if not forms:
            raise ValueError("a slice needs at least one form")
        n = forms[0].nvars
        for w in forms:
            if w.nvars != n:
                raise ArityError("slice forms must share nvars")
            if not w.is_linear_form():
                raise ValueError(f"{w} is not a linear form")
        object.__setattr__(self, "forms", forms)
        if rank(self.matrix) < len(forms):
            raise ValueError("degenerate slice: linear forms are dependent")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> LinearSlice:
        return cls(tuple(PolyC.linear_form(list(r)) for r in rows))

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @property
    def count(self) -> int:
        return len(self.forms)

    @property
    def matrix(self) -> list[list[GaussianRational]]:
        return [w.linear_coefficients() for w in self.forms]

    def to_json(self) -> list[str]:
        return [str(w) for w in self.forms]


@dataclass(frozen=True)
class QPositivityReport:
    applicable: bool
    order: ExtendedRational | None
    half_order: int | None
    condition_i: bool | None
    condition_ii: bool | None
    verdict: bool | None

    @property
    def indeterminate(self) -> bool:
        return self.verdict is None

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "order": self.order.to_json() if self.order is not None else None,
            "half_order": self.half_order,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "verdict": self.verdict,
            "indeterminate": self.indeterminate,
        }


def _vanishes_along(p: PolyC, phi: CurveGerm) -> bool:
    return not pullback_order(p, phi).is_finite


def q_positivity(phi: CurveGerm, H: HypersurfaceGerm, S: LinearSlice) -> QPositivityReport:
    """Check the two q-positivity conditions along one curve.

    The conditions only bind curves with phi*h = 0 lying in the zero locus of
    the slice; other curves give a vacuous ``verdict=True``.  A vanishing
    (or unresolvable) pullback phi*r yields ``verdict=None``.
    """
    if not (phi.nvars == H.nvars == S.nvars):
        raise ArityError("curve, hypersurface and slice must share nvars")
    h_local = H.local[0]
    applicable = _vanishes_along(h_local, phi) and all(_vanishes_along(w, phi) for w in S.forms)
    if not applicable:
        return QPositivityReport(False, None, None, None, None, True)
    order, series = _hermitian_contact_order(phi, H)
    if not order.is_finite:
        return QPositivityReport(True, order, None, None, None, None)
    k = int(order.value)
    if k % 2:
        return QPositivityReport(True, order, None, False, False, False)
    a = k // 2
    mixed = bool(series.coefficient(a, a))
    return QPositivityReport(True, order, a, True, mixed, mixed)
