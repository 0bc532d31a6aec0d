"""Cylinder varieties, their linear slices, and the Catlin q-type estimators.

A cylinder is psi(t, u) = Gamma(t) + U u for a curve Gamma and an n x (q-1)
directrix U.  Cutting it by q-1 linear forms w leaves a single curve: with
A_ij = w_i(U_j), solving w(psi(t, u)) = 0 gives u(t) = -A^-1 (w o Gamma)(t),
so the slice meets the cylinder in exactly one branch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Sequence

from .algebra.linalg import determinant, in_column_span, inverse, matmul, rank
from .algebra.poly import PolyC
from .algebra.scalars import ONE, ZERO, ExtendedRational, GaussianRational
from .algebra.series import UniSeries, compose
from .contact import (
    CurveGerm,
    HypersurfaceGerm,
    LinearSlice,
    curve_order,
    hypersurface_contact,
    pullback_order,
)
from .dangelo import (
    _candidate_forms,
    _coordinate_systems,
    _curve_from_coeffs,
    _monomial_curve_coeffs,
    slice_frame,
    slice_samples,
)
from .errors import ArityError, CylinderHypothesisError, DegenerateSamplingError, DegenerateSliceError, InvalidGermError
from .local import IdealPresentation
from .sampling import GenericValueReport, SliceSampler, integer_rows, summarize

__all__ = [
    "CylinderVariety",
    "IntersectionCurve",
    "TauReport",
    "build_cylinder",
    "slice_cylinder",
    "tau_slice",
    "tau_generic",
    "catlin_q_estimate",
    "tau_slice_hypersurface",
    "tau_generic_hypersurface",
    "catlin_q_hypersurface",
]

INNER_SAMPLES = 8


def _matrix(U) -> tuple[tuple[GaussianRational, ...], ...]:
    return tuple(tuple(GaussianRational.coerce(x) for x in row) for row in U)


@dataclass(frozen=True)
class CylinderVariety:
    """The cylinder over ``curve`` with directrix columns ``directrix`` (n x (q-1))."""

    curve: CurveGerm
    directrix: tuple[tuple[GaussianRational, ...], ...]
    q: int

    def __post_init__(self):
        U = _matrix(self.directrix)
        object.__setattr__(self, "directrix", U)
        n = self.curve.nvars
        if len(U) != n or any(len(row) != self.q - 1 for row in U):
            raise ArityError(f"directrix must be {n} x {self.q - 1}")
        if not self.curve.polynomial:
            raise InvalidGermError("cylinder curves need polynomial components")
        if rank(U) < self.q - 1:
            raise ValueError("directrix columns are dependent")
        if in_column_span(U, self.curve.tangent_direction()):
            raise CylinderHypothesisError("tangent direction of the curve lies in the directrix span")

    @property
    def nvars(self) -> int:
        return self.curve.nvars

    def parametrization(self) -> tuple[PolyC, ...]:
        """psi_i(t, u_1..u_{q-1}) as polynomials in q variables (t first)."""
        q = self.q
        out = []
        for comp, row in zip(self.curve.components, self.directrix):
            terms = {}
            for k, c in enumerate(comp.stored):
                if c:
                    terms[(k,) + (0,) * (q - 1)] = c
            for j, c in enumerate(row):
                if c:
                    e = tuple(1 if i == j + 1 else 0 for i in range(q))
                    terms[e] = terms.get(e, ZERO) + c
            out.append(PolyC(q, terms))
        return tuple(out)

    def postconditions(self) -> dict[str, bool]:
        """psi(t, 0) = Gamma(t), span(U) inside the tangent space, and that space has dimension q."""
        psi = self.parametrization()
        restricted = []
        for p in psi:
            restricted.append({e[0]: c for e, c in p.items() if not any(e[1:])})
        contains_curve = all(
            all(r.get(k, ZERO) == c for k, c in enumerate(comp.stored)) and len(r) == sum(1 for c in comp.stored if c)
            for r, comp in zip(restricted, self.curve.components)
        )
        tangent = [list(v) for v in zip(*self.directrix)] + [self.curve.tangent_direction()]
        T = [list(col) for col in zip(*tangent)]  # n x q
        span_ok = all(in_column_span(T, [row[j] for row in self.directrix]) for j in range(self.q - 1))
        return {
            "contains_curve": contains_curve,
            "tangent_contains_directrix": span_ok,
            "tangent_rank_q": rank(T) == self.q,
        }

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "curve": self.curve.to_json(),
            "directrix": [[str(x) for x in row] for row in self.directrix],
            "parametrization": [str(p) for p in self.parametrization()],
        }


def build_cylinder(curve: CurveGerm, U: Sequence[Sequence], q: int) -> CylinderVariety:
    if not 2 <= q <= curve.nvars - 1:
        raise ValueError(f"need 2 <= q <= {curve.nvars - 1}, got q={q}")
    return CylinderVariety(curve, _matrix(U), q)


@dataclass(frozen=True)
class IntersectionCurve:
    delta: CurveGerm
    slice: LinearSlice
    parameters_solution: tuple[UniSeries, ...]

    def to_json(self) -> dict:
        from .report import series_json

        return {
            "delta": self.delta.to_json(),
            "slice": self.slice.to_json(),
            "parameters_solution": [series_json(s) for s in self.parameters_solution],
        }


def slice_matrix(C: CylinderVariety, S: LinearSlice):
    """A_ij = w_i applied to the j-th directrix column."""
    return matmul(S.matrix, C.directrix)


def slice_cylinder(C: CylinderVariety, S: LinearSlice) -> IntersectionCurve:
    if S.nvars != C.nvars:
        raise ArityError("slice and cylinder live in different dimensions")
    if S.count != C.q - 1:
        raise ArityError(f"need {C.q - 1} slice forms, got {S.count}")
    A = slice_matrix(C, S)
    if not determinant(A):
        raise DegenerateSliceError("slice degenerate for this cylinder: a form combination annihilates the directrix")
    Ainv = inverse(A)
    local = C.curve.local_components
    wG = [compose(w, local) for w in S.forms]
    u = []
    for j in range(C.q - 1):
        acc = UniSeries.zero(C.curve.truncation)
        for i in range(C.q - 1):
            if Ainv[j][i]:
                acc = acc + wG[i].scale(-Ainv[j][i])
        u.append(acc)
    comps = []
    for comp, row in zip(C.curve.components, C.directrix):
        acc = comp
        for j, c in enumerate(row):
            if c:
                acc = acc + u[j].scale(c)
        comps.append(acc)
    delta = CurveGerm(tuple(comps), C.curve.base_point, polynomial=True)
    return IntersectionCurve(delta, S, tuple(u))


@dataclass(frozen=True)
class TauReport:
    per_generator: tuple[tuple[PolyC, ExtendedRational], ...]
    tau_ideal: ExtendedRational
    slice: LinearSlice

    def to_json(self) -> dict:
        return {
            "per_generator": [{"generator": str(g), "value": v.to_json()} for g, v in self.per_generator],
            "tau_ideal": self.tau_ideal.to_json(),
            "slice": self.slice.to_json(),
        }


def tau_slice(I: IdealPresentation, C: CylinderVariety, S: LinearSlice) -> TauReport:
    if I.nvars != C.nvars:
        raise ArityError("ideal and cylinder live in different dimensions")
    if I.base_point != C.curve.base_point:
        raise ValueError("ideal and cylinder live at different base points")
    delta = slice_cylinder(C, S).delta
    k = curve_order(delta)
    per = tuple((g, pullback_order(lg, delta) / k) for g, lg in zip(I.generators, I.local_generators))
    return TauReport(per, min(v for _, v in per), S)


def draw_slices(C: CylinderVariety, sampler: SliceSampler):
    """Slices for every sample index; draws with singular A are rejected and counted."""

    def accept(M):
        return bool(determinant(matmul(integer_rows(M), C.directrix)))

    rejected = 0
    slices = []
    for k in range(sampler.samples):
        try:
            M, r = sampler.draw(k, C.nvars, rows=C.q - 1, accept=accept, stream="slice")
        except DegenerateSamplingError:
            rejected += sampler.max_attempts
            continue
        rejected += r
        slices.append(LinearSlice.from_matrix(integer_rows(M)))
    if not slices:
        raise DegenerateSamplingError("every sampled slice is degenerate for this cylinder")
    return slices, rejected


def tau_generic(I: IdealPresentation, C: CylinderVariety, sampler: SliceSampler) -> GenericValueReport:
    """Modal tau over sampled slices; degenerate slices count as rejections."""
    slices, rejected = draw_slices(C, sampler)
    values = [tau_slice(I, C, S).tau_ideal for S in slices]
    return summarize(values, rejected=rejected, seed=sampler.seed)


def tau_slice_hypersurface(H: HypersurfaceGerm, C: CylinderVariety, S: LinearSlice) -> ExtendedRational:
    if H.base_point != C.curve.base_point:
        raise ValueError("hypersurface and cylinder live at different base points")
    return hypersurface_contact(slice_cylinder(C, S).delta, H)


def tau_generic_hypersurface(H: HypersurfaceGerm, C: CylinderVariety, sampler: SliceSampler) -> GenericValueReport:
    slices, rejected = draw_slices(C, sampler)
    values = [tau_slice_hypersurface(H, C, S) for S in slices]
    notes = ("some slices only gave a truncation bound",) if any(v.is_at_least for v in values) else ()
    return summarize(values, rejected=rejected, seed=sampler.seed, notes=notes)


# --- Catlin estimators -----------------------------------------------------------------


def _embed(curve: CurveGerm, P, base_point) -> CurveGerm:
    """The curve x(t) in slice coordinates, pushed into the ambient space as P x(t) + x0."""
    comps = []
    for row, x0 in zip(P, base_point):
        acc = UniSeries([x0], curve.truncation)
        for c, s in zip(row, curve.local_components):
            if c:
                acc = acc + s.scale(c)
        comps.append(acc)
    return CurveGerm(tuple(comps), base_point, polynomial=True)


def _directrices(P, Z, n: int, q: int):
    """The complement from the coordinate change first, then transversal coordinate axes."""
    yield Z
    for cols in itertools.combinations(range(n), q - 1):
        U = tuple(tuple(ONE if i == j else ZERO for j in cols) for i in range(n))
        if rank([list(p) + list(u) for p, u in zip(P, U)]) == n:
            yield U


def _best_tau(witnesses, P, Z, base_point, q, cap, tau_of):
    """sup over (witness, directrix) pairs of the generic tau; stops once ``cap`` is reached."""
    best = None
    tried = 0
    n = len(P)
    for w in witnesses:
        gamma = _embed(w, P, base_point)
        for U in _directrices(P, Z, n, q):
            try:
                C = CylinderVariety(gamma, U, q)
            except CylinderHypothesisError:
                continue
            try:
                report = tau_of(C)
            except DegenerateSamplingError:
                continue
            tried += 1
            if best is None or report.value > best.value:
                best = report
            if best.value >= cap:
                return best, tried
    return best, tried


def catlin_q_estimate(
    I: IdealPresentation,
    q: int,
    sampler: SliceSampler,
    budget: int = 8,
    inner_samples: int = INNER_SAMPLES,
    workers: int = 1,
) -> GenericValueReport:
    """Cylinder lower estimate of D_q: sup over samples of the generic tau of
    cylinders over extremal curves of the sliced ideal."""
    n = I.nvars
    if not 2 <= q <= n - 1:
        raise ValueError(f"need 2 <= q <= {n - 1}, got q={q}")
    samples = slice_samples(I, q, sampler, budget, workers)
    values = []
    uncertified = 0
    low = 0
    for s in samples:
        child = sampler.child(s.index, inner_samples, "cylinder")
        best, _ = _best_tau(
            s.delta1.witnesses, s.embedding, s.complement, I.base_point, q, s.delta1.upper,
            lambda C: tau_generic(I, C, child),
        )
        if best is None:
            continue
        values.append(best.value)
        uncertified += not s.delta1.exact
        low += best.low_confidence
    if not values:
        raise DegenerateSamplingError("no sample produced a usable cylinder")
    notes = []
    if uncertified:
        notes.append(f"{uncertified} samples used uncertified witness curves")
    if low:
        notes.append(f"{low} samples had a low-confidence generic tau")
    report = summarize(
        values, rejected=sum(s.rejected for s in samples), seed=sampler.seed, statistic="max", notes=notes
    )
    return replace(report, exact=uncertified == 0 and low == 0)


# --- hypersurfaces -----------------------------------------------------------------------


def _hypersurface_witnesses(Hs: HypersurfaceGerm, budget: int, extra_forms=(), limit: int = 4):
    """Best monomial curves for the restricted hypersurface, searched in a few
    linear coordinate systems (coordinates, the linear part of h, slice coordinates)."""
    m = Hs.nvars
    h, f, g = Hs.local
    polys = [p for p in (h, *f, *g) if not p.is_zero()]
    forms = _candidate_forms(polys, m, extra_forms)
    systems = _coordinate_systems(forms, m, [])
    best, found = None, []
    for level in range(1, budget + 1):
        for rows in systems:
            Linv = inverse([list(r) for r in rows])
            for a in itertools.product(range(level + 1), repeat=m):
                if max(a) != level:
                    continue
                curve = _curve_from_coeffs(_monomial_curve_coeffs(Linv, a), Hs.base_point)
                v = hypersurface_contact(curve, Hs)
                if best is None or v > best:
                    best, found = v, [curve]
                elif v == best and len(found) < limit:
                    found.append(curve)
    return best, found


def catlin_q_hypersurface(
    H: HypersurfaceGerm,
    q: int,
    sampler: SliceSampler,
    budget: int = 4,
    inner_samples: int = INNER_SAMPLES,
) -> GenericValueReport:
    """Hypersurface analogue of catlin_q_estimate using Hermitian pullback orders."""
    n = H.nvars
    if not 2 <= q <= n - 1:
        raise ValueError(f"need 2 <= q <= {n - 1}, got q={q}")
    values = []
    rejected = 0
    indeterminate = 0
    for k in range(sampler.samples):
        M, r = sampler.draw(k, n, rows=q - 1)
        rejected += r
        P, Z = slice_frame(integer_rows(M), n)
        top, witnesses = _hypersurface_witnesses(H.restrict(P), budget, [r for r in P if any(r)])
        child = sampler.child(k, inner_samples, "cylinder")
        best, _ = _best_tau(
            witnesses, P, Z, H.base_point, q, top,
            lambda C: tau_generic_hypersurface(H, C, child),
        )
        if best is None:
            continue
        indeterminate += best.value.is_at_least
        values.append(best.value)
    if not values:
        raise DegenerateSamplingError("no sample produced a usable cylinder")
    notes = (f"{indeterminate} samples gave only truncation bounds",) if indeterminate else ()
    report = summarize(values, rejected=rejected, seed=sampler.seed, statistic="max", notes=notes)
    return replace(report, exact=not indeterminate)
