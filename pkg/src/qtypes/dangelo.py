"""D'Angelo 1-type with certificates, and the sampled q-types.

Lower bounds come from explicit curves; upper bounds come from
certificates: the colength D, or a pure-power certificate built from
linear forms l_1..l_n with l_i^k_i in I (any curve has some l_i of
contact exactly ord(phi), so its normalized contact is at most max k_i).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .algebra.linalg import complete_to_basis, inverse, rank
from .algebra.poly import PolyC, substitute_linear
from .algebra.scalars import ONE, ZERO, ExtendedRational, GaussianRational
from .contact import CurveGerm, LinearSlice, ideal_contact
from .errors import DegenerateSamplingError, NotMonomialError
from .local import IdealPresentation, multiplicity, normal_form, standard_basis
from .sampling import GenericValueReport, SliceSampler, integer_rows, map_samples, summarize

__all__ = [
    "Delta1Report",
    "SliceRestriction",
    "delta1_monomial",
    "delta1_bounds",
    "restrict_to_slice",
    "slice_frame",
    "slice_samples",
    "tilde_deltaq",
    "deltaq_sampled_inf",
]

INF = ExtendedRational.infinite()
MAX_WITNESSES = 4
MAX_SYSTEMS = 8


@dataclass(frozen=True)
class Delta1Report:
    """Bounds lower <= Delta_1 <= upper, with a witness curve for the lower bound."""

    lower: ExtendedRational
    upper: ExtendedRational
    exact: bool
    witness: CurveGerm | None
    upper_provenance: str
    multiplicity: ExtendedRational
    linear_forms: int = 0
    witnesses: tuple[CurveGerm, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.upper < self.lower:
            raise AssertionError(f"lower {self.lower} exceeds upper {self.upper}")
        if self.exact and self.lower != self.upper:
            raise AssertionError("exact report with a gap")

    @property
    def value(self) -> ExtendedRational:
        return self.lower

    def chain_holds(self, nvars: int) -> bool | None:
        """Delta_1 <= D <= Delta_1^(n-k) for the certified value; None if not certified."""
        if not self.exact:
            return None
        d, D = self.lower, self.multiplicity
        if d.is_infinite or D.is_infinite:
            return d.is_infinite == D.is_infinite
        return d.value <= D.value <= d.value ** (nvars - self.linear_forms)

    def root_bound_holds(self, nvars: int) -> bool:
        """D^(1/(n-k)) <= upper, checked exactly as D <= upper^(n-k)."""
        if self.upper.is_infinite or self.multiplicity.is_infinite:
            return True
        return self.multiplicity.value <= self.upper.value ** (nvars - self.linear_forms)

    def to_json(self) -> dict:
        return {
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
            "exact": self.exact,
            "upper_provenance": self.upper_provenance,
            "multiplicity": self.multiplicity.to_json(),
            "linear_forms": self.linear_forms,
            "witness": self.witness.to_json() if self.witness else None,
        }


# --- curve values --------------------------------------------------------------


def _monomial_curve_value(gens_terms, a) -> ExtendedRational:
    """Normalized contact of (t^a_1, ..., t^a_n) (a_j = 0: zero component)."""
    num = None
    for terms in gens_terms:
        acc: dict[int, GaussianRational] = {}
        for e, c in terms:
            if any(x and not y for x, y in zip(e, a)):
                continue
            d = sum(x * y for x, y in zip(e, a))
            acc[d] = acc[d] + c if d in acc else c
        o = min((d for d, c in acc.items() if c), default=None)
        if o is not None and (num is None or o < num):
            num = o
    if num is None:
        return INF
    return ExtendedRational.finite(num) / min(x for x in a if x)


def _exponent_vectors(n: int, level: int):
    """Vectors in {0..level}^n with max entry = level and gcd 1 on the support."""
    for a in itertools.product(range(level + 1), repeat=n):
        if max(a) != level:
            continue
        if math.gcd(*a) != 1:
            continue
        yield a


@dataclass
class _Candidate:
    value: ExtendedRational
    key: tuple
    coeffs: list  # per-variable coefficient lists in the target coordinates


def _curve_from_coeffs(coeffs, base_point) -> CurveGerm:
    lists = []
    for c, x0 in zip(coeffs, base_point):
        c = list(c) if c else [ZERO]
        c[0] = c[0] + x0
        lists.append(c)
    return CurveGerm.from_polynomials(lists, base_point=base_point)


def _poly_coeffs(comp: dict[int, GaussianRational], deg: int) -> list:
    return [comp.get(k, ZERO) for k in range(deg + 1)]


def _monomial_curve_coeffs(Linv, a, extra=None):
    """x(t) = Linv y(t) with y_j = t^a_j (+ extra perturbation), as coefficient lists."""
    n = len(a)
    y = [{a[j]: ONE} if a[j] else {} for j in range(n)]
    if extra is not None:
        j, b, c = extra
        y[j] = dict(y[j])
        y[j][b] = y[j].get(b, ZERO) + c
    deg = max((max(d) for d in y if d), default=0)
    out = []
    for i in range(n):
        comp: dict[int, GaussianRational] = {}
        for j in range(n):
            if Linv[i][j]:
                for k, c in y[j].items():
                    comp[k] = comp.get(k, ZERO) + Linv[i][j] * c
        out.append(_poly_coeffs(comp, deg))
    return out


# --- candidate linear forms ----------------------------------------------------


def _normalize_form(v):
    """Scale a coefficient vector so its first nonzero entry is 1 (for deduplication)."""
    lead = next(x for x in v if x)
    inv = lead.inverse()
    return tuple(x * inv for x in v)


def _linear_root(p: PolyC):
    """l with lowest homogeneous part of p equal to c * l^d, or None."""
    d = p.order
    if not d:
        return None
    h = p.homogeneous_part(d)
    n = p.nvars
    for j in range(n):
        e = tuple(d if k == j else 0 for k in range(n))
        cj = h.coefficient(e)
        if not cj:
            continue
        v = []
        for k in range(n):
            if k == j:
                v.append(ONE)
                continue
            e2 = tuple((d - 1 if m == j else 0) + (1 if m == k else 0) for m in range(n))
            v.append(h.coefficient(e2) / (cj * d))
        l = PolyC.linear_form(v)
        if (l**d).scale(cj) == h:
            return tuple(v)
        return None
    return None


def _candidate_forms(gens: Sequence[PolyC], n: int, extra: Sequence[Sequence] = ()) -> list[tuple]:
    seen: dict[tuple, None] = {}
    pool = [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    pool += [tuple(GaussianRational.coerce(x) for x in v) for v in extra]
    for g in gens:
        r = _linear_root(g)
        if r is not None:
            pool.append(r)
    for v in pool:
        if any(v):
            seen.setdefault(_normalize_form(v), None)
    return list(seen)


def _pure_power_exponent(form, sb, corner) -> int | None:
    n = len(form)
    l = PolyC.linear_form(list(form))
    p = PolyC.constant(n, 1)
    for k in range(1, corner + 1):
        p = p * l
        if normal_form(p, sb).is_zero():
            return k
    return None


def _pure_power_certificate(forms, sb, n):
    """Greedy bottleneck basis: minimizes max k(l) over independent n-subsets."""
    if sb.corner is None:
        return None, []
    scored = []
    for v in forms:
        k = _pure_power_exponent(v, sb, sb.corner)
        if k is not None:
            scored.append((k, v))
    scored.sort(key=lambda kv: kv[0])
    chosen: list[tuple] = []
    worst = 0
    for k, v in scored:
        if rank([list(c) for c in chosen] + [list(v)]) > len(chosen):
            chosen.append(v)
            worst = max(worst, k)
            if len(chosen) == n:
                return worst, chosen
    return None, chosen


def _coordinate_systems(forms, n, preferred):
    systems = []
    seen = set()

    def push(rows):
        key = tuple(rows)
        if key in seen or rank([list(r) for r in rows]) < n:
            return
        seen.add(key)
        systems.append(rows)

    identity = [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    push(identity)
    if len(preferred) == n:
        push(list(preferred))
    for combo in itertools.combinations(forms, n):
        if len(systems) >= MAX_SYSTEMS:
            break
        push(list(combo))
    return systems


# --- the search ------------------------------------------------------------------


def _search(gens, n, budget, upper, forms, preferred, perturb=True) -> list[_Candidate]:
    best: list[_Candidate] = []

    def offer(value, key, coeffs):
        best.append(_Candidate(value, key, coeffs))

    systems = _coordinate_systems(forms, n, preferred)
    transformed = []
    for rows in systems:
        Linv = inverse([list(r) for r in rows])
        tg = [list(substitute_linear(g, Linv).items()) for g in gens]
        transformed.append((Linv, tg))

    top = ExtendedRational.finite(0)
    for level in range(1, budget + 1):
        for si, (Linv, tg) in enumerate(transformed):
            for a in _exponent_vectors(n, level):
                v = _monomial_curve_value(tg, a)
                if v < top:
                    continue
                top = max(top, v)
                offer(v, (min(x for x in a if x), 0 if all(a) else 1, si, a), (Linv, a, None))
        if top >= upper:
            break

    if perturb and top < upper:
        seeds = sorted((c for c in best if c.value == top), key=lambda c: c.key)[:3]
        for cand in seeds:
            Linv, a, _ = cand.coeffs
            for j in range(n):
                for b in range(a[j] + 1, budget + 1):
                    for c in (ONE, -ONE, GaussianRational(2)):
                        coeffs = _monomial_curve_coeffs(Linv, a, (j, b, c))
                        curve = CurveGerm.from_polynomials(coeffs)
                        v = ideal_contact(curve, IdealPresentation(n, tuple(gens)))
                        if v >= top:
                            top = max(top, v)
                            offer(v, (int(_curve_order_of(coeffs)), 2, j, a, b), (Linv, a, (j, b, c)))
                if top >= upper:
                    break

    winners = [c for c in best if c.value == top]
    winners.sort(key=lambda c: c.key)
    return winners


def _vkey(v: ExtendedRational):
    return (1, 0) if v.is_infinite else (0, v.value)


def _curve_order_of(coeffs) -> int:
    return min(k for c in coeffs for k, x in enumerate(c) if x)



def _materialize(cand: _Candidate, base_point) -> CurveGerm:
    Linv, a, extra = cand.coeffs
    return _curve_from_coeffs(_monomial_curve_coeffs(Linv, a, extra), base_point)


# --- public operations ----------------------------------------------------------


def delta1_monomial(I: IdealPresentation, budget: int) -> Delta1Report:
    """Brute-force Delta_1 over monomial curves for a monomial ideal.

    Exact by the pure-power argument: a monomial ideal containing z_j^k_j
    for each j has Delta_1 <= max k_j, and the axis curve of the variable
    attaining that maximum realizes it; a variable with no pure power
    gives an axis curve inside the zero set.
    """
    gens = I.local_generators
    if not all(g.is_monomial() for g in gens):
        raise NotMonomialError("delta1_monomial needs monomial generators")
    n = I.nvars
    exps = [next(iter(g.terms)) for g in gens]
    maxdeg = max(sum(e) for e in exps)
    if budget < maxdeg:
        raise ValueError(f"budget {budget} is below the largest generator degree {maxdeg}")

    best = None
    for a in itertools.product(range(budget + 1), repeat=n):
        if not any(a):
            continue
        orders = [
            sum(x * y for x, y in zip(e, a)) if all(y or not x for x, y in zip(e, a)) else None
            for e in exps
        ]
        finite = [o for o in orders if o is not None]
        if finite:
            m = min(finite)
            value = ExtendedRational.finite(m) / min(x for x in a if x)
            attaining = sum(1 for o in finite if o == m)
        else:
            value, attaining = INF, len(exps)
        key = (_vkey(value), 1 if all(a) else 0, attaining, tuple(-x for x in a))
        if best is None or key > best[0]:
            best = (key, value, a)
    _, value, a = best

    upper, provenance = _monomial_certificate(exps, n)
    witness = CurveGerm.monomial(a)
    if I.base_point != witness.base_point:
        witness = _curve_from_coeffs([[ZERO] * x + [ONE] if x else [] for x in a], I.base_point)
    return Delta1Report(
        lower=value,
        upper=upper,
        exact=value == upper,
        witness=witness,
        upper_provenance=provenance,
        multiplicity=multiplicity(I),
        linear_forms=_linear_rank(gens, n),
        witnesses=(witness,),
    )


def _monomial_certificate(exps, n):
    powers = []
    for j in range(n):
        ks = [e[j] for e in exps if all(x == 0 for i, x in enumerate(e) if i != j)]
        if not ks:
            return INF, f"no pure power of variable {j + 1}: its axis lies in the zero set"
        powers.append(min(ks))
    return ExtendedRational.finite(max(powers)), "pure powers of the coordinates"


def _linear_rank(gens, n) -> int:
    rows = [g.linear_coefficients() for g in gens if g.is_linear_form()]
    return rank(rows) if rows else 0


def delta1_bounds(
    I: IdealPresentation,
    budget: int,
    extra_forms: Sequence[Sequence] = (),
    perturb: bool = True,
) -> Delta1Report:
    """Certified bounds on Delta_1(I) for an arbitrary polynomial ideal.

    The lower bound is the best curve found among monomial curves in a few
    linear coordinate systems and their two-term perturbations; the upper
    bound is the best of D and the pure-power certificate.
    """
    n = I.nvars
    gens = tuple(g for g in I.local_generators if not g.is_zero())
    if not gens:
        line = _curve_from_coeffs([[ZERO, ONE]] + [[]] * (n - 1), I.base_point)
        return Delta1Report(INF, INF, True, line, "zero ideal", INF, 0, (line,))
    local = IdealPresentation(n, gens)
    D = multiplicity(local)
    k = _linear_rank(gens, n)
    forms = _candidate_forms(gens, n, extra_forms)

    upper, provenance, preferred = D, "colength D", []
    if D.is_finite:
        sb = standard_basis(local)
        pp, preferred = _pure_power_certificate(forms, sb, n)
        if pp is not None and ExtendedRational.finite(pp) < upper:
            upper, provenance = ExtendedRational.finite(pp), "pure powers of independent linear forms"
    else:
        provenance = "colength is infinite"

    winners = _search(gens, n, budget, upper, forms, preferred, perturb)
    witnesses = tuple(_materialize(c, I.base_point) for c in winners[:MAX_WITNESSES])
    lower = winners[0].value if winners else ExtendedRational.finite(1)
    if lower.is_infinite and not upper.is_infinite:
        raise AssertionError("curve inside the zero set of a zero-dimensional ideal")
    if lower.is_infinite:
        upper = INF
    return Delta1Report(
        lower=lower,
        upper=upper,
        exact=lower == upper,
        witness=witnesses[0] if witnesses else None,
        upper_provenance=provenance,
        multiplicity=D,
        linear_forms=k,
        witnesses=witnesses,
    )


# --- slicing ------------------------------------------------------------------


@dataclass(frozen=True)
class SliceRestriction:
    """An ideal restricted to the zero set H of sampled forms w_1..w_{q-1}.

    ``embedding`` is the n x m matrix P with H = {P x}; ``complement`` is an
    n x (q-1) matrix whose columns span a complement of H.
    """

    index: int
    slice: LinearSlice
    embedding: tuple[tuple[GaussianRational, ...], ...]
    complement: tuple[tuple[GaussianRational, ...], ...]
    restricted: tuple[PolyC, ...]
    delta1: Delta1Report
    rejected: int = 0


def slice_frame(W, n: int):
    """(P, Z) for forms W: H = {w = 0} is the image of P, and Z's columns complete it.

    The forms become the trailing rows of an invertible M whose leading rows
    are unit vectors; P and Z are the leading and trailing columns of M^-1.
    """
    units = complete_to_basis(W, n)
    M = [[ONE if i == j else ZERO for i in range(n)] for j in units] + [list(w) for w in W]
    Minv = inverse(M)
    m = n - len(W)
    return tuple(tuple(row[:m]) for row in Minv), tuple(tuple(row[m:]) for row in Minv)


def restrict_to_slice(I: IdealPresentation, forms: Sequence[Sequence], budget: int, index: int = 0, rejected: int = 0):
    """Move the forms to the trailing coordinates, set them to zero and compute Delta_1 there."""
    W = [[GaussianRational.coerce(x) for x in row] for row in forms]
    P, Z = slice_frame(W, I.nvars)
    m = len(P[0])
    restricted = tuple(substitute_linear(g, P) for g in I.local_generators)
    kept = tuple(g for g in restricted if not g.is_zero())
    # restricted ambient coordinates are natural candidates for witness coordinates
    extra = [row for row in P if any(row)]
    if kept:
        report = delta1_bounds(IdealPresentation(m, kept), budget, extra)
    else:
        report = delta1_bounds(IdealPresentation(m, (PolyC.zero(m),)), budget)
    return SliceRestriction(index, LinearSlice.from_matrix(W), P, Z, kept, report, rejected)


def _slice_sample(args):
    I, q, sampler, budget, index = args
    M, rejected = sampler.draw(index, I.nvars, rows=q - 1)
    return restrict_to_slice(I, integer_rows(M), budget, index, rejected)


@lru_cache(maxsize=256)
def _slice_samples_cached(I, q, sampler, budget):
    return tuple(_slice_sample((I, q, sampler, budget, k)) for k in range(sampler.samples))


def slice_samples(I: IdealPresentation, q: int, sampler: SliceSampler, budget: int, workers: int = 1):
    """Per-sample restrictions, deterministic by sample index."""
    if not 2 <= q <= I.nvars:
        raise ValueError(f"need 2 <= q <= {I.nvars}, got q={q}")
    if sampler.q != q:
        sampler = SliceSampler(sampler.seed, sampler.samples, sampler.coefficient_range, q, sampler.max_attempts)
    try:
        if workers > 1:
            items = [(I, q, sampler, budget, k) for k in range(sampler.samples)]
            return tuple(map_samples(_slice_sample, items, workers))
        return _slice_samples_cached(I, q, sampler, budget)
    except DegenerateSamplingError as exc:
        raise DegenerateSamplingError(f"all draws degenerate: {exc}") from exc


def tilde_deltaq(
    I: IdealPresentation, q: int, sampler: SliceSampler, budget: int = 8, workers: int = 1
) -> GenericValueReport:
    """Generic value of Delta_1((I, w_1..w_{q-1})) over sampled forms (the mode)."""
    samples = slice_samples(I, q, sampler, budget, workers)
    values = [s.delta1.lower for s in samples]
    report = summarize(values, rejected=sum(s.rejected for s in samples), seed=sampler.seed)
    modal_exact = all(s.delta1.exact for s in samples if s.delta1.lower == report.modal_value)
    uncertified = sum(1 for s in samples if not s.delta1.exact)
    notes = []
    if uncertified:
        notes.append(f"{uncertified} of {len(samples)} per-sample values are lower bounds only")
    return _with(report, exact=modal_exact, notes=tuple(notes))


def deltaq_sampled_inf(
    I: IdealPresentation, q: int, sampler: SliceSampler, budget: int = 8, workers: int = 1
) -> GenericValueReport:
    """Least per-sample value: an upper estimate of the infimum over all forms.

    Uncertified samples contribute their upper bound, which keeps the
    minimum a valid upper bound for Delta_q.
    """
    samples = slice_samples(I, q, sampler, budget, workers)
    values = [s.delta1.upper for s in samples]
    report = summarize(values, rejected=sum(s.rejected for s in samples), seed=sampler.seed, statistic="min")
    return _with(report, exact=all(s.delta1.exact for s in samples))


def _with(report: GenericValueReport, **changes) -> GenericValueReport:
    from dataclasses import replace

    return replace(report, **changes)
