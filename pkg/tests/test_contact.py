import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, z
from oracles import T, hermitian_order_oracle, pullback_order_oracle
from qtypes.algebra import INFINITY, ExtendedRational, PolyC, UniSeries
from qtypes.contact import (
    CurveGerm,
    HypersurfaceGerm,
    LinearSlice,
    curve_order,
    hypersurface_contact,
    ideal_contact,
    pullback_order,
    q_positivity,
)
from qtypes.errors import ArityError, InvalidGermError
from qtypes.local import IdealPresentation

Fin = ExtendedRational.finite
mcurve = CurveGerm.monomial


def ideal(n, *gens):
    return IdealPresentation(n, tuple(gens))


# --- curve_order / ideal_contact --------------------------------------------------


def test_curve_order_examples():
    assert curve_order(mcurve([2, 3])) == Fin(2)
    assert curve_order(mcurve([1, None])) == Fin(1)
    with pytest.raises(InvalidGermError):
        mcurve([None, None])


def test_curve_must_pass_through_base_point():
    with pytest.raises(InvalidGermError):
        CurveGerm.from_polynomials([[1, 1], [0, 1]])
    phi = CurveGerm.from_polynomials([[1, 1], [0, 1]], base_point=(1, 0))
    assert curve_order(phi) == Fin(1)


def test_ideal_contact_examples():
    x, y = z(2, 0), z(2, 1)
    assert ideal_contact(mcurve([3, 2]), ideal(2, x**2, y**3)) == Fin(3)
    assert ideal_contact(mcurve([2, 3]), ideal(2, y**2 - x**3)) is INFINITY
    assert ideal_contact(mcurve([2, 3]), ideal(2, x)) == Fin(1)
    with pytest.raises(ArityError):
        ideal_contact(mcurve([1, 1, 1]), ideal(2, x))


def test_non_polynomial_zero_pullback_stays_a_bound():
    # a truncated series: vanishing cannot be confirmed exactly
    phi = CurveGerm((UniSeries([0, 0, 1], 8), UniSeries([0, 0, 0, 1], 8)))
    v = ideal_contact(phi, ideal(2, z(2, 1) ** 2 - z(2, 0) ** 3))
    assert v == ExtendedRational.at_least(8) / Fin(2)


curve_coeffs = st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=4), min_size=2, max_size=2)


def _curve(coeffs):
    lists = [[0] + c for c in coeffs]
    if all(not any(c) for c in coeffs):
        lists[0][1] = 1
    return CurveGerm.from_polynomials(lists)


@given(polys(n=2, max_deg=3), curve_coeffs)
def test_pullback_order_matches_sympy(p, coeffs):
    phi = _curve(coeffs)
    comps = [sum(c * T**k for k, c in enumerate(lst)) for lst in [[0] + c for c in coeffs]]
    if all(not any(c) for c in coeffs):
        comps[0] = T
    expected = pullback_order_oracle(p, comps)
    got = pullback_order(p, phi)
    if expected is None:
        assert got is INFINITY
    else:
        assert got == Fin(expected)


@given(polys(n=2, max_deg=3), polys(n=2, max_deg=3), curve_coeffs, st.integers(2, 4))
def test_ideal_contact_reparametrization_invariant(g1, g2, coeffs, k):
    gens = [g for g in (g1, g2) if not g.is_zero()] or [z(2, 0)]
    I = ideal(2, *gens)
    phi = _curve(coeffs)
    assert ideal_contact(phi.reparametrize(k), I) == ideal_contact(phi, I)


@given(polys(n=2, max_deg=3), polys(n=2, max_deg=3), polys(n=2, max_deg=2, constant=True),
       polys(n=2, max_deg=2, constant=True), curve_coeffs)
def test_ideal_contact_is_attained_on_generators(g1, g2, h1, h2, coeffs):
    gens = [g for g in (g1, g2) if not g.is_zero()] or [z(2, 0)]
    I = ideal(2, *gens)
    phi = _curve(coeffs)
    combo = sum((h * g for h, g in zip((h1, h2), gens)), PolyC.zero(2))
    value = ideal_contact(phi, I)
    assert pullback_order(combo, phi) / curve_order(phi) >= value


# --- hypersurface contact -------------------------------------------------------------


def test_hypersurface_contact_examples():
    z1, z2 = z(2, 0), z(2, 1)
    line = mcurve([1, None])
    # Re(2 z1) along (t, 0) is t + tb, of order 1
    assert hypersurface_contact(line, HypersurfaceGerm(z1 * 2, (z2,))) == Fin(1)
    assert hypersurface_contact(line, HypersurfaceGerm(PolyC.zero(2), (z1**2,))) == Fin(4)
    assert hypersurface_contact(line, HypersurfaceGerm(PolyC.zero(2), (z1,), (z1,))) is INFINITY


def test_hypersurface_contact_with_h_along_vanishing_direction():
    # h = 2 z2 vanishes on (t, 0), so |z1|^2 decides: order 2
    z1, z2 = z(2, 0), z(2, 1)
    assert hypersurface_contact(mcurve([1, None]), HypersurfaceGerm(z2 * 2, (z1,))) == Fin(2)


@given(st.lists(polys(n=2, max_deg=3), min_size=1, max_size=2), curve_coeffs)
def test_pure_modulus_contact_is_even(f, coeffs):
    phi = _curve(coeffs)
    v = hypersurface_contact(phi, HypersurfaceGerm(PolyC.zero(2), tuple(f)))
    if v.is_finite:
        assert (v.value * curve_order(phi).value) % 2 == 0
    else:
        assert v is INFINITY


@given(polys(n=2, max_deg=2), st.lists(polys(n=2, max_deg=2), max_size=2),
       st.lists(polys(n=2, max_deg=2), max_size=1), curve_coeffs)
def test_hermitian_order_matches_sympy(h, f, g, coeffs):
    phi = _curve(coeffs)
    comps = [sum(c * T**k for k, c in enumerate([0] + lst)) for lst in coeffs]
    if all(not any(c) for c in coeffs):
        comps[0] = T
    expected = hermitian_order_oracle(h, f, g, [sp.sympify(c) for c in comps])
    got = hypersurface_contact(phi, HypersurfaceGerm(h, tuple(f), tuple(g)))
    if expected is None:
        assert got is INFINITY
    else:
        assert got == Fin(expected) / curve_order(phi)


# --- q-positivity ------------------------------------------------------------------


def test_q_positivity_examples():
    z1, z2, z3 = (z(3, j) for j in range(3))
    phi = mcurve([1, None, None])
    S = LinearSlice((z2,))
    r = q_positivity(phi, HypersurfaceGerm(z3 * 2, (z1, z2)), S)
    assert r.applicable and r.order == Fin(2) and r.half_order == 1
    assert r.condition_i and r.condition_ii and r.verdict is True

    r = q_positivity(phi, HypersurfaceGerm(z3 * 2, (z1,), (z1,)), S)
    assert r.applicable and r.indeterminate and r.verdict is None

    r = q_positivity(phi, HypersurfaceGerm(z1, (), ()), S)
    assert not r.applicable and r.verdict is True


def test_q_positivity_odd_order_fails():
    # along (t, 0, 0): |t + t^2|^2 - |t|^2 = t^2 tb + t tb^2 + ..., order 3
    z1, z2, z3 = (z(3, j) for j in range(3))
    H = HypersurfaceGerm(z3 * 2, (z1 + z1**2,), (z1,))
    r = q_positivity(mcurve([1, None, None]), H, LinearSlice((z2,)))
    assert r.applicable and r.order == Fin(3)
    assert r.condition_i is False and r.verdict is False


def test_q_positivity_mixed_coefficient():
    z1, z2, z3 = (z(3, j) for j in range(3))
    H = HypersurfaceGerm(z3 * 2, (z1 * z2, z1**2), ())
    r = q_positivity(mcurve([1, None, None]), H, LinearSlice((z2,)))
    assert r.applicable and r.order == Fin(4) and r.half_order == 2 and r.verdict is True


def psh_model(n):
    zs = [z(n, j) for j in range(n)]
    return HypersurfaceGerm(zs[-1] * 2, tuple(zs[:-1]), ())


@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data())
def test_psh_model_is_q_positive(n, data):
    exps = data.draw(st.lists(st.one_of(st.none(), st.integers(1, 4)), min_size=n - 1, max_size=n - 1))
    if not any(exps):
        exps[0] = 1
    coeffs = data.draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    phi = mcurve(exps + [None], coeffs)
    # the slice is chosen among coordinates the curve avoids, else the check is vacuous
    zero = [j for j, a in enumerate(exps) if not a]
    forms = (z(n, zero[0]),) if zero else (z(n, n - 1),)
    r = q_positivity(phi, psh_model(n), LinearSlice(forms))
    assert r.verdict is True
