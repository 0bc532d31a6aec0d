from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys, real_gaussians, z
from oracles import colength_oracle, monomial_delta1_oracle, poly_terms
from qtypes.algebra import INFINITY, ExtendedRational, PolyC
from qtypes.contact import CurveGerm, ideal_contact
from qtypes.corpus import load
from qtypes.dangelo import (
    delta1_bounds,
    delta1_monomial,
    deltaq_sampled_inf,
    restrict_to_slice,
    slice_frame,
    tilde_deltaq,
)
from qtypes.errors import NotMonomialError
from qtypes.local import IdealPresentation
from qtypes.sampling import SliceSampler

Fin = ExtendedRational.finite


def ideal(n, *gens):
    return IdealPresentation(n, tuple(gens))


def mono(n, *exps, coeffs=None):
    coeffs = coeffs or [1] * len(exps)
    return ideal(n, *(PolyC.monomial(n, e, c) for e, c in zip(exps, coeffs)))


def exponents(curve):
    return tuple(int(s.order().value) if not s.is_zero() else 0 for s in curve.local_components)


# --- delta1_monomial --------------------------------------------------------------


def test_delta1_monomial_examples():
    r = delta1_monomial(mono(2, (2, 0), (0, 3)), 6)
    assert r.value == Fin(3) and r.exact
    assert exponents(r.witness) == (3, 2)

    assert delta1_monomial(mono(2, (1, 0), (0, 1)), 6).value == Fin(1)

    r = delta1_monomial(mono(2, (1, 1), (3, 0), (0, 3)), 6)
    assert r.value == Fin(3) and r.exact
    assert exponents(r.witness) == (1, 2)


def test_delta1_monomial_witness_realizes_value():
    I = mono(3, (2, 0, 0), (0, 3, 0), (0, 0, 4), (1, 1, 1))
    r = delta1_monomial(I, 6)
    assert ideal_contact(r.witness, I) == r.value == Fin(4)


def test_delta1_monomial_errors():
    with pytest.raises(NotMonomialError):
        delta1_monomial(ideal(2, z(2, 0) + z(2, 1) ** 2), 6)
    with pytest.raises(ValueError):
        delta1_monomial(mono(2, (5, 0), (0, 1)), 4)


def test_delta1_monomial_without_pure_power_is_infinite():
    r = delta1_monomial(mono(2, (1, 1), (2, 0)), 4)
    assert r.value is INFINITY and r.exact


monomial_sets = st.integers(2, 3).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(*[st.integers(0, 3)] * n).filter(any), min_size=1, max_size=4, unique=True),
    )
)


@given(monomial_sets)
def test_delta1_monomial_matches_oracle(data):
    n, exps = data
    budget = max(sum(e) for e in exps)
    got = delta1_monomial(mono(n, *exps), budget).value
    expected = monomial_delta1_oracle(exps, n, budget)
    assert got == (INFINITY if expected is None else Fin(expected))


@given(monomial_sets, st.randoms(use_true_random=False), st.lists(st.integers(1, 5), min_size=4, max_size=4))
def test_delta1_monomial_permutation_and_scaling(data, rnd, scales):
    n, exps = data
    budget = max(sum(e) for e in exps)
    base = delta1_monomial(mono(n, *exps), budget)
    perm = list(range(n))
    rnd.shuffle(perm)
    permuted = [tuple(e[perm[i]] for i in range(n)) for e in exps]
    r = delta1_monomial(mono(n, *permuted, coeffs=scales[: len(exps)]), budget)
    assert r.value == base.value
    if r.value.is_finite:
        # the permuted witness realizes the value on the original ideal
        a = exponents(r.witness)
        back = [0] * n
        for i in range(n):
            back[perm[i]] = a[i]
        assert ideal_contact(CurveGerm.monomial(back), mono(n, *exps)) == base.value


@settings(max_examples=30)
@given(
    monomial_sets,
    st.lists(st.integers(1, 3), min_size=3, max_size=3),
    st.lists(st.integers(-2, 2).filter(bool), min_size=3, max_size=3),
    st.integers(1, 3),
)
def test_two_term_curves_never_beat_monomial_optimum(data, a, c, extra):
    n, exps = data
    budget = max(sum(e) for e in exps)
    I = mono(n, *exps)
    best = delta1_monomial(I, budget).value
    lists = [[0] * a[j] + [1] + [0] * (extra - 1) + [c[j]] for j in range(n)]
    assert ideal_contact(CurveGerm.from_polynomials(lists), I) <= best


# --- delta1_bounds --------------------------------------------------------------------


def test_delta1_bounds_examples():
    x, y = z(2, 0), z(2, 1)
    r = delta1_bounds(ideal(2, x**2 + y**3, y**2), 6)
    assert r.lower == Fin(2) and r.multiplicity == Fin(4)
    assert r.multiplicity == Fin(colength_oracle([poly_terms(x**2 + y**3), poly_terms(y**2)], 2))
    # x^2 lies in the ideal, so the pure-power certificate closes the gap below D
    assert r.upper == Fin(2) and r.exact
    assert ideal_contact(r.witness, ideal(2, x**2 + y**3, y**2)) == Fin(2)

    r = delta1_bounds(mono(2, (1, 0), (0, 1)), 6)
    assert r.lower == r.upper == Fin(1) and r.exact

    r = delta1_bounds(mono(3, (2, 0, 0), (0, 3, 0), (0, 0, 1)), 6)
    assert r.lower == Fin(3) and r.multiplicity == Fin(6) and r.linear_forms == 1
    assert r.chain_holds(3)


def test_delta1_bounds_infinite_colength():
    x, y = z(2, 0), z(2, 1)
    r = delta1_bounds(ideal(2, x * y), 4)
    assert r.lower is INFINITY and r.upper is INFINITY and r.exact
    assert r.multiplicity is INFINITY


def test_delta1_bounds_sees_tangent_cone_direction():
    # (x - y)^3 and y^5 + ...: the line x = y has contact 3, and that form is found
    x, y = z(2, 0), z(2, 1)
    I = ideal(2, (x - y) ** 3, y**4 + x**5)
    r = delta1_bounds(I, 6)
    assert r.lower == Fin(4)
    assert ideal_contact(r.witness, I) == r.lower


# rational coefficients keep the Fraction-based colength oracle fast
zero_dim = st.tuples(polys(n=2, max_deg=3, max_terms=3, coeffs=real_gaussians), st.integers(2, 4), st.integers(2, 4))


@settings(max_examples=25)
@given(zero_dim)
def test_delta1_bounds_sound_on_random_ideals(data):
    p, a, b = data
    x, y = z(2, 0), z(2, 1)
    gens = [x**a + p * y, y**b]
    I = ideal(2, *gens)
    r = delta1_bounds(I, 4)
    assert r.lower <= r.upper <= r.multiplicity
    assert ideal_contact(r.witness, I) == r.lower
    assert r.multiplicity == Fin(colength_oracle([poly_terms(g) for g in gens], 2))
    assert r.root_bound_holds(2)
    if r.exact:
        assert r.chain_holds(2)


# --- slicing ---------------------------------------------------------------------------


def test_slice_frame_kernel():
    W = [[1, 2, 3]]
    P, Z = slice_frame([[Fraction(x) for x in W[0]]], 3)
    for j in range(2):
        assert sum(W[0][i] * P[i][j] for i in range(3)) == 0
    assert sum(W[0][i] * Z[i][0] for i in range(3)) == 1


def test_restrict_to_slice():
    z1, z2, z3 = (z(3, j) for j in range(3))
    r = restrict_to_slice(ideal(3, z1**2, z2**2, z3**2), [[1, 1, 1]], 6)
    assert len(r.restricted) == 3 and all(g.nvars == 2 for g in r.restricted)
    assert r.delta1.value == Fin(2) and r.delta1.exact


S20 = SliceSampler(seed=1, samples=20)


def test_tilde_deltaq_examples():
    z1, z2, z3 = (z(3, j) for j in range(3))
    r = tilde_deltaq(ideal(3, z1**2, z2**2, z3**2), 2, S20)
    assert r.value == Fin(2) and r.frequency == 1 and r.exact
    assert r.samples_used == 20 and r.statistic == "mode"
    assert tilde_deltaq(ideal(3, z1, z2, z3), 2, S20).value == Fin(1)
    assert tilde_deltaq(mono(2, (2, 0), (0, 3)), 2, S20).value == Fin(2)


def test_deltaq_sampled_inf_examples():
    z1, z2, z3 = (z(3, j) for j in range(3))
    r = deltaq_sampled_inf(ideal(3, z1**2, z2**2, z3**2), 2, S20)
    assert r.value == Fin(2) and r.statistic == "min"
    assert r.value == tilde_deltaq(ideal(3, z1**2, z2**2, z3**2), 2, S20).value
    assert deltaq_sampled_inf(ideal(3, z1, z2, z3), 2, S20).value == Fin(1)
    assert deltaq_sampled_inf(mono(2, (2, 0), (0, 3)), 2, S20).value == Fin(2)


def test_q_range_is_checked():
    with pytest.raises(ValueError):
        tilde_deltaq(mono(2, (2, 0), (0, 3)), 3, S20)
    with pytest.raises(ValueError):
        tilde_deltaq(mono(2, (2, 0), (0, 3)), 1, S20)


@pytest.mark.parametrize("inst", load("monomial-small"), ids=lambda i: i.name)
def test_tilde_deltaq_seed_independent(inst):
    for q in range(2, inst.nvars + 1):
        a = tilde_deltaq(inst.ideal, q, SliceSampler(seed=11, samples=15))
        b = tilde_deltaq(inst.ideal, q, SliceSampler(seed=12, samples=15))
        assert a.value == b.value


@pytest.mark.parametrize("inst", load("monomial-small"), ids=lambda i: i.name)
def test_sampled_qtype_chain(inst):
    n = inst.nvars
    for q in range(2, n + 1):
        t = tilde_deltaq(inst.ideal, q, S20)
        d = deltaq_sampled_inf(inst.ideal, q, S20)
        assert t.exact and d.exact
        if d.value.is_infinite:
            assert t.value.is_infinite
            continue
        assert d.value <= t.value
        assert t.value.value <= d.value.value ** (n - q + 1)


def test_parallel_matches_serial():
    z1, z2, z3 = (z(3, j) for j in range(3))
    I = ideal(3, z1**2 + z2**3, z3**3, z1 * z2 * z3)
    s = SliceSampler(seed=5, samples=6)
    assert tilde_deltaq(I, 2, s, workers=2) == tilde_deltaq(I, 2, s, workers=1)
