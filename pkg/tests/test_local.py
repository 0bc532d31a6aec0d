import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import z
from oracles import colength_oracle, poly_terms, staircase_count
from qtypes.algebra import INFINITY, ExtendedRational, PolyC
from qtypes.errors import BudgetExceeded, NotProperError
from qtypes.local import (
    IdealPresentation,
    contains,
    generic_multiplicity,
    is_zero_dimensional,
    multiplicity,
    normal_form,
    standard_basis,
)
from qtypes.sampling import SliceSampler

Fin = ExtendedRational.finite


def ideal(n, *gens, base_point=None):
    return IdealPresentation(n, tuple(gens), base_point)


def mono(n, *exps):
    return ideal(n, *(PolyC.monomial(n, e) for e in exps))


def oracle(I):
    return colength_oracle([poly_terms(g) for g in I.local_generators], I.nvars)


def test_standard_basis_examples():
    sb = standard_basis(ideal(2, z(2, 0), z(2, 1)))
    assert set(sb.basis) == {z(2, 0), z(2, 1)}
    assert sb.staircase() == [(0, 0)]
    sb = standard_basis(mono(2, (2, 0), (1, 1), (0, 2)))
    assert sorted(sb.staircase()) == [(0, 0), (0, 1), (1, 0)]
    sb = standard_basis(ideal(2, z(2, 0) ** 2 + z(2, 1) ** 3, z(2, 1) ** 2))
    assert sorted(sb.staircase()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert sb.order_spec == "local-deglex"


def test_multiplicity_examples():
    assert multiplicity(ideal(2, z(2, 0), z(2, 1))) == Fin(1)
    assert multiplicity(mono(2, (2, 0), (1, 1), (0, 2))) == Fin(3)
    assert multiplicity(ideal(2, z(2, 0))) is INFINITY
    I = mono(2, (2, 0), (0, 3))
    assert multiplicity(I) == Fin(6) == Fin(oracle(I))


def test_zero_dimensional_examples():
    assert is_zero_dimensional(mono(2, (2, 0), (0, 3)))
    assert not is_zero_dimensional(mono(2, (1, 1)))
    I = ideal(2, z(2, 0) + z(2, 1), z(2, 1) ** 2)
    assert is_zero_dimensional(I)
    assert multiplicity(I) == Fin(2)


def test_improper_ideal_rejected():
    with pytest.raises(NotProperError):
        ideal(2, z(2, 0) + 1)
    # z1 - 1 is a unit at the origin but vanishes at (1, 0)
    I = ideal(2, z(2, 0) - 1, z(2, 1) ** 2, base_point=(1, 0))
    assert multiplicity(I) == Fin(2)


def test_base_point_translation():
    I = ideal(2, (z(2, 0) - 2) ** 2, (z(2, 1) + 1) ** 3, base_point=(2, -1))
    assert multiplicity(I) == Fin(6)
    assert contains(I, (z(2, 0) - 2) ** 2 * z(2, 1))


def test_budget_exceeded_is_distinct():
    x, y = z(2, 0), z(2, 1)
    I = ideal(2, x**3 + y**4 + x * y**2, x**2 * y + y**5)
    with pytest.raises(BudgetExceeded):
        standard_basis(I, max_steps=1)
    assert multiplicity(I).is_finite


def test_generators_reduce_to_zero():
    I = ideal(3, z(3, 0) ** 2 + z(3, 1) ** 3, z(3, 1) ** 2 - z(3, 2) ** 3, z(3, 2) ** 4 + z(3, 0) * z(3, 1))
    sb = standard_basis(I)
    for g in I.local_generators:
        assert normal_form(g, sb).is_zero()
    assert multiplicity(I) == Fin(oracle(I))


@st.composite
def monomial_ideals(draw):
    n = draw(st.integers(1, 3))
    exps = [tuple(draw(st.integers(1, 4)) if i == j else 0 for i in range(n)) for j in range(n)]
    for _ in range(draw(st.integers(0, 3))):
        exps.append(tuple(draw(st.integers(0, 3)) for _ in range(n)))
    exps = [e for e in dict.fromkeys(exps) if any(e)]
    return n, exps


@given(monomial_ideals())
def test_monomial_multiplicity_matches_staircase(ne):
    n, exps = ne
    assert multiplicity(mono(n, *exps)) == Fin(staircase_count(exps, n))


@given(monomial_ideals(), st.integers(0, 10**6))
def test_multiplicity_matches_oracle_after_perturbation(ne, salt):
    n, exps = ne
    gens = [PolyC.monomial(n, e) for e in exps]
    # add a higher-degree term to the first generator
    d = gens[0].degree
    e = [0] * n
    e[salt % n] = d + 1
    gens[0] = gens[0] + PolyC.monomial(n, e, 1 + salt % 3)
    I = ideal(n, *gens)
    assert multiplicity(I) == Fin(oracle(I))


@given(monomial_ideals(), st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)))
def test_multiplicity_monotone(ne, extra):
    n, exps = ne
    extra = extra[:n]
    if not any(extra):
        return
    I = mono(n, *exps)
    assert multiplicity(I.with_generators([PolyC.monomial(n, extra)])) <= multiplicity(I)


def test_standard_basis_idempotent():
    I = ideal(2, z(2, 0) ** 2 + z(2, 1) ** 3, z(2, 1) ** 2)
    sb = standard_basis(I)
    again = standard_basis(ideal(2, *sb.basis))
    assert again.leading_exponents == sb.leading_exponents


def test_generic_multiplicity_examples():
    s = SliceSampler(seed=3, samples=30)
    r = generic_multiplicity(mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 2)), 2, s)
    # one form z3 = a z1 + b z2 leaves (z1^2, z2^2, z1 z2): colength 3
    assert r.value == Fin(3) and r.min_equals_mode and r.frequency == 1
    assert generic_multiplicity(mono(3, (1, 0, 0), (0, 1, 0), (0, 0, 1)), 2, s).value == Fin(1)
    assert generic_multiplicity(mono(2, (2, 0), (0, 3)), 2, s).value == Fin(2)


def test_generic_multiplicity_against_oracle():
    I = mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 2))
    w = PolyC.linear_form([3, -7, 5])
    assert oracle(I.with_generators([w])) == 3
    with pytest.raises(ValueError):
        generic_multiplicity(I, 4, SliceSampler())


def test_generic_multiplicity_parallel_matches_serial():
    I = mono(2, (3, 0), (1, 1), (0, 4))
    s = SliceSampler(seed=11, samples=6)
    assert generic_multiplicity(I, 2, s) == generic_multiplicity(I, 2, s, workers=2)
