import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from qtypes.algebra import GaussianRational, PolyC, UniSeries  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one pass/fail summary line for the acceptance suite."""
    return _ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def z(n, j):
    return PolyC.variable(n, j)


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gaussians = st.builds(GaussianRational, small_rationals, small_rationals)
nonzero_gaussians = gaussians.filter(bool)
real_gaussians = st.builds(GaussianRational, small_rationals)


@st.composite
def polys(draw, n=2, max_deg=3, max_terms=4, constant=False, coeffs=gaussians):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(e) == 0 and not constant:
            continue
        terms[e] = draw(coeffs)
    return PolyC(n, terms)


@st.composite
def series(draw, B=12, max_len=5, vanishing=True):
    coeffs = [draw(gaussians) for _ in range(draw(st.integers(0, max_len)))]
    if vanishing and coeffs:
        coeffs[0] = GaussianRational(0)
    return UniSeries(coeffs, B)


def frac(x):
    return Fraction(x)
