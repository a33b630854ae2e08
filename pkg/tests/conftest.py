from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from qmtoeplitz.algebra import AlgebraElement, ComplexRational, Monomial

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def exponents(max_den=12, max_value=3):
    return st.integers(1, max_den).flatmap(
        lambda d: st.integers(0, max_value * d).map(lambda k: Fraction(k, d))
    )


small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
coefficients = st.builds(ComplexRational, small_fractions, small_fractions).filter(bool)
monomials = st.builds(Monomial, exponents(), exponents())
elements = st.lists(st.tuples(monomials, coefficients), max_size=5).map(AlgebraElement)
lambdas = st.builds(Fraction, st.integers(1, 6), st.integers(1, 6))


# acceptance criteria register their outcome here; printed at the end of the run
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    def record(number, title, passed, detail=""):
        ACCEPTANCE_RESULTS[number] = (title, passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {number}. {title}" + (f" -- {detail}" if detail else ""))
