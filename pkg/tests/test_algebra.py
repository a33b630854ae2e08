import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import coefficients, elements, exponents, lambdas, monomials
from qmtoeplitz.algebra import (
    AlgebraElement,
    ComplexRational,
    Monomial,
    T,
    V,
    Vstar,
    adjoint,
    mul,
    mul_monomial,
    rescale,
    unit,
    zero,
)
from qmtoeplitz.sampling import random_element


def apply_word(word, h):
    """Act on the basis vector e_h of l^2(Q+) by a word of ('V', g) / ('V*', g) letters, right to left.

    Returns the index of the image basis vector, or None for the zero vector.
    """
    for kind, g in reversed(word):
        if kind == "V":
            h = h + g
        elif h >= g:
            h = h - g
        else:
            return None
    return h


GRID = [Fraction(k, 12) for k in range(0, 73)]


class TestMonomialProduct:
    def test_isometry_relation(self):
        assert mul_monomial(Monomial(0, 1), Monomial(1, 0)) == Monomial(0, 0)

    def test_range_projection(self):
        assert mul_monomial(Monomial(1, 0), Monomial(0, 1)) == Monomial(1, 1)

    def test_fractional_example(self):
        x = Monomial(Fraction(1, 2), Fraction(1, 3))
        y = Monomial(Fraction(2, 3), Fraction(1, 4))
        assert mul_monomial(x, y) == Monomial(Fraction(5, 6), Fraction(1, 4))

    def test_fractional_example_on_basis_vectors(self):
        word = [("V", Fraction(1, 2)), ("V*", Fraction(1, 3)), ("V", Fraction(2, 3)), ("V*", Fraction(1, 4))]
        result = Monomial(Fraction(5, 6), Fraction(1, 4))
        for h in GRID:
            assert apply_word(word, h) == apply_word([("V", result.p), ("V*", result.q)], h)

    @given(monomials, monomials)
    def test_matches_operator_action(self, x, y):
        word = [("V", x.p), ("V*", x.q), ("V", y.p), ("V*", y.q)]
        z = mul_monomial(x, y)
        for h in GRID[::5]:
            assert apply_word(word, h) == apply_word([("V", z.p), ("V*", z.q)], h)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Monomial(-1, 0)


class TestElementArithmetic:
    def test_unit_laws(self):
        rng = random.Random(0)
        for _ in range(50):
            x = random_element(rng)
            assert unit() * x == x == x * unit()

    def test_projection_idempotent(self):
        p = 1 - T() * Vstar(1)
        assert p * p == p
        assert str(p) == "1 - V(1)V*(1)"

    def test_zero_coefficients_dropped(self):
        x = V(1) - V(1)
        assert x == zero() and len(x) == 0 and str(x) == "0"

    def test_terms_sorted(self):
        x = V(2) + Vstar(Fraction(1, 2)) + 3 + V(Fraction(1, 3)) * Vstar(1)
        keys = [(m.p, m.q) for m in x.monomials()]
        assert keys == sorted(keys)

    def test_power(self):
        assert T() ** 3 == T(3)
        assert (V(Fraction(1, 6))) ** 2 == V(Fraction(1, 3))
        assert T() ** 0 == unit()
        with pytest.raises(ValueError):
            T() ** -1

    def test_scalars(self):
        i = ComplexRational(0, 1)
        x = i * V(1)
        assert adjoint(x) == -i * Vstar(1)
        assert (x * 2).coefficient(Monomial(1, 0)) == ComplexRational(0, 2)
        assert T() + 1 == 1 + T()

    def test_printing(self):
        x = AlgebraElement([(Monomial(0, 0), ComplexRational(Fraction(-1, 2), 0)),
                            (Monomial(1, 0), ComplexRational(1, 2)),
                            (Monomial(0, 2), ComplexRational(0, -1))])
        assert str(x) == "-1/2 - i*V*(2) + (1+2i)*V(1)"

    @given(elements, elements, elements)
    def test_associative(self, x, y, z):
        assert mul(mul(x, y), z) == mul(x, mul(y, z))

    @given(elements, elements, elements)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z


class TestAdjoint:
    def test_generator(self):
        assert adjoint(V(Fraction(1, 2))) == Vstar(Fraction(1, 2))

    @given(elements)
    def test_involution(self, x):
        assert adjoint(adjoint(x)) == x

    @given(elements, elements)
    def test_anti_multiplicative(self, x, y):
        assert adjoint(x * y) == adjoint(y) * adjoint(x)

    @given(elements, elements, coefficients)
    def test_conjugate_linear(self, x, y, c):
        assert adjoint(c * x + y) == c.conjugate() * adjoint(x) + adjoint(y)

    @given(exponents())
    def test_isometry(self, g):
        assert adjoint(V(g)) * V(g) == unit()


class TestRescale:
    def test_coburn_power(self):
        assert rescale(T(), 3) == T(3)

    def test_identity(self):
        x = V(Fraction(1, 2)) + 2 * Vstar(3)
        assert rescale(x, 1) == x

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            rescale(T(), 0)
        with pytest.raises(ValueError):
            rescale(T(), Fraction(-1, 2))

    @given(elements, elements, lambdas)
    def test_multiplicative(self, x, y, lam):
        assert rescale(x * y, lam) == rescale(x, lam) * rescale(y, lam)

    @given(elements, lambdas, lambdas)
    def test_composition(self, x, lam, mu):
        assert rescale(rescale(x, lam), mu) == rescale(x, lam * mu)

    @given(elements, lambdas)
    def test_star_homomorphism(self, x, lam):
        assert rescale(adjoint(x), lam) == adjoint(rescale(x, lam))
        assert rescale(unit(), lam) == unit()

    @given(elements, elements, lambdas)
    def test_injective(self, x, y, lam):
        assert (rescale(x, lam) == rescale(y, lam)) == (x == y)

    def test_products_stay_monomials(self):
        rng = random.Random(5)
        for _ in range(200):
            x, y = random_element(rng, max_terms=1), random_element(rng, max_terms=1)
            assert len(x * y) == 1
