"""
Exact words in the isometries V_g
=================================

Every word in V_g and V_g* collapses to a single V_p V_q*, so elements of
the dense subalgebra are finite sums of monomials with exact coefficients.
"""

from fractions import Fraction

from qmtoeplitz import T, V, Vstar, adjoint, evaluate, rescale

# T*T = 1, and 1 - TT* is a projection
p = 1 - T() * Vstar(1)
print(Vstar(1) * T(), "|", p * p)

x = V(Fraction(1, 2)) * Vstar(Fraction(1, 3))
y = V(Fraction(2, 3)) * Vstar(Fraction(1, 4))
print(x * y)

# the parser accepts the same notation the printer emits
z = evaluate("(1 + 2i)*V(1/2) - V*(1/3)")
print(z, "| adjoint:", adjoint(z))

# rescaling every exponent by 3 sends T to T^3
print(rescale(T(), 3), "|", rescale(z, Fraction(1, 2)))
