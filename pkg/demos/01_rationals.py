"""
Denominator sequences and the groups Q_M
========================================

A sequence M = (m1, m2, ...) of naturals determines the subgroup of Q made
of the fractions m / (m1 ... ms).  Membership is decided from the partial
products; an infinite M can only ever say "yes" or "not yet".
"""

from fractions import Fraction

from qmtoeplitz import DenomSequence, ZColimitElement, qm_contains, tau_apply, zcolimit_value

dyadic = DenomSequence((2, 2, 2))
print(dyadic.describe(), qm_contains(dyadic, Fraction(3, 8)))

# 1/5 never shows up in a finite sequence without a factor 5
print(qm_contains(DenomSequence((2, 3)), Fraction(1, 5), 2))

# the periodic sequence (2, 2, ...) gives the dyadic rationals; 1/7 stays unknown
powers_of_two = DenomSequence.periodic((2,))
print(qm_contains(powers_of_two, Fraction(1, 7), depth=10))

# the same group as a colimit of copies of Z along multiplication by m_s
M = DenomSequence((2, 3))
x = ZColimitElement(1, 5)
print(tau_apply(M, x, canonical=False), "->", tau_apply(M, x))
print(zcolimit_value(M, ZColimitElement(3, 1)))
