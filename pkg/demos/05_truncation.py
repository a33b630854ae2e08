"""
Finite matrices as a sanity check
=================================

On the grid {k/D : 0 <= k <= L} the V_g become shift matrices.  Products
agree with the exact algebra away from the edge of the grid, and the
largest singular value gives a lower bound for the operator norm, which
lets us watch rescaling preserve norms.
"""

import sys

from qmtoeplitz import TruncationGrid, T, Vstar, interior_product_check, isometry_certificate, ladder_to_csv, matrix_of

print(matrix_of(T(), TruncationGrid(1, 3)).real)

grid = TruncationGrid(1, 20)
print("interior:", interior_product_check(Vstar(1), T(), grid))
print("whole grid:", interior_product_check(Vstar(1), T(), grid, interior=False))

x = T() + Vstar(1)
for lam in (2, 3):
    cert = isometry_certificate(x, lam, D=2)
    print(f"lambda={lam}: gap {cert.gap:.4f}, passed {cert.passed}")
ladder_to_csv(cert.rescaled_ladder, sys.stdout)
