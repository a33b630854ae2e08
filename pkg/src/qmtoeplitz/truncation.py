"""Finite matrix models of the V_g on truncations of l^2(Gamma+).

A :class:`TruncationGrid` with denominator ``D`` and length ``L`` keeps the
basis vectors ``e_{k/D}`` for ``0 <= k <= L``.  An exponent ``g`` with
``D*g`` integral becomes a shift by ``D*g`` indices, and the matrix of an
element is its compression ``P x P`` to the grid.  Everything numeric in
the package lives here; the algebra itself is exact.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .algebra import AlgebraElement, mul, rescale
from .errors import UnrepresentableExponent
from .rational import as_rational

__all__ = [
    "TruncationGrid",
    "required_denominator",
    "grid_for",
    "matrix_of",
    "interior_columns",
    "interior_product_check",
    "norm_lower_bound",
    "norm_ladder",
    "is_monotone",
    "IsometryCertificate",
    "isometry_certificate",
    "ladder_to_csv",
]

DENSE_LIMIT = 512
ALGEBRAIC_TOL = 1e-12


@dataclass(frozen=True)
class TruncationGrid:
    D: int = 1
    L: int = 16

    def __post_init__(self):
        if self.D < 1 or self.L < 1:
            raise ValueError(f"need D >= 1 and L >= 1, got D={self.D}, L={self.L}")

    @property
    def size(self) -> int:
        return self.L + 1

    def shift(self, g: Fraction) -> int:
        """Number of indices ``g`` moves by; raises if ``g`` is off the grid."""
        s = as_rational(g) * self.D
        if s.denominator != 1:
            raise UnrepresentableExponent(g, self.D, math.lcm(self.D, g.denominator))
        return int(s)

    def points(self) -> List[Fraction]:
        return [Fraction(k, self.D) for k in range(self.size)]


def required_denominator(*elements: AlgebraElement) -> int:
    """Least ``D`` on which every exponent of every element is a whole shift."""
    return math.lcm(1, *(g.denominator for x in elements for g in x.exponents()))


def grid_for(*elements: AlgebraElement, L: int) -> TruncationGrid:
    return TruncationGrid(required_denominator(*elements), L)


def _entries(x: AlgebraElement, grid: TruncationGrid):
    rows, cols, vals = [], [], []
    n = grid.size
    for m, c in x.terms:
        up, down = grid.shift(m.p), grid.shift(m.q)
        # V_p V_q* e_k = e_{k - down + up} for k >= down, else 0
        k = np.arange(down, n)
        r = k - down + up
        keep = r < n
        rows.append(r[keep])
        cols.append(k[keep])
        vals.append(np.full(int(keep.sum()), complex(c)))
    if not rows:
        return np.empty(0, int), np.empty(0, int), np.empty(0, complex)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def matrix_of(x: AlgebraElement, grid: TruncationGrid, sparse: bool = False):
    """Compression of ``x`` to the grid as an ``(L+1) x (L+1)`` complex matrix.

    Column ``k`` of ``V_g`` is ``e_{k + D*g}`` or zero once that index
    leaves the grid.  Raises :class:`UnrepresentableExponent` if some
    exponent is not a multiple of ``1/D``.
    """
    rows, cols, vals = _entries(x, grid)
    n = grid.size
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(n, n), dtype=complex)
    if sparse:
        return mat.tocsr()
    return mat.toarray()


def _orbit_ok(x: AlgebraElement, grid: TruncationGrid, ks: Iterable[int]) -> Tuple[bool, List[int]]:
    images = []
    for k in ks:
        for m in x.monomials():
            up, down = grid.shift(m.p), grid.shift(m.q)
            if k < down:
                continue
            j = k - down + up
            if j > grid.L:
                return False, []
            images.append(j)
    return True, images


def interior_columns(x: AlgebraElement, y: AlgebraElement, grid: TruncationGrid) -> List[int]:
    """Columns ``k`` for which ``y e_k`` and then ``x y e_k`` never leave the grid."""
    out = []
    for k in range(grid.size):
        ok, after_y = _orbit_ok(y, grid, [k])
        if ok and _orbit_ok(x, grid, after_y)[0]:
            out.append(k)
    return out


def interior_product_check(x: AlgebraElement, y: AlgebraElement, grid: TruncationGrid, interior: bool = True) -> float:
    """Max entry deviation between ``[xy]`` and ``[x][y]``.

    With ``interior=True`` only the columns from :func:`interior_columns` are
    compared, where truncation cannot interfere and the deviation is zero up
    to rounding.  ``interior=False`` compares the whole matrix and exposes the
    boundary artefact.
    """
    exact = matrix_of(mul(x, y), grid)
    product = matrix_of(x, grid) @ matrix_of(y, grid)
    if interior:
        cols = interior_columns(x, y, grid)
        if not cols:
            return 0.0
        exact, product = exact[:, cols], product[:, cols]
    return float(np.max(np.abs(exact - product), initial=0.0))


def _sparse_norm(A) -> float:
    if min(A.shape) < 3:
        return float(np.linalg.norm(A.toarray(), 2))
    return float(spla.svds(A, k=1, return_singular_vectors=False, random_state=0)[0])


def norm_lower_bound(x: AlgebraElement, grid: TruncationGrid) -> float:
    """Largest singular value of the compression, a lower bound for the C*-norm.

    Dense SVD up to ``L = 512``, sparse ARPACK singular value beyond.
    """
    if not x:
        return 0.0
    if grid.L <= DENSE_LIMIT:
        return float(np.linalg.norm(matrix_of(x, grid), 2))
    return _sparse_norm(matrix_of(x, grid, sparse=True))


def norm_ladder(x: AlgebraElement, D: int, lengths: Sequence[int]) -> List[Tuple[int, float]]:
    """``(L, norm_lower_bound)`` for each length in increasing order."""
    return [(L, norm_lower_bound(x, TruncationGrid(D, L))) for L in sorted(lengths)]


def is_monotone(ladder: Sequence[Tuple[int, float]], tol: float = ALGEBRAIC_TOL) -> bool:
    values = [v for _, v in ladder]
    return all(b >= a - tol for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class IsometryCertificate:
    """Norm ladders of ``x`` and of ``rescale(x, lam)`` on the same grids."""

    lam: Fraction
    D: int
    ladder: Tuple[Tuple[int, float], ...]
    rescaled_ladder: Tuple[Tuple[int, float], ...]
    tolerance: float

    @property
    def gap(self) -> float:
        return abs(self.ladder[-1][1] - self.rescaled_ladder[-1][1])

    @property
    def monotone(self) -> bool:
        return is_monotone(self.ladder) and is_monotone(self.rescaled_ladder)

    @property
    def passed(self) -> bool:
        return self.gap <= self.tolerance and self.monotone


def isometry_certificate(
    x: AlgebraElement,
    lam,
    lengths: Sequence[int] = (16, 32, 64, 128),
    D: Optional[int] = None,
    tolerance: float = 0.02,
) -> IsometryCertificate:
    """Numerical evidence that ``rescale(., lam)`` preserves the norm of ``x``.

    Both ladders use the common grid denominator ``D`` (default: the least
    one representing ``x`` and its rescaling).  The certificate passes when
    the two bounds at the largest length agree within ``tolerance`` and both
    ladders are nondecreasing.
    """
    lam = as_rational(lam)
    y = rescale(x, lam)
    need = required_denominator(x, y)
    D = need if D is None else D
    if D % need:
        bad = next(g for g in list(x.exponents()) + list(y.exponents()) if (g * D).denominator != 1)
        raise UnrepresentableExponent(bad, D, math.lcm(D, need))
    return IsometryCertificate(
        lam, D, tuple(norm_ladder(x, D, lengths)), tuple(norm_ladder(y, D, lengths)), tolerance
    )


def ladder_to_csv(ladder: Sequence[Tuple[int, float]], out=None) -> str:
    """Write ``L,bound`` rows (with header) to ``out`` if given; return the CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["L", "bound"])
    for L, v in ladder:
        w.writerow([L, repr(float(v))])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
