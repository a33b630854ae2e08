"""Exact arithmetic in the dense *-subalgebra spanned by the words V_p V_q*.

For a cone inside Q+ the isometries ``V_g e_h = e_{g+h}`` satisfy
``V_q* V_c = V_{c-q}`` when ``c >= q`` and ``V*_{q-c}`` otherwise, so every
word collapses to a single monomial ``V_p V_q*`` and the product of two
monomials is again a monomial:

    (V_a V_b*)(V_c V_d*) = V_{a+c-b} V_d*     if c >= b
                         = V_a V*_{d+b-c}     otherwise.

Coefficients are complex numbers with exact rational parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .rational import as_rational, cone_element

__all__ = [
    "ComplexRational",
    "Monomial",
    "AlgebraElement",
    "mul_monomial",
    "mul",
    "adjoint",
    "rescale",
    "unit",
    "zero",
    "V",
    "Vstar",
    "T",
]


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ComplexRational:
    """``re + im*i`` with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @classmethod
    def coerce(cls, x) -> "ComplexRational":
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are inexact; use ComplexRational")
        return cls(as_rational(x))

    @classmethod
    def _operand(cls, x):
        if isinstance(x, (ComplexRational, int, Fraction, str)) and not isinstance(x, bool):
            return cls.coerce(x)
        return None

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __add__(self, other):
        o = ComplexRational._operand(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = ComplexRational._operand(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = ComplexRational._operand(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = ComplexRational._operand(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ComplexRational._operand(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by a zero complex rational")
        num = self * o.conjugate()
        return ComplexRational(num.re / d, num.im / d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return _fmt_fraction(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({_fmt_fraction(self.re)}{sign}{_imag_str(abs(self.im))})"

    def __repr__(self):
        return f"ComplexRational({self})"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return _fmt_fraction(im) + "i"


@dataclass(frozen=True, order=True)
class Monomial:
    """The operator ``V_p V_q*`` with ``p, q >= 0``; ``Monomial(0, 0)`` is the unit."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", cone_element(self.p))
        object.__setattr__(self, "q", cone_element(self.q))

    def adjoint(self) -> "Monomial":
        return Monomial(self.q, self.p)

    def scaled(self, lam: Fraction) -> "Monomial":
        return Monomial(self.p * lam, self.q * lam)

    def is_unit(self) -> bool:
        return self.p == 0 and self.q == 0

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return mul_monomial(self, other)
        return NotImplemented

    def __str__(self):
        if self.is_unit():
            return "1"
        parts = []
        if self.p:
            parts.append(f"V({_fmt_fraction(self.p)})")
        if self.q:
            parts.append(f"V*({_fmt_fraction(self.q)})")
        return "".join(parts)


def mul_monomial(x: Monomial, y: Monomial) -> Monomial:
    """Product of two monomials, which is always a single monomial."""
    a, b, c, d = x.p, x.q, y.p, y.q
    if c >= b:
        return Monomial(a + c - b, d)
    return Monomial(a, d + b - c)


Scalar = Union[int, Fraction, ComplexRational]


class AlgebraElement:
    """A finite linear combination of monomials with exact complex coefficients.

    Instances are immutable.  Terms are kept sorted by ``(p, q)`` and zero
    coefficients are never stored, so ``==`` is equality of canonical forms.
    Arithmetic operators (``+ - *`` and non-negative integer ``**``) work with
    other elements and with scalars.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Monomial, Scalar], Iterable[Tuple[Monomial, Scalar]]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            if not isinstance(mono, Monomial):
                raise TypeError(f"expected Monomial, got {type(mono).__name__}")
            c = ComplexRational.coerce(coeff)
            acc[mono] = acc[mono] + c if mono in acc else c
        self._terms = tuple(sorted((m, c) for m, c in acc.items() if c))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, p=0, q=0, coeff: Scalar = 1) -> "AlgebraElement":
        return cls([(Monomial(p, q), coeff)])

    @classmethod
    def scalar(cls, c: Scalar) -> "AlgebraElement":
        return cls([(Monomial(), c)])

    @property
    def terms(self) -> Tuple[Tuple[Monomial, ComplexRational], ...]:
        return self._terms

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(m for m, _ in self._terms)

    def coefficient(self, mono: Monomial) -> ComplexRational:
        for m, c in self._terms:
            if m == mono:
                return c
        return ComplexRational()

    def exponents(self) -> Iterator[Fraction]:
        """Every p and q occurring in the element."""
        for m, _ in self._terms:
            yield m.p
            yield m.q

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            other = AlgebraElement.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __neg__(self):
        return AlgebraElement._from_sorted(tuple((m, -c) for m, c in self._terms))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self._terms + other._terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            c = ComplexRational.coerce(other)
            return AlgebraElement((m, k * c) for m, k in self._terms)
        if isinstance(other, Monomial):
            other = AlgebraElement([(other, 1)])
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            c = ComplexRational.coerce(other)
            return AlgebraElement((m, c * k) for m, k in self._terms)
        if isinstance(other, Monomial):
            return mul(AlgebraElement([(other, 1)]), self)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = unit()
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def adjoint(self) -> "AlgebraElement":
        return adjoint(self)

    @property
    def star(self) -> "AlgebraElement":
        return adjoint(self)

    def rescale(self, lam) -> "AlgebraElement":
        return rescale(self, lam)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self._terms):
            sign, body = _term_str(m, c)
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"AlgebraElement({self})"


def _term_str(m: Monomial, c: ComplexRational):
    negative = c.im == 0 and c.re < 0 or c.re == 0 and c.im < 0
    mag = -c if negative else c
    sign = "-" if negative else "+"
    if m.is_unit():
        return sign, str(mag)
    if mag == 1:
        return sign, str(m)
    return sign, f"{mag}*{m}"


def _coerce(x):
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, (int, Fraction, ComplexRational)):
        return AlgebraElement.scalar(x)
    if isinstance(x, Monomial):
        return AlgebraElement([(x, 1)])
    return NotImplemented


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of :func:`mul_monomial`."""
    acc: dict = {}
    for mx, cx in x.terms:
        for my, cy in y.terms:
            m = mul_monomial(mx, my)
            c = cx * cy
            acc[m] = acc[m] + c if m in acc else c
    return AlgebraElement._from_sorted(tuple(sorted((m, c) for m, c in acc.items() if c)))


def adjoint(x: AlgebraElement) -> AlgebraElement:
    """``(V_p V_q*)* = V_q V_p*``, coefficients conjugated."""
    return AlgebraElement._from_sorted(tuple(sorted((m.adjoint(), c.conjugate()) for m, c in x.terms)))


def rescale(x: AlgebraElement, lam) -> AlgebraElement:
    """The homomorphism ``V_g -> V_{lam*g}`` (``T -> T^n`` when ``lam = n``).

    Coefficients are left alone.  ``lam`` must be a positive rational.
    """
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError(f"rescaling factor must be positive, got {lam}")
    if lam == 1:
        return x
    # scaling by lam > 0 preserves the (p, q) order, so the terms stay sorted
    return AlgebraElement._from_sorted(tuple((m.scaled(lam), c) for m, c in x.terms))


def unit() -> AlgebraElement:
    return AlgebraElement.monomial(0, 0)


def zero() -> AlgebraElement:
    return AlgebraElement()


def V(g) -> AlgebraElement:
    """The isometry ``V_g``."""
    return AlgebraElement.monomial(g, 0)


def Vstar(g) -> AlgebraElement:
    """The co-isometry ``V_g*``."""
    return AlgebraElement.monomial(0, g)


def T(n: int = 1) -> AlgebraElement:
    """``T^n = V_n`` in the Toeplitz algebra."""
    return V(n)
