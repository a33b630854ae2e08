"""Exact rationals, the groups Q_M and their Z-colimit presentation.

Rationals are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  A group Q_M is described by a
:class:`DenomSequence` ``M = (m_1, m_2, ...)``; its elements are the fractions
``m / (m_1 ... m_s)``.  The same group is the colimit of

    Z --tau_1--> Z --tau_2--> Z --> ...,     tau_s(m) = m_s * m,

and :class:`ZColimitElement` is a point of that colimit: a stage ``s`` and an
integer representative.  The value of ``(s, m)`` is ``m / (m_1 ... m_{s-1})``,
so stage 1 holds the plain integers.
"""

from __future__ import annotations

import enum
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .errors import StageOverflow

__all__ = [
    "Fraction",
    "as_rational",
    "cone_element",
    "rational_arith",
    "DenomSequence",
    "Verdict",
    "Membership",
    "qm_contains",
    "ZColimitElement",
    "canonicalize",
    "tau_apply",
    "zcolimit_value",
    "zcolimit_from_rational",
]

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "−": operator.sub,
    "*": operator.mul,
    "×": operator.mul,
    "/": operator.truediv,
    "÷": operator.truediv,
}


def as_rational(x) -> Fraction:
    """Coerce ``x`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings such as ``"3/8"`` or ``"-2"``.  Floats
    are refused since most decimal literals have no exact binary value.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are inexact; pass a Fraction, an int or a string")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def cone_element(x) -> Fraction:
    """Return ``x`` as a rational, checking that it lies in the cone [0, +inf)."""
    q = as_rational(x)
    if q < 0:
        raise ValueError(f"{q} is negative, so it is not in the positive cone")
    return q


def rational_arith(a, b, op: str) -> Fraction:
    """Apply ``op`` (one of ``+ - * /``) to two rationals exactly.

    Raises ZeroDivisionError for division by zero.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    return fn(as_rational(a), as_rational(b))


@dataclass(frozen=True)
class DenomSequence:
    """A finite prefix ``(m_1, ..., m_S)`` of a denominator sequence.

    If ``supplier`` is given the sequence is extensible: ``supplier(s)`` must
    return ``m_s`` (1-based) for any ``s > S``.  Infinite sequences are only
    ever looked at through a finite prefix; see :meth:`extended`.
    """

    terms: tuple = ()
    supplier: Optional[Callable[[int], int]] = field(default=None, compare=False)

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        for t in terms:
            if t < 1:
                raise ValueError(f"denominator terms must be >= 1, got {t}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def periodic(cls, period: Sequence[int], prefix: int = 0) -> "DenomSequence":
        """The infinite sequence repeating ``period``, materialised to ``prefix`` terms."""
        period = tuple(int(t) for t in period)
        if not period:
            raise ValueError("period must be non-empty")
        seq = cls((), supplier=lambda s: period[(s - 1) % len(period)])
        return seq.extended(prefix)

    @property
    def extensible(self) -> bool:
        return self.supplier is not None

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, s):
        return self.terms[s]

    def extended(self, length: int) -> "DenomSequence":
        """Return a copy holding at least ``length`` terms (no-op if already long enough)."""
        if length <= len(self.terms):
            return self
        if self.supplier is None:
            raise StageOverflow(
                f"need {length} denominator terms but the sequence is finite with {len(self.terms)}"
            )
        more = [self.supplier(s) for s in range(len(self.terms) + 1, length + 1)]
        return DenomSequence(self.terms + tuple(more), self.supplier)

    def partial_product(self, s: int) -> int:
        """``m_1 * ... * m_s``; the empty product (s = 0) is 1."""
        if s > len(self.terms):
            raise StageOverflow(f"partial product of length {s} exceeds {len(self.terms)} terms")
        return math.prod(self.terms[:s])

    def generator(self) -> Fraction:
        """Generator ``1/(m_1...m_S)`` of the subgroup generated by the stored prefix."""
        return Fraction(1, math.prod(self.terms))

    def describe(self) -> str:
        """Short human description of the group generated by the stored prefix."""
        if not self.terms:
            return "Z"
        p = math.prod(self.terms)
        base = "Z" if p == 1 else f"(1/{p})Z"
        return base + (" (prefix of an infinite sequence)" if self.extensible else "")


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Membership(NamedTuple):
    verdict: Verdict
    stage: Optional[int] = None

    def __bool__(self):
        return self.verdict is Verdict.YES


def qm_contains(M: DenomSequence, q, depth: Optional[int] = None) -> Membership:
    """Decide whether ``q`` lies in Q_M using at most ``depth`` terms of M.

    Returns ``Membership(YES, s)`` for the least ``s <= depth`` with
    ``denominator(q) | m_1 ... m_s`` (``s = 0`` for integers).  ``NO`` is only
    returned when M is finite and every stored term has been used; otherwise
    an unresolved query is ``UNKNOWN``.
    """
    q = as_rational(q)
    if depth is None:
        if M.extensible:
            raise ValueError("an explicit depth is required for extensible sequences")
        depth = len(M)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > len(M):
        M = M.extended(depth)
    den = q.denominator
    # den | P_s  iff  den / gcd(den, P_s) == 1; reduce den as we go to keep numbers small
    rest = den
    s = 0
    while True:
        if rest == 1:
            return Membership(Verdict.YES, s)
        if s == depth:
            break
        rest //= math.gcd(rest, M.terms[s])
        s += 1
    if not M.extensible and depth >= len(M):
        return Membership(Verdict.NO)
    return Membership(Verdict.UNKNOWN)


@dataclass(frozen=True, order=True)
class ZColimitElement:
    """The class of integer ``rep`` at ``stage`` (1-based) of the Z-colimit."""

    stage: int
    rep: int

    def __post_init__(self):
        if self.stage < 1:
            raise ValueError("stages start at 1")
        object.__setattr__(self, "rep", int(self.rep))


def canonicalize(M: DenomSequence, x: ZColimitElement) -> ZColimitElement:
    """Move ``x`` to the least stage that still carries an integer representative."""
    if x.stage - 1 > len(M):
        raise StageOverflow(f"stage {x.stage} needs {x.stage - 1} terms, have {len(M)}")
    if x.rep == 0:
        return ZColimitElement(1, 0)
    s, m = x.stage, x.rep
    while s > 1 and m % M.terms[s - 2] == 0:
        m //= M.terms[s - 2]
        s -= 1
    return ZColimitElement(s, m)


def tau_apply(M: DenomSequence, x: ZColimitElement, canonical: bool = True) -> ZColimitElement:
    """Push ``x`` one stage forward along ``tau_s(m) = m_s * m``.

    With ``canonical=True`` (the default) the result is re-canonicalized, so a
    canonical input comes back unchanged -- tau is injective and the colimit
    class does not move.
    """
    if x.stage > len(M):
        raise StageOverflow(f"tau_{x.stage} needs m_{x.stage}, but M has {len(M)} terms")
    y = ZColimitElement(x.stage + 1, M.terms[x.stage - 1] * x.rep)
    return canonicalize(M, y) if canonical else y


def zcolimit_value(M: DenomSequence, x: ZColimitElement) -> Fraction:
    """The rational ``rep / (m_1 ... m_{stage-1})``."""
    return Fraction(x.rep, M.partial_product(x.stage - 1))


def zcolimit_from_rational(M: DenomSequence, q, depth: Optional[int] = None) -> ZColimitElement:
    """Canonical colimit element with value ``q``; raises ValueError if ``q`` is not in Q_M."""
    q = as_rational(q)
    verdict, s = qm_contains(M, q, depth)
    if verdict is not Verdict.YES:
        raise ValueError(f"{q} is not in Q_M (verdict: {verdict.value})")
    if depth is not None and depth > len(M):
        M = M.extended(depth)
    x = ZColimitElement(s + 1, q.numerator * (M.partial_product(s) // q.denominator))
    return canonicalize(M, x)
