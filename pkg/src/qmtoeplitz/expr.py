"""Parser for the plain-text algebra expression language.

Grammar (whitespace is ignored between tokens)::

    expr    := term (("+" | "-") term)*
    term    := unary (["*"] unary)*          # juxtaposition also multiplies
    unary   := "-" unary | power
    power   := atom ["^" INT]
    atom    := INT ["/" INT] | "i" | "V(" rat ")" | "V*(" rat ")" | "(" expr ")"
    rat     := INT ["/" INT]

``1`` is the unit, ``i`` the imaginary unit.  Because juxtaposition is a
product, the printed form of an element (``"1 - V(1)V*(1)"``) parses back
to the same element.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Optional

from .algebra import AlgebraElement, ComplexRational
from .errors import ParseError
from .rational import DenomSequence, Verdict, qm_contains

__all__ = ["parse", "evaluate"]


class _Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_SINGLE = {"(": "LP", ")": "RP", "+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET", "/": "SLASH"}
_ATOM_START = {"INT", "I", "V", "VSTAR", "LP"}


def _tokenize(src: str) -> List[_Tok]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(_Tok("INT", src[i:j], i))
            i = j
        elif ch == "V":
            j = i + 1
            while j < n and src[j].isspace():
                j += 1
            if j < n and src[j] == "*":
                toks.append(_Tok("VSTAR", "V*", i))
                i = j + 1
            else:
                toks.append(_Tok("V", "V", i))
                i += 1
        elif ch == "i":
            toks.append(_Tok("I", "i", i))
            i += 1
        elif ch in _SINGLE:
            toks.append(_Tok(_SINGLE[ch], ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("EOF", "", n))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def take(self, kind: str) -> _Tok:
        tok = self.cur
        if tok.kind != kind:
            what = repr(tok.text) if tok.kind != "EOF" else "end of input"
            raise ParseError(f"expected {kind.lower()}, found {what}", tok.pos)
        self.k += 1
        return tok

    def parse(self) -> AlgebraElement:
        if self.cur.kind == "EOF":
            raise ParseError("empty expression", 0)
        value = self.expr()
        if self.cur.kind != "EOF":
            raise ParseError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return value

    def expr(self):
        value = self.term()
        while self.cur.kind in ("PLUS", "MINUS"):
            op = self.take(self.cur.kind).kind
            rhs = self.term()
            value = value + rhs if op == "PLUS" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            if self.cur.kind == "STAR":
                self.k += 1
                value = value * self.unary()
            elif self.cur.kind in _ATOM_START:
                value = value * self.unary()
            else:
                return value

    def unary(self):
        if self.cur.kind == "MINUS":
            self.k += 1
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.cur.kind == "CARET":
            self.k += 1
            n = int(self.take("INT").text)
            return base ** n
        return base

    def rat(self) -> Fraction:
        num = int(self.take("INT").text)
        if self.cur.kind == "SLASH":
            self.k += 1
            tok = self.take("INT")
            den = int(tok.text)
            if den == 0:
                raise ParseError("zero denominator", tok.pos)
            return Fraction(num, den)
        return Fraction(num)

    def atom(self):
        tok = self.cur
        if tok.kind == "INT":
            return AlgebraElement.scalar(self.rat())
        if tok.kind == "I":
            self.k += 1
            return AlgebraElement.scalar(ComplexRational(0, 1))
        if tok.kind in ("V", "VSTAR"):
            self.k += 1
            self.take("LP")
            g = self.rat()
            self.take("RP")
            return AlgebraElement.monomial(g, 0) if tok.kind == "V" else AlgebraElement.monomial(0, g)
        if tok.kind == "LP":
            self.k += 1
            inner = self.expr()
            self.take("RP")
            return inner
        what = repr(tok.text) if tok.kind != "EOF" else "end of input"
        raise ParseError(f"expected an operand, found {what}", tok.pos)


def parse(text: str) -> AlgebraElement:
    """Parse ``text`` into its canonical :class:`AlgebraElement`."""
    return _Parser(text).parse()


def evaluate(text: str, cone: Optional[DenomSequence] = None, depth: Optional[int] = None) -> AlgebraElement:
    """Parse ``text`` and, if ``cone`` is given, check every exponent lies in Q_M+.

    Raises ValueError naming the first exponent whose membership is not
    confirmed at the given depth.
    """
    x = parse(text)
    if cone is not None:
        for g in x.exponents():
            verdict, _ = qm_contains(cone, g, depth)
            if verdict is not Verdict.YES:
                raise ValueError(f"exponent {g} is not in the cone Q_M+ ({verdict.value})")
    return x
