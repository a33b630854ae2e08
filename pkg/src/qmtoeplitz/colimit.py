"""The inductive limit realised inside the monomial algebra over Q_M+.

Fix a base ``a`` and the cofinal chain ``c_1 = a <= c_2 <= ...``.  With
``m_s = n_{c_{s+1} a} / n_{c_s a}`` the sequence ``M = (m_1, m_2, ...)``
defines Q_M, and the embedding of the algebra sitting at ``b`` is

    embed_b : T -> V_{1/n_ba}.

Compatibility with the connecting maps ``T -> T^{n_cb}`` is the identity
``(1/n_ca) * n_cb = 1/n_ba``, which follows from factorization.  The checks
below verify that identity on sample elements, verify that the chain
exhausts every image, and compare descriptors built from different chains.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .algebra import AlgebraElement, V, rescale
from .errors import FactorizationViolation, NotDirected, QMError
from .rational import DenomSequence, Verdict, qm_contains
from .system import Chain, FactorSystem, extract_chain, find_unbounded_pair

__all__ = [
    "ColimitDescriptor",
    "build_descriptor",
    "chain_from_members",
    "embed",
    "CheckRecord",
    "CheckReport",
    "check_cocone",
    "exhaustion_check",
    "ThetaResult",
    "theta_compare",
]


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ColimitDescriptor:
    """Everything needed to write the limit as C*_r(Q_M+).

    ``exponents[b]`` is ``1/n_ba``: the image of the generator of T_b is
    ``V_{exponents[b]}``.
    """

    system: FactorSystem = field(repr=False)
    base: Hashable
    chain: Chain
    M: DenomSequence
    exponents: Dict[Hashable, Fraction] = field(repr=False)

    @property
    def upward(self) -> Tuple[Hashable, ...]:
        return tuple(sorted(self.exponents))

    def generators(self) -> Tuple[Fraction, ...]:
        """Exponents ``1/n_{c_s a}`` of the chain members, decreasing."""
        return tuple(Fraction(1, n) for n in self.chain.labels)

    def group_generator(self) -> Fraction:
        """Q_M restricted to the stored prefix is ``group_generator() * Z``."""
        return self.M.generator()

    def is_plain_toeplitz(self) -> bool:
        return len(self.M) == 0

    def describe_group(self) -> str:
        return self.M.describe()

    def as_dict(self) -> dict:
        return {
            "base": str(self.base),
            "chain": [str(c) for c in self.chain.members],
            "chain_labels": list(self.chain.labels),
            "M": list(self.M.terms),
            "group": self.describe_group(),
            "exponents": {str(b): _frac(x) for b, x in sorted(self.exponents.items())},
        }


def build_descriptor(
    system: FactorSystem,
    base,
    depth: Optional[int] = None,
    chain: Optional[Chain] = None,
    tie_break=None,
) -> ColimitDescriptor:
    """Extract the chain (unless one is supplied) and derive M and the exponents.

    A supplied ``chain`` must start at ``base``, be totally ordered and have
    strictly increasing labels; it is checked, not trusted.
    Raises :class:`NotDirected` if ``K^base`` is not directed.
    """
    if chain is None:
        kwargs = {} if tie_break is None else {"tie_break": tie_break}
        chain = extract_chain(system, base, depth, **kwargs)
    else:
        _check_chain(system, base, chain)
    labels = chain.labels
    terms = []
    for lo, hi in zip(labels, labels[1:]):
        if hi % lo:
            raise FactorizationViolation(base, lo, hi, f"chain label {hi} is not a multiple of {lo}")
        terms.append(hi // lo)
    M = DenomSequence(terms)
    exponents = {b: Fraction(1, system.labels[(base, b)]) for b in system.poset.up(base)}
    for b, x in exponents.items():
        if qm_contains(M, x).verdict is not Verdict.YES and chain.complete:
            raise QMError(f"exponent {x} of {b!r} is not in Q_M")
    return ColimitDescriptor(system, base, chain, M, exponents)


def _check_chain(system: FactorSystem, base, chain: Chain) -> None:
    poset = system.poset
    ka = poset.up(base)
    bad = find_unbounded_pair(poset, ka)
    if bad is not None:
        raise NotDirected(*bad)
    members = chain.members
    if not members or members[0] != base:
        raise ValueError("a chain must start at its base")
    for lo, hi in zip(members, members[1:]):
        if not poset.leq(lo, hi) or lo == hi:
            raise ValueError(f"chain members {lo!r}, {hi!r} are not strictly increasing")
    expected = tuple(system.labels[(base, c)] for c in members)
    if tuple(chain.labels) != expected:
        raise ValueError("chain labels do not match the system")


def chain_from_members(system: FactorSystem, base, members: Sequence) -> Chain:
    """Wrap an explicit list of elements as a :class:`Chain` (checked later by build_descriptor)."""
    members = tuple(members)
    labels = tuple(system.labels[(base, c)] for c in members)
    ladder = tuple(sorted({system.labels[(base, b)] for b in system.poset.up(base)}))
    top = labels[-1] if labels else 1
    complete = all(top % n == 0 for n in ladder)
    return Chain(base, members, labels, ladder, members, members, complete)


def embed(desc: ColimitDescriptor, b, x: AlgebraElement) -> AlgebraElement:
    """Image of ``x`` (an element over the Z-cone sitting at ``b``) in the limit."""
    if b not in desc.exponents:
        raise ValueError(f"{b!r} is not above the base {desc.base!r}")
    for g in x.exponents():
        if g.denominator != 1:
            raise ValueError(f"embed expects integer exponents, got {g}")
    return rescale(x, desc.exponents[b])


@dataclass(frozen=True)
class CheckRecord:
    """One checked pair; ``fields`` holds extra exponents/witnesses as strings."""

    kind: str
    lower: str
    upper: str
    status: str
    fields: Tuple[Tuple[str, str], ...] = ()

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "lower": self.lower, "upper": self.upper, "status": self.status}
        out.update(self.fields)
        return out

    def text(self) -> str:
        extra = " ".join(f"{k}={v}" for k, v in self.fields)
        return f"{self.kind} {self.lower} <= {self.upper}: {self.status}" + (f" ({extra})" if extra else "")


@dataclass(frozen=True)
class CheckReport:
    records: Tuple[CheckRecord, ...]

    @property
    def ok(self) -> bool:
        return all(r.status == "ok" for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.status != "ok"]

    def __len__(self):
        return len(self.records)

    def text(self) -> str:
        return "\n".join(r.text() for r in self.records)

    def json_lines(self) -> str:
        return "\n".join(json.dumps(r.as_dict()) for r in self.records)


def check_cocone(desc: ColimitDescriptor, samples: Iterable[AlgebraElement] = ()) -> CheckReport:
    """Check ``embed(c, sigma_cb(x)) == embed(b, x)`` for all ``b <= c`` above the base.

    ``sigma_cb`` is the connecting map ``T -> T^{n_cb}`` read from the
    descriptor's system.  The generator ``T`` is always included among the
    samples, and the exponent identity ``x_b = n_cb * x_c`` is checked too.
    """
    samples = [V(1)] + list(samples)
    poset = desc.system.poset
    records = []
    for b in desc.upward:
        for c in sorted(poset.up(b)):
            n_cb = desc.system.labels[(b, c)]
            xb, xc = desc.exponents[b], desc.exponents[c]
            status = "ok" if xb == n_cb * xc else "exponent-mismatch"
            bad = None
            if status == "ok":
                for i, x in enumerate(samples):
                    if embed(desc, c, rescale(x, n_cb)) != embed(desc, b, x):
                        status, bad = "mismatch", i
                        break
            fields = [("n_cb", str(n_cb)), ("x_b", _frac(xb)), ("x_c", _frac(xc)), ("samples", str(len(samples)))]
            if bad is not None:
                fields.append(("failing_sample", str(samples[bad])))
            records.append(CheckRecord("cocone", str(b), str(c), status, tuple(fields)))
    return CheckReport(tuple(records))


def exhaustion_check(desc: ColimitDescriptor, depth: Optional[int] = None) -> CheckReport:
    """Check that each image ``embed_b(T)`` is a power of some chain image.

    For every ``b`` above the base, find the first chain member ``c_s`` with
    ``n_{c_s a} = k * n_ba`` and verify ``V_{1/n_ba} == (V_{1/n_{c_s a}})^k``
    exactly.  ``depth`` limits the chain members consulted.
    """
    a = desc.base
    members = desc.chain.members if depth is None else desc.chain.members[:depth]
    records = []
    for b in desc.upward:
        n_ba = desc.system.labels[(a, b)]
        hit = None
        for c in members:
            n_ca = desc.system.labels[(a, c)]
            if n_ca % n_ba == 0:
                hit = (c, n_ca // n_ba)
                break
        if hit is None:
            records.append(CheckRecord("exhaustion", str(a), str(b), "uncovered", (("n_ba", str(n_ba)),)))
            continue
        c, k = hit
        lhs = embed(desc, b, V(1))
        rhs = embed(desc, c, V(1)) ** k
        status = "ok" if lhs == rhs else "identity-failed"
        fields = (("n_ba", str(n_ba)), ("chain_member", str(c)), ("k", str(k)), ("image", str(lhs)))
        records.append(CheckRecord("exhaustion", str(a), str(b), status, fields))
    return CheckReport(tuple(records))


@dataclass(frozen=True)
class ThetaResult:
    """Outcome of :func:`theta_compare`.

    ``witness`` lists ``(x, y, k)`` meaning ``V_x -> (V_y)^k`` (both
    directions); ``scale`` is the factor that moved the second descriptor
    into the first one's normalisation (``1/n_{a'a}`` for bases ``a <= a'``).
    """

    isomorphic: bool
    witness: Tuple[Tuple[Fraction, Fraction, int], ...] = ()
    scale: Fraction = Fraction(1)
    missing: Tuple[Fraction, ...] = ()

    @property
    def verdict(self) -> str:
        return "isomorphic" if self.isomorphic else "undecided"


def _covering(xs, ys):
    """For each x find y in ys with x = k*y (k natural); returns witnesses and misses."""
    found, missing = [], []
    for x in xs:
        for y in ys:
            k = x / y
            if k.denominator == 1:
                found.append((x, y, int(k)))
                break
        else:
            missing.append(x)
    return found, missing


def theta_compare(d1: ColimitDescriptor, d2: ColimitDescriptor, depth: Optional[int] = None) -> ThetaResult:
    """Compare the subgroups of Q generated by two descriptors' chain exponents.

    Each generator of one side must be an integer multiple of a generator of
    the other, using the first ``depth`` chain members of each.  When the
    bases differ they must be comparable, and the higher-based descriptor's
    exponents are multiplied by ``1/n_{a'a}`` first.  Finite evidence only: a miss gives
    ``undecided``, never a negative verdict.
    """
    scale = Fraction(1)
    g1 = list(d1.generators())
    g2 = list(d2.generators())
    if d1.base != d2.base:
        poset = d1.system.poset
        if poset.leq(d1.base, d2.base):
            scale = Fraction(1, d1.system.labels[(d1.base, d2.base)])
            g2 = [x * scale for x in g2]
        elif poset.leq(d2.base, d1.base):
            scale = Fraction(1, d2.system.labels[(d2.base, d1.base)])
            g1 = [x * scale for x in g1]
        else:
            raise ValueError(f"bases {d1.base!r} and {d2.base!r} are incomparable")
    if depth is not None:
        g1, g2 = g1[:depth], g2[:depth]
    there, miss1 = _covering(g1, g2)
    back, miss2 = _covering(g2, g1)
    missing = tuple(miss1 + miss2)
    # generators are 1/n with n | next n, so covering both ways means equal subgroups
    return ThetaResult(not missing, tuple(there + back), scale, missing)
