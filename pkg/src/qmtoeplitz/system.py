"""Finite posets labelled by factorization systems and the cofinal chain.

A :class:`FactorSystem` attaches a natural number ``n_ba`` to every pair
``a <= b`` such that ``n_aa = 1`` and ``n_ca = n_cb * n_ba``; each label
stands for the connecting map ``T -> T^(n_ba)`` between Toeplitz algebras.
Labels are normally given on covers only and closed along paths by
:func:`close_and_validate`.

Elements may be any hashable, mutually comparable identifiers (strings
from config files, ints for generated systems).  Whenever a choice has to
be made, the smallest identifier wins.
"""

from __future__ import annotations

import enum
import graphlib
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import (
    CycleDetected,
    DepthExhausted,
    FactorizationViolation,
    LabelError,
    NotDirected,
    PathInconsistency,
    UnknownElement,
)

__all__ = [
    "Poset",
    "FactorSystem",
    "close_and_validate",
    "validate_factorization",
    "upward_set",
    "n_of_subset",
    "LabelSet",
    "is_directed",
    "find_unbounded_pair",
    "ImageRelation",
    "ImageComparison",
    "compare_images",
    "Chain",
    "extract_chain",
    "LazySystem",
    "extract_chain_lazy",
]

Element = Hashable


class Poset:
    """A finite poset generated by a set of ``(a, b)`` pairs meaning ``a < b``.

    The generating pairs need not be a Hasse diagram; redundant pairs are
    allowed.  The order is their reflexive-transitive closure, and a cycle
    among the pairs raises :class:`CycleDetected`.
    """

    def __init__(self, elements: Iterable[Element], covers: Iterable[Tuple[Element, Element]] = ()):
        self.elements: Tuple[Element, ...] = tuple(sorted(set(elements)))
        self._index = set(self.elements)
        covers = sorted(set(covers))
        for a, b in covers:
            for e in (a, b):
                if e not in self._index:
                    raise UnknownElement(e)
            if a == b:
                raise CycleDetected((a, a))
        self.covers: Tuple[Tuple[Element, Element], ...] = tuple(covers)

        preds: Dict[Element, set] = {e: set() for e in self.elements}
        succ: Dict[Element, List[Element]] = {e: [] for e in self.elements}
        for a, b in self.covers:
            preds[b].add(a)
            succ[a].append(b)
        sorter = graphlib.TopologicalSorter({e: sorted(preds[e]) for e in self.elements})
        try:
            order = list(sorter.static_order())
        except graphlib.CycleError as exc:
            raise CycleDetected(reversed(exc.args[1])) from None
        self.topological_order: Tuple[Element, ...] = tuple(order)
        self._succ = {e: tuple(sorted(v)) for e, v in succ.items()}

        up: Dict[Element, FrozenSet[Element]] = {}
        for e in reversed(order):
            s = {e}
            for b in self._succ[e]:
                s |= up[b]
            up[e] = frozenset(s)
        self._up = up
        down: Dict[Element, set] = {e: set() for e in self.elements}
        for a, ups in up.items():
            for b in ups:
                down[b].add(a)
        self._down = {e: frozenset(v) for e, v in down.items()}

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, {list(self.covers)!r})"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self):
        return hash((self.elements, frozenset(self._up.items())))

    def _check(self, e):
        if e not in self._index:
            raise UnknownElement(e)

    def leq(self, a, b) -> bool:
        self._check(a)
        self._check(b)
        return b in self._up[a]

    def up(self, a) -> FrozenSet[Element]:
        """All ``b`` with ``a <= b``."""
        self._check(a)
        return self._up[a]

    def down(self, a) -> FrozenSet[Element]:
        """All ``b`` with ``b <= a``."""
        self._check(a)
        return self._down[a]

    def successors(self, a) -> Tuple[Element, ...]:
        """Targets of the generating pairs leaving ``a``."""
        self._check(a)
        return self._succ[a]

    def comparable_pairs(self) -> Iterator[Tuple[Element, Element]]:
        """Every ``(a, b)`` with ``a <= b`` (including ``a == b``), in sorted order."""
        for a in self.elements:
            for b in sorted(self._up[a]):
                yield a, b

    def maximal_elements(self) -> Tuple[Element, ...]:
        return tuple(e for e in self.elements if len(self._up[e]) == 1)

    def minimal_elements(self) -> Tuple[Element, ...]:
        return tuple(e for e in self.elements if len(self._down[e]) == 1)

    def minimum(self) -> Optional[Element]:
        """The least element, or None if there is none."""
        mins = self.minimal_elements()
        if len(mins) == 1 and len(self._up[mins[0]]) == len(self.elements):
            return mins[0]
        return None

    def upper_bounds(self, items: Iterable[Element], within: Optional[Iterable[Element]] = None) -> List[Element]:
        """Sorted common upper bounds of ``items``, optionally restricted to ``within``."""
        items = list(items)
        pool = set(self.elements) if within is None else set(within)
        for e in items:
            pool &= self.up(e)
        return sorted(pool)

    def hasse(self) -> Tuple[Tuple[Element, Element], ...]:
        """Covering pairs of the order (transitive reduction)."""
        out = []
        for a in self.elements:
            strict = self._up[a] - {a}
            for b in sorted(strict):
                if not any(b in self._up[c] for c in strict if c != b):
                    out.append((a, b))
        return tuple(out)

    def restrict(self, subset: Iterable[Element]) -> "Poset":
        """The induced sub-poset on ``subset``."""
        sub = set(subset)
        for e in sub:
            self._check(e)
        pairs = [(a, b) for a in sub for b in self._up[a] & sub if a != b]
        induced = Poset(sub, pairs)
        return Poset(sub, induced.hasse())


@dataclass(frozen=True)
class FactorSystem:
    """A poset with a label ``n_ba`` on every comparable pair ``a <= b``.

    ``labels`` maps ``(a, b)`` (lower, upper) to ``n_ba``.  The constructor
    does not validate; use :func:`close_and_validate` or
    :func:`validate_factorization` for that.
    """

    poset: Poset
    labels: Mapping[Tuple[Element, Element], int] = field(repr=False)
    meta: Mapping[str, str] = field(default_factory=dict, compare=False, repr=False)

    @property
    def elements(self):
        return self.poset.elements

    def factor(self, lower, upper) -> int:
        """``n_{upper, lower}``, the exponent of the map T_lower -> T_upper."""
        try:
            return self.labels[(lower, upper)]
        except KeyError:
            self.poset._check(lower)
            self.poset._check(upper)
            raise KeyError(f"{lower!r} is not below {upper!r}") from None

    def cover_labels(self) -> Dict[Tuple[Element, Element], int]:
        return {pair: self.labels[pair] for pair in self.poset.hasse()}

    def restrict(self, subset: Iterable[Element]) -> "FactorSystem":
        sub = self.poset.restrict(subset)
        labels = {(a, b): self.labels[(a, b)] for a, b in sub.comparable_pairs()}
        return FactorSystem(sub, labels, self.meta)


def _check_label(pair, n):
    if isinstance(n, bool) or not isinstance(n, int):
        raise LabelError(f"label on {pair[0]!r} < {pair[1]!r} must be an integer, got {n!r}")
    if n < 1:
        raise LabelError(f"label on {pair[0]!r} < {pair[1]!r} must be >= 1, got {n}")


def close_and_validate(poset: Poset, cover_labels: Mapping[Tuple[Element, Element], int], meta=None) -> FactorSystem:
    """Extend labels on the generating pairs to all comparable pairs.

    ``n_ba`` is the product of labels along a path from ``a`` to ``b``.  The
    result is well defined exactly when all paths agree; the first
    disagreement found (sources and targets visited in a deterministic order)
    raises :class:`PathInconsistency` with both paths.
    """
    for pair in poset.covers:
        if pair not in cover_labels:
            raise LabelError(f"generating pair {pair[0]!r} < {pair[1]!r} has no label")
        _check_label(pair, cover_labels[pair])
    generating = set(poset.covers)
    for pair in cover_labels:
        if pair not in generating:
            raise LabelError(f"label given for {pair[0]!r} < {pair[1]!r}, which is not a generating pair")

    labels: Dict[Tuple[Element, Element], int] = {}
    rank = {e: i for i, e in enumerate(poset.topological_order)}
    for a in poset.elements:
        value = {a: 1}
        parent: Dict[Element, Optional[Element]] = {a: None}
        reach = sorted(poset.up(a), key=rank.__getitem__)
        for u in reach:
            for v in poset.successors(u):
                cand = value[u] * cover_labels[(u, v)]
                if v not in value:
                    value[v] = cand
                    parent[v] = u
                elif value[v] != cand:
                    path1 = _walk(parent, v)
                    path2 = _walk(parent, u) + [v]
                    raise PathInconsistency(a, v, path1, value[v], path2, cand)
        for b, n in value.items():
            labels[(a, b)] = n
    return FactorSystem(poset, labels, dict(meta or {}))


def _walk(parent, v):
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def validate_factorization(poset: Poset, labels: Mapping[Tuple[Element, Element], int]) -> None:
    """Check ``n_aa = 1`` and ``n_ca = n_cb * n_ba`` for every ``a <= b <= c``.

    Raises :class:`FactorizationViolation` for the first failing triple in
    sorted order, or :class:`LabelError` when a comparable pair is unlabelled
    or an incomparable pair is labelled.
    """
    comparable = set(poset.comparable_pairs())
    for pair in labels:
        if pair not in comparable:
            raise LabelError(f"label given for incomparable pair {pair[0]!r}, {pair[1]!r}")
    for pair in sorted(comparable):
        if pair not in labels:
            raise LabelError(f"missing label for {pair[0]!r} <= {pair[1]!r}")
        _check_label(pair, labels[pair])
    for a in poset.elements:
        if labels[(a, a)] != 1:
            raise FactorizationViolation(a, a, a, f"n_aa = {labels[(a, a)]}, expected 1")
        for b in sorted(poset.up(a)):
            n_ba = labels[(a, b)]
            for c in sorted(poset.up(b)):
                if labels[(a, c)] != labels[(b, c)] * n_ba:
                    raise FactorizationViolation(
                        a, b, c, f"n_ca = {labels[(a, c)]} but n_cb * n_ba = {labels[(b, c)]} * {n_ba}"
                    )


def upward_set(poset: Poset, a) -> FrozenSet[Element]:
    """``K^a = {b : a <= b}``."""
    return poset.up(a)


class LabelSet(NamedTuple):
    multiset: Counter
    distinct: List[int]


def n_of_subset(system: FactorSystem, subset: Iterable[Element], a) -> LabelSet:
    """Labels ``n_ba`` for ``b`` in ``subset`` (which must lie in ``K^a``)."""
    ka = system.poset.up(a)
    counts: Counter = Counter()
    for b in subset:
        if b not in ka:
            raise ValueError(f"{b!r} is not above {a!r}")
        counts[system.labels[(a, b)]] += 1
    return LabelSet(counts, sorted(counts))


def find_unbounded_pair(poset: Poset, subset: Iterable[Element]) -> Optional[Tuple[Element, Element]]:
    """First pair of ``subset`` (sorted order) with no upper bound in ``subset``, or None."""
    items = sorted(set(subset))
    members = set(items)
    for b, c in itertools.combinations(items, 2):
        if not (poset.up(b) & poset.up(c) & members):
            return b, c
    return None


def is_directed(poset: Poset, subset: Iterable[Element]) -> bool:
    """True iff every pair in ``subset`` has an upper bound inside ``subset``.

    The empty set counts as directed here; callers that need non-emptiness
    check it themselves.
    """
    return find_unbounded_pair(poset, subset) is None


def _require_directed(poset: Poset, subset):
    bad = find_unbounded_pair(poset, subset)
    if bad is not None:
        raise NotDirected(*bad)


class ImageRelation(enum.Enum):
    EQUAL = "equal"
    B_IN_C = "b_in_c"
    C_IN_B = "c_in_b"
    INCOMPARABLE = "incomparable"


class ImageComparison(NamedTuple):
    relation: ImageRelation
    k: Optional[int] = None


def compare_images(system: FactorSystem, a, b, c) -> ImageComparison:
    """Compare the images of T_b and T_c inside the limit over ``K^a``.

    Equal labels give equal images; ``n_ca = k * n_ba`` puts the image of
    ``T_b`` inside that of ``T_c`` (``B_IN_C`` with that ``k``), and
    symmetrically.  Requires ``K^a`` to be directed.
    """
    ka = system.poset.up(a)
    _require_directed(system.poset, ka)
    for e in (b, c):
        if e not in ka:
            raise ValueError(f"{e!r} is not above {a!r}")
    nb, nc = system.labels[(a, b)], system.labels[(a, c)]
    if nb == nc:
        return ImageComparison(ImageRelation.EQUAL, 1)
    if nc % nb == 0:
        return ImageComparison(ImageRelation.B_IN_C, nc // nb)
    if nb % nc == 0:
        return ImageComparison(ImageRelation.C_IN_B, nb // nc)
    return ImageComparison(ImageRelation.INCOMPARABLE)


@dataclass(frozen=True)
class Chain:
    """Result of :func:`extract_chain`.

    ``members`` is the totally ordered list ``c_1 = a <= c_2 <= ...`` with
    strictly increasing labels (of steps sharing a label only the last is kept).  ``ladder`` lists the distinct label values
    ``n_{b_1 a} < n_{b_2 a} < ...`` that were processed, ``representatives``
    the element ``b_s`` picked for each value and ``steps`` the chain member
    ``c_s`` chosen at step ``s`` (an upper bound of ``c_{s-1}`` and ``b_s``).
    """

    base: Element
    members: Tuple[Element, ...]
    labels: Tuple[int, ...]
    ladder: Tuple[int, ...]
    representatives: Tuple[Element, ...]
    steps: Tuple[Element, ...]
    complete: bool

    def witness(self, n: int) -> Tuple[Element, int]:
        """A chain member ``c`` and ``k`` with ``n_ca = k * n``, for ``n`` on the ladder."""
        for c, lab in zip(self.members, self.labels):
            if lab % n == 0:
                return c, lab // n
        raise ValueError(f"no chain member has a label divisible by {n}")


TieBreak = Callable[[Sequence[Element]], Element]


def _smallest(candidates: Sequence[Element]) -> Element:
    return min(candidates)


def extract_chain(system: FactorSystem, a, depth: Optional[int] = None, tie_break: TieBreak = _smallest) -> Chain:
    """Build the cofinal chain through ``K^a``.

    The distinct values of ``N(K^a)`` are sorted increasingly; for the
    ``s``-th value a representative ``b_s`` is picked and ``c_s`` is chosen
    among the upper bounds of ``{c_{s-1}, b_s}`` in ``K^a``.  ``depth`` caps
    the number of ladder values processed (default: all).  ``tie_break``
    picks from a sorted candidate list; the default takes the smallest.

    Raises :class:`NotDirected` if ``K^a`` is not directed.
    """
    poset = system.poset
    ka = poset.up(a)
    _require_directed(poset, ka)
    if depth is not None and depth < 1:
        raise ValueError("depth must be >= 1")

    by_label: Dict[int, List[Element]] = {}
    for b in sorted(ka):
        by_label.setdefault(system.labels[(a, b)], []).append(b)
    ladder = sorted(by_label)
    if ladder[0] != 1 or a not in by_label[1]:
        raise FactorizationViolation(a, a, a, "n_aa must be 1 and the smallest label")
    used = ladder if depth is None else ladder[:depth]

    reps = [a]
    steps = [a]
    for n in used[1:]:
        b = tie_break(by_label[n])
        bounds = poset.upper_bounds((steps[-1], b), within=ka)
        reps.append(b)
        steps.append(tie_break(bounds))
    members, labels = _collapse(system, a, steps)
    return Chain(a, members, labels, tuple(used), tuple(reps), tuple(steps), len(used) == len(ladder))


def _collapse(system: FactorSystem, a, steps):
    # consecutive steps with the same label add nothing; keep the highest one
    members, labels = [], []
    for m in steps:
        lab = system.labels[(a, m)]
        if labels and labels[-1] == lab:
            members[-1] = m
        else:
            members.append(m)
            labels.append(lab)
    return tuple(members), tuple(labels)


class LazySystem:
    """A factor system whose elements arrive one at a time.

    ``generator`` yields ``(element, {lower: label, ...})`` where every
    ``lower`` was yielded earlier, so each finite prefix is a down-closed
    sub-poset.  The prefix is materialised on demand by :meth:`prefix`.
    """

    def __init__(self, generator: Iterable[Tuple[Element, Mapping[Element, int]]]):
        self._source = iter(generator)
        self._elements: List[Element] = []
        self._covers: Dict[Tuple[Element, Element], int] = {}
        self.exhausted = False

    def _pull(self, n: int) -> None:
        while len(self._elements) < n and not self.exhausted:
            try:
                e, lowers = next(self._source)
            except StopIteration:
                self.exhausted = True
                break
            if e in self._elements:
                raise ValueError(f"element {e!r} yielded twice")
            for lo, lab in lowers.items():
                if lo not in self._elements:
                    raise ValueError(f"{lo!r} must be yielded before {e!r}")
                self._covers[(lo, e)] = lab
            self._elements.append(e)

    def prefix(self, n: int) -> FactorSystem:
        """Validated factor system on the first ``n`` elements (fewer if exhausted)."""
        self._pull(n)
        elems = self._elements[:n]
        keep = set(elems)
        covers = {p: lab for p, lab in self._covers.items() if p[0] in keep and p[1] in keep}
        return close_and_validate(Poset(elems, covers), covers)

    @property
    def order(self) -> Tuple[Element, ...]:
        """Elements pulled so far, in enumeration order."""
        return tuple(self._elements)

    def __len__(self):
        return len(self._elements)


def _greedy_chain(system: FactorSystem, order: Sequence[Element], a, depth: int) -> Optional[Chain]:
    if a not in system.poset:
        return None
    ka = system.poset.up(a)
    ladder, reps, steps = [1], [a], [a]
    for b in order:
        if len(ladder) >= depth:
            break
        if b not in ka or system.labels[(a, b)] in ladder:
            continue
        bounds = system.poset.upper_bounds((steps[-1], b), within=ka)
        if not bounds:
            return None
        ladder.append(system.labels[(a, b)])
        reps.append(b)
        steps.append(bounds[0])
    if len(ladder) < depth:
        return None
    members, labels = _collapse(system, a, steps)
    return Chain(a, members, labels, tuple(ladder), tuple(reps), tuple(steps), False)


def extract_chain_lazy(lazy: LazySystem, a, depth: int, max_elements: int = 10_000) -> Chain:
    """Cofinal chain with ``depth`` ladder values from a lazily enumerated system.

    The full label set of an infinite system cannot be sorted, so here
    ``b_s`` is the element carrying the ``s``-th new label in enumeration
    order.  The shortest prefix on which every needed upper bound exists is
    used.  Raises :class:`DepthExhausted` if the generator ends, or
    ``max_elements`` is reached, first.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = 1
    while True:
        system = lazy.prefix(n)
        chain = _greedy_chain(system, lazy.order[:n], a, depth)
        if chain is not None:
            return chain
        if lazy.exhausted and n >= len(lazy):
            raise DepthExhausted(f"generator ended after {len(lazy)} elements without a chain of depth {depth}")
        if n >= max_elements:
            raise DepthExhausted(f"no chain of depth {depth} within {max_elements} elements")
        n += 1
