"""Seeded random elements, posets and factor systems, plus a fixed poset catalog.

Used by the property tests, the acceptance suite and the ``oracle`` command.
Every generator takes a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraElement, ComplexRational, Monomial
from .system import FactorSystem, Poset, close_and_validate

__all__ = [
    "random_coefficient",
    "random_element",
    "random_integer_element",
    "random_dag",
    "random_labels",
    "consistent_labels",
    "random_system",
    "random_directed_system",
    "poset_catalog",
    "named_systems",
    "directed_test_systems",
]


def random_coefficient(rng: random.Random, complex_part: bool = True) -> ComplexRational:
    def small():
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    while True:
        c = ComplexRational(small(), small() if complex_part and rng.random() < 0.5 else 0)
        if c:
            return c


def random_element(
    rng: random.Random,
    max_terms: int = 5,
    max_den: int = 12,
    max_value: int = 3,
    denominators: Optional[List[int]] = None,
) -> AlgebraElement:
    """Up to ``max_terms`` monomials with exponents ``k/d``, ``d <= max_den``, value ``<= max_value``."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        def exp():
            d = rng.choice(denominators) if denominators else rng.randint(1, max_den)
            return Fraction(rng.randint(0, max_value * d), d)

        terms.append((Monomial(exp(), exp()), random_coefficient(rng)))
    return AlgebraElement(terms)


def random_integer_element(rng: random.Random, max_terms: int = 3, max_exp: int = 4) -> AlgebraElement:
    """Element of the Toeplitz algebra's dense part (integer exponents only)."""
    terms = [
        (Monomial(rng.randint(0, max_exp), rng.randint(0, max_exp)), random_coefficient(rng))
        for _ in range(rng.randint(1, max_terms))
    ]
    return AlgebraElement(terms)


def _names(n: int) -> List[str]:
    width = len(str(max(n - 1, 0)))
    return [f"e{i:0{width}d}" for i in range(n)]


def random_dag(rng: random.Random, n: int, p: float = 0.35) -> Poset:
    """Random poset on ``e0 .. e{n-1}`` from edges ``e_i < e_j`` (i < j) kept with probability ``p``.

    Node indices are shuffled first so identifier order and the order are unrelated.
    """
    names = _names(n)
    perm = names[:]
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Poset(names, pairs)


def random_labels(rng: random.Random, poset: Poset, max_label: int = 9) -> Dict[Tuple, int]:
    return {pair: rng.randint(1, max_label) for pair in poset.covers}


def consistent_labels(rng: random.Random, poset: Poset, max_label: int = 9, tries: int = 200) -> Optional[Dict[Tuple, int]]:
    """Cover labels coming from a potential ``h`` (label ``h(v)/h(u)``), so all paths agree.

    Returns None if no potential with labels ``<= max_label`` was found.
    """
    preds: Dict = {e: [] for e in poset.elements}
    for a, b in poset.covers:
        preds[b].append(a)
    for _ in range(tries):
        h: Dict = {}
        for e in poset.topological_order:
            below = [h[a] for a in preds[e]]
            base = math.lcm(1, *below)
            h[e] = base * rng.choice((1, 1, 2, 3))
        labels = {(a, b): h[b] // h[a] for a, b in poset.covers}
        if all(1 <= v <= max_label for v in labels.values()):
            return labels
    return None


def random_system(rng: random.Random, n: int, p: float = 0.35, max_label: int = 9) -> FactorSystem:
    """A validated random factor system (retries until a consistent labelling exists)."""
    while True:
        poset = random_dag(rng, n, p)
        labels = consistent_labels(rng, poset, max_label)
        if labels is not None:
            return close_and_validate(poset, labels)


def random_directed_system(rng: random.Random, n: int, p: float = 0.35, max_label: int = 9) -> FactorSystem:
    """Like :func:`random_system` but with a top element ``top`` so the poset is directed."""
    while True:
        inner = random_dag(rng, n - 1, p)
        pairs = list(inner.covers) + [(m, "top") for m in inner.maximal_elements()]
        poset = Poset(list(inner.elements) + ["top"], pairs)
        labels = consistent_labels(rng, poset, max_label)
        if labels is not None:
            return close_and_validate(poset, labels)


def _chain(n):
    names = _names(n)
    return Poset(names, list(zip(names, names[1:])))


def _antichain(n):
    return Poset(_names(n))


def _product_of_chains(m, n):
    elems = [f"p{i}{j}" for i in range(m) for j in range(n)]
    pairs = [(f"p{i}{j}", f"p{i + 1}{j}") for i in range(m - 1) for j in range(n)]
    pairs += [(f"p{i}{j}", f"p{i}{j + 1}") for i in range(m) for j in range(n - 1)]
    return Poset(elems, pairs)


def _boolean_lattice(k):
    elems = ["s" + "".join(map(str, bits)) for bits in itertools.product((0, 1), repeat=k)]
    pairs = []
    for bits in itertools.product((0, 1), repeat=k):
        for i in range(k):
            if bits[i] == 0:
                up = list(bits)
                up[i] = 1
                pairs.append(("s" + "".join(map(str, bits)), "s" + "".join(map(str, up))))
    return Poset(elems, pairs)


def poset_catalog() -> Dict[str, Poset]:
    """Fifty fixed posets with at most 8 elements."""
    cat: Dict[str, Poset] = {}
    for n in range(1, 9):
        cat[f"chain{n}"] = _chain(n)
        cat[f"antichain{n}"] = _antichain(n)
    for k in range(1, 8):
        # one bottom, k tops
        cat[f"fan_up{k}"] = Poset(["r"] + [f"t{i}" for i in range(k)], [("r", f"t{i}") for i in range(k)])
        # k bottoms, one top
        cat[f"fan_down{k}"] = Poset(["z"] + [f"b{i}" for i in range(k)], [(f"b{i}", "z") for i in range(k)])
    for n in range(2, 9):
        names = _names(n)
        # zigzag fence e0 < e1 > e2 < e3 ...
        pairs = [(names[i], names[i + 1]) if i % 2 == 0 else (names[i + 1], names[i]) for i in range(n - 1)]
        cat[f"fence{n}"] = Poset(names, pairs)
    for k in (2, 3, 4):
        lows = [f"l{i}" for i in range(k)]
        highs = [f"h{i}" for i in range(k)]
        pairs = [(lows[i], highs[i]) for i in range(k)] + [(lows[(i + 1) % k], highs[i]) for i in range(k)]
        cat[f"crown{k}"] = Poset(lows + highs, pairs)
    for k in (1, 2, 3):
        cat[f"boolean{k}"] = _boolean_lattice(k)
    cat["grid2x3"] = _product_of_chains(2, 3)
    cat["grid2x4"] = _product_of_chains(2, 4)
    cat["N"] = Poset("abcd", [("a", "c"), ("b", "c"), ("b", "d")])
    cat["bowtie"] = Poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    cat["M3"] = Poset("0abc1", [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    cat["N5"] = Poset("0abc1", [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    cat["two_plus_two"] = Poset("abcd", [("a", "b"), ("c", "d")])
    assert len(cat) == 50, len(cat)
    return cat


def named_systems() -> Dict[str, FactorSystem]:
    """The small hand-built systems used throughout the docs and tests."""
    def build(elems, covers):
        return close_and_validate(Poset(elems, covers), covers)

    return {
        "chain": build("abc", {("a", "b"): 2, ("b", "c"): 3}),
        "diamond": build("abcd", {("a", "b"): 2, ("b", "d"): 3, ("a", "c"): 3, ("c", "d"): 2}),
        "singleton": build("a", {}),
        "vshape": build("abc", {("a", "b"): 2, ("a", "c"): 3}),
        "dyadic_chain": build("abcde", {("a", "b"): 2, ("b", "c"): 2, ("c", "d"): 2, ("d", "e"): 2}),
        "wide": build(
            "abcdefg",
            {("a", "b"): 2, ("a", "c"): 3, ("a", "d"): 5, ("b", "e"): 3, ("c", "e"): 2,
             ("d", "f"): 1, ("e", "g"): 5, ("f", "g"): 6},
        ),
    }


def directed_test_systems(seed: int = 0, count: int = 6) -> Dict[str, FactorSystem]:
    """Named directed systems plus ``count`` random directed ones."""
    rng = random.Random(seed)
    out = {k: v for k, v in named_systems().items() if k != "vshape"}
    for i in range(count):
        out[f"random{i}"] = random_directed_system(rng, rng.randint(3, 8))
    return out
