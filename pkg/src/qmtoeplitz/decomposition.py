"""Maximal directed subsets of a finite poset and the product of their limits.

A finite directed set has a greatest element, so every directed subset of
a finite poset lies in the down-set of one of its members, and the
maximal directed subsets are exactly the down-sets ``down(t)`` of the
maximal elements ``t``.  :func:`brute_force_maximal_directed` enumerates
all subsets and is used as an independent oracle in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Hashable, List, Optional, Sequence, Tuple

from .colimit import ColimitDescriptor, build_descriptor
from .system import FactorSystem, Poset, is_directed

__all__ = [
    "DirectedComponentSet",
    "maximal_directed_subsets",
    "brute_force_maximal_directed",
    "ProductDescriptor",
    "product_descriptor",
]


def _component_key(component: FrozenSet) -> Tuple:
    return (min(component), tuple(sorted(component)))


@dataclass(frozen=True)
class DirectedComponentSet:
    components: Tuple[FrozenSet[Hashable], ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def union(self) -> FrozenSet[Hashable]:
        return frozenset().union(*self.components)

    def as_lists(self) -> List[List[Hashable]]:
        return [sorted(c) for c in self.components]


def maximal_directed_subsets(poset: Poset) -> DirectedComponentSet:
    """All maximal directed subsets, ordered by their smallest member."""
    comps = {poset.down(t) for t in poset.maximal_elements()}
    return DirectedComponentSet(tuple(sorted(comps, key=_component_key)))


def brute_force_maximal_directed(poset: Poset) -> DirectedComponentSet:
    """Exponential oracle: every non-empty directed subset, filtered to the inclusion-maximal ones."""
    elems = poset.elements
    if len(elems) > 16:
        raise ValueError("brute force is limited to 16 elements")
    directed = []
    for r in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            if is_directed(poset, combo):
                directed.append(frozenset(combo))
    maximal = [s for s in directed if not any(s < t for t in directed)]
    return DirectedComponentSet(tuple(sorted(set(maximal), key=_component_key)))


@dataclass(frozen=True)
class ProductDescriptor:
    """One colimit descriptor per maximal directed component."""

    components: DirectedComponentSet
    factors: Tuple[ColimitDescriptor, ...]

    def __len__(self):
        return len(self.factors)

    @staticmethod
    def sup_norm(factor_norms: Sequence[float]) -> float:
        """Norm of a tuple in the product: the supremum of the factor norms."""
        return max(factor_norms, default=0.0)


def _component_base(poset: Poset) -> Hashable:
    least = poset.minimum()
    return least if least is not None else poset.elements[0]


def product_descriptor(system: FactorSystem, depth: Optional[int] = None) -> ProductDescriptor:
    """Decompose ``K`` and build a descriptor for each restricted subsystem.

    The base of a component is its least element; a component of a finite
    poset is ``down(t)`` and may lack a minimum, in which case the smallest
    identifier is used and the descriptor describes the limit over its upward
    set, which is isomorphic.
    """
    comps = maximal_directed_subsets(system.poset)
    factors = []
    for comp in comps:
        sub = system.restrict(comp)
        factors.append(build_descriptor(sub, _component_base(sub.poset), depth))
    return ProductDescriptor(comps, tuple(factors))
