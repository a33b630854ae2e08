import random

import pytest

from qmtoeplitz.decomposition import (
    ProductDescriptor,
    brute_force_maximal_directed,
    maximal_directed_subsets,
    product_descriptor,
)
from qmtoeplitz.sampling import named_systems, poset_catalog, random_dag, random_system
from qmtoeplitz.system import Poset, close_and_validate

SYSTEMS = named_systems()


def test_vshape_components():
    comps = maximal_directed_subsets(SYSTEMS["vshape"].poset)
    assert comps.as_lists() == [["a", "b"], ["a", "c"]]


def test_chain_is_one_component():
    comps = maximal_directed_subsets(SYSTEMS["chain"].poset)
    assert comps.as_lists() == [["a", "b", "c"]]


def test_four_element_example():
    p = Poset("abcd", [("a", "c"), ("b", "c"), ("a", "d")])
    expected = [["a", "b", "c"], ["a", "d"]]
    assert maximal_directed_subsets(p).as_lists() == expected
    assert brute_force_maximal_directed(p).as_lists() == expected


def test_catalog_matches_brute_force():
    for name, p in poset_catalog().items():
        fast = maximal_directed_subsets(p)
        assert fast == brute_force_maximal_directed(p), name
        assert fast.union() == frozenset(p.elements), name


def test_random_posets_match_brute_force():
    rng = random.Random(13)
    for _ in range(40):
        p = random_dag(rng, rng.randint(1, 8), rng.random())
        assert maximal_directed_subsets(p) == brute_force_maximal_directed(p)


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_maximal_directed(Poset(range(17)))


def test_vshape_factors():
    prod = product_descriptor(SYSTEMS["vshape"])
    assert len(prod) == 2
    assert [f.M.terms for f in prod.factors] == [(2,), (3,)]
    assert [f.describe_group() for f in prod.factors] == ["(1/2)Z", "(1/3)Z"]


def test_directed_single_factor():
    prod = product_descriptor(SYSTEMS["diamond"])
    assert len(prod) == 1
    assert prod.factors[0].base == "a" and prod.factors[0].M.terms == (2, 3)


def test_antichain_factors_are_plain():
    system = close_and_validate(Poset("wxyz"), {})
    prod = product_descriptor(system)
    assert len(prod) == 4 and all(f.is_plain_toeplitz() for f in prod.factors)


def test_component_without_minimum():
    # down(c) = {a, b, c} has no least element; the factor is built over K^a
    system = close_and_validate(Poset("abc", [("a", "c"), ("b", "c")]), {("a", "c"): 2, ("b", "c"): 3})
    (factor,) = product_descriptor(system).factors
    assert factor.base == "a" and factor.M.terms == (2,)


def test_random_systems_decompose():
    rng = random.Random(21)
    for _ in range(20):
        s = random_system(rng, rng.randint(1, 8))
        prod = product_descriptor(s)
        assert len(prod) == len(s.poset.maximal_elements())


def test_sup_norm():
    assert ProductDescriptor.sup_norm([0.5, 2.0, 1.0]) == 2.0
    assert ProductDescriptor.sup_norm([]) == 0.0
