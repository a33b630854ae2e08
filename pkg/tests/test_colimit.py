import random
from fractions import Fraction

import pytest

from qmtoeplitz.algebra import T, V, Vstar, rescale
from qmtoeplitz.colimit import (
    build_descriptor,
    chain_from_members,
    check_cocone,
    embed,
    exhaustion_check,
    theta_compare,
)
from qmtoeplitz.errors import NotDirected
from qmtoeplitz.rational import Verdict, qm_contains
from qmtoeplitz.sampling import named_systems, random_directed_system, random_integer_element
from qmtoeplitz.system import FactorSystem

SYSTEMS = named_systems()


def subgroup_generator(gens):
    """Generator 1/N of the subgroup of Q spanned by 1/n for n in gens."""
    from math import lcm

    return Fraction(1, lcm(*(g.denominator for g in gens)))


class TestDescriptor:
    def test_chain(self):
        d = build_descriptor(SYSTEMS["chain"], "a")
        assert d.M.terms == (2, 3)
        assert d.exponents == {"a": 1, "b": Fraction(1, 2), "c": Fraction(1, 6)}
        assert d.describe_group() == "(1/6)Z"

    def test_singleton(self):
        d = build_descriptor(SYSTEMS["singleton"], "a")
        assert d.M.terms == () and d.is_plain_toeplitz()
        assert d.exponents == {"a": 1}
        assert d.describe_group() == "Z"

    def test_diamond_tie_breaks_share_the_group(self):
        s = SYSTEMS["diamond"]
        d1 = build_descriptor(s, "a")
        d2 = build_descriptor(s, "a", chain=chain_from_members(s, "a", "acd"))
        assert d1.M.terms == (2, 3) and d2.M.terms == (3, 2)
        for k in range(-60, 61):
            q = Fraction(k, 36)
            assert qm_contains(d1.M, q).verdict is qm_contains(d2.M, q).verdict
        assert d1.group_generator() == d2.group_generator() == Fraction(1, 6)

    def test_exponents_lie_in_qm(self):
        rng = random.Random(2)
        for _ in range(30):
            s = random_directed_system(rng, rng.randint(2, 8))
            for a in s.elements:
                d = build_descriptor(s, a)
                for x in d.exponents.values():
                    assert qm_contains(d.M, x).verdict is Verdict.YES
                # the chain generates what all exponents generate
                assert d.group_generator() == subgroup_generator(list(d.exponents.values()))

    def test_non_directed(self):
        with pytest.raises(NotDirected):
            build_descriptor(SYSTEMS["vshape"], "a")

    def test_bad_custom_chain(self):
        s = SYSTEMS["diamond"]
        with pytest.raises(ValueError):
            build_descriptor(s, "a", chain=chain_from_members(s, "a", "bd"))
        with pytest.raises(ValueError):
            build_descriptor(s, "a", chain=chain_from_members(s, "a", "acb"))


class TestEmbed:
    def test_generator_images(self):
        d = build_descriptor(SYSTEMS["chain"], "a")
        assert embed(d, "b", T()) == V(Fraction(1, 2))
        assert embed(d, "c", T() * Vstar(1)) == V(Fraction(1, 6)) * Vstar(Fraction(1, 6))

    def test_rejects(self):
        d = build_descriptor(SYSTEMS["chain"], "b")
        with pytest.raises(ValueError):
            embed(d, "a", T())
        with pytest.raises(ValueError):
            embed(d, "b", V(Fraction(1, 2)))


class TestCocone:
    def test_chain_identity(self):
        report = check_cocone(build_descriptor(SYSTEMS["chain"], "a"))
        assert report.ok and len(report) == 6

    def test_diamond_samples(self):
        rng = random.Random(0)
        samples = [random_integer_element(rng, max_terms=3) for _ in range(100)]
        report = check_cocone(build_descriptor(SYSTEMS["diamond"], "a"), samples)
        assert report.ok

    def test_corrupted_label(self):
        good = SYSTEMS["chain"]
        labels = dict(good.labels)
        labels[("b", "c")] = 5  # bypasses validation
        bad = FactorSystem(good.poset, labels)
        report = check_cocone(build_descriptor(bad, "a"), [T() + Vstar(2)])
        failures = report.failures()
        assert failures and failures[0].lower == "b" and failures[0].upper == "c"
        assert "exponent-mismatch" in report.text()

    def test_structured_records(self):
        import json

        report = check_cocone(build_descriptor(SYSTEMS["chain"], "a"))
        rows = [json.loads(line) for line in report.json_lines().splitlines()]
        assert rows[0]["kind"] == "cocone" and rows[0]["status"] == "ok"


class TestExhaustion:
    def test_diamond_power_witness(self):
        s = SYSTEMS["diamond"]
        d = build_descriptor(s, "a")
        report = exhaustion_check(d)
        assert report.ok
        rec = {r.upper: dict(r.fields) for r in report.records}
        assert rec["c"]["chain_member"] == "d" and rec["c"]["k"] == "2"
        assert V(Fraction(1, 3)) == V(Fraction(1, 6)) ** 2

    def test_shallow_chain_leaves_gaps(self):
        d = build_descriptor(SYSTEMS["wide"], "a")
        report = exhaustion_check(d, depth=1)
        assert not report.ok
        assert exhaustion_check(d).ok

    def test_random(self):
        rng = random.Random(6)
        for _ in range(20):
            s = random_directed_system(rng, rng.randint(2, 8))
            assert exhaustion_check(build_descriptor(s, min(s.elements))).ok


class TestTheta:
    def test_identical(self):
        d = build_descriptor(SYSTEMS["chain"], "a")
        got = theta_compare(d, d)
        assert got.isomorphic and all(k == 1 for _, _, k in got.witness)

    def test_tie_break_variants(self):
        s = SYSTEMS["diamond"]
        d1 = build_descriptor(s, "a")
        d2 = build_descriptor(s, "a", chain=chain_from_members(s, "a", "acd"))
        got = theta_compare(d1, d2, depth=len(s.elements))
        assert got.isomorphic
        assert (Fraction(1, 2), Fraction(1, 6), 3) in got.witness
        assert rescale(T(), Fraction(1, 2)) == V(Fraction(1, 6)) ** 3

    def test_max_tie_break(self):
        s = SYSTEMS["diamond"]
        d1 = build_descriptor(s, "a")
        d2 = build_descriptor(s, "a", tie_break=max)
        assert d2.chain.members == ("a", "d")
        assert theta_compare(d1, d2).isomorphic

    def test_upward_set_versus_whole(self):
        rng = random.Random(9)
        for _ in range(20):
            s = random_directed_system(rng, rng.randint(3, 8))
            low = s.poset.minimal_elements()[0]
            for b in sorted(s.poset.up(low)):
                got = theta_compare(build_descriptor(s, low), build_descriptor(s, b))
                assert got.isomorphic
                assert got.scale == Fraction(1, s.factor(low, b))

    def test_restricted_system(self):
        s = SYSTEMS["diamond"]
        sub = s.restrict(s.poset.up("b"))
        got = theta_compare(build_descriptor(s, "a"), build_descriptor(sub, "b"))
        # different systems: the restricted one is read against the full poset's label
        assert got.isomorphic and got.scale == Fraction(1, 2)

    def test_short_depth_is_undecided(self):
        s = SYSTEMS["wide"]
        d1 = build_descriptor(s, "a")
        d2 = build_descriptor(s, "a", depth=2)
        got = theta_compare(d1, d2)
        assert not got.isomorphic and got.verdict == "undecided" and got.missing

    def test_incomparable_bases(self):
        s = SYSTEMS["diamond"]
        with pytest.raises(ValueError):
            theta_compare(build_descriptor(s, "b"), build_descriptor(s, "c"))
