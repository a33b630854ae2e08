"""
From a labelled poset to C*_r(Q_M+)
===================================

Labels n_ba on a finite directed poset describe an inductive system of
Toeplitz algebras.  A cofinal chain through the upward set of the base
turns the label ladder into a sequence M, and every algebra in the
system lands inside the semigroup algebra over Q_M+.
"""

from pathlib import Path

from qmtoeplitz import (
    build_descriptor,
    chain_from_members,
    check_cocone,
    exhaustion_check,
    extract_chain,
    load_system,
    theta_compare,
)

here = Path(__file__).resolve().parent
diamond = load_system(here / "configs" / "diamond.poset")

chain = extract_chain(diamond, "a")
print("chain", chain.members, "labels", chain.labels)

desc = build_descriptor(diamond, "a")
print("M =", desc.M.terms, "group", desc.describe_group())
for b, g in sorted(desc.exponents.items()):
    print(f"  T_{b} -> V({g})")

print("cocone ok:", check_cocone(desc).ok)
print(exhaustion_check(desc).text())

# going through c instead of b changes M to (3, 2) but not the group
other = build_descriptor(diamond, "a", chain=chain_from_members(diamond, "a", "acd"))
result = theta_compare(desc, other)
print("M =", other.M.terms, "->", result.verdict)
for x, y, k in result.witness:
    print(f"  V({x}) = V({y})^{k}")
