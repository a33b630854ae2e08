"""
Posets that are not directed
============================

A finite poset splits into the down-sets of its maximal elements.  Each
piece is directed and gets its own Q_M; the whole limit is the product.
"""

from pathlib import Path

from qmtoeplitz import NotDirected, build_descriptor, load_system, maximal_directed_subsets, product_descriptor

here = Path(__file__).resolve().parent
vshape = load_system(here / "configs" / "vshape.poset")

try:
    build_descriptor(vshape, "a")
except NotDirected as exc:
    print("not directed:", exc)

print(maximal_directed_subsets(vshape.poset).as_lists())
product = product_descriptor(vshape)
for comp, factor in zip(product.components, product.factors):
    print(sorted(comp), "M =", factor.M.terms, factor.describe_group())

antichain = load_system(here / "configs" / "antichain.poset")
print([f.is_plain_toeplitz() for f in product_descriptor(antichain).factors])
