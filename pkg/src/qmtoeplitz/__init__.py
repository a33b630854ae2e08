"""Exact computations with inductive systems of Toeplitz algebras.

The limit of a system of Toeplitz algebras over a directed poset, with
connecting maps ``T -> T^(n_ba)``, is the semigroup algebra C*_r(Q_M+) for a
subgroup Q_M of the rationals.  This package makes that concrete:

* :mod:`~qmtoeplitz.rational` -- the groups Q_M and their Z-colimit form;
* :mod:`~qmtoeplitz.algebra` -- exact arithmetic with the words V_p V_q*;
* :mod:`~qmtoeplitz.system` -- posets, factorization labels, cofinal chains;
* :mod:`~qmtoeplitz.colimit` -- M, the embeddings and their checks;
* :mod:`~qmtoeplitz.decomposition` -- maximal directed components;
* :mod:`~qmtoeplitz.truncation` -- finite matrix models and norm bounds.
"""

__version__ = "0.1.0"

from .algebra import AlgebraElement, ComplexRational, Monomial, T, V, Vstar, adjoint, mul, mul_monomial, rescale, unit, zero
from .colimit import (
    ColimitDescriptor,
    build_descriptor,
    chain_from_members,
    check_cocone,
    embed,
    exhaustion_check,
    theta_compare,
)
from .config import load_system, parse_config
from .errors import (
    ConfigError,
    NotDirected,
    ParseError,
    PathInconsistency,
    QMError,
    UnrepresentableExponent,
)
from .decomposition import maximal_directed_subsets, product_descriptor
from .expr import evaluate, parse
from .rational import (
    DenomSequence,
    Membership,
    Verdict,
    ZColimitElement,
    qm_contains,
    rational_arith,
    tau_apply,
    zcolimit_value,
)
from .system import (
    FactorSystem,
    LazySystem,
    Poset,
    close_and_validate,
    compare_images,
    extract_chain,
    extract_chain_lazy,
    is_directed,
    n_of_subset,
    upward_set,
    validate_factorization,
)
from .truncation import (
    TruncationGrid,
    interior_product_check,
    isometry_certificate,
    ladder_to_csv,
    matrix_of,
    norm_ladder,
    norm_lower_bound,
)
