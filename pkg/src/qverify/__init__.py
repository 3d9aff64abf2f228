"""qverify: exact verification of q-series identities.

Truncated Laurent series in t = q^(1/2) over sparse multivariate rational
coefficients, q-Pochhammer building blocks, Bailey pair machinery, an
identity registry with order-bounded coefficient comparison, and three
independent enumerations of the signed partition count.

The sparse-arithmetic kernels come in a compiled (Cython) and a pure
Python flavor; ``qverify.BACKEND`` names the one selected at import.
"""

from ._backend import BACKEND
from .coeffring import Coefficient, PARAMS
from .series import (
    INF,
    Comparison,
    DivergentProduct,
    InvertNonUnit,
    MonomialSpec,
    OrderExhausted,
    Series,
    coefficient_at,
    equal_up_to,
    invert,
    make_monomial,
    rescale,
)
from .qseries import hecke_double_sum, poch, poch_inf
from .partitions import (
    Partition,
    class_excess_I,
    conjugate,
    construct_varpi,
    omega,
    p_rN_enum,
    p_rN_gf,
    theorem_1_1_check,
)
from .bailey import (
    BaileyPair,
    andrews_pair,
    bailey_lemma_check,
    beta_from_alpha,
    pair_from_name,
    thm23_pair,
    transform_s2,
    transform_s5,
    unit_pair,
    verify_pair,
)
from .identities import (
    BindingOutOfDomain,
    IdentityCase,
    UnknownIdentity,
    check_identity,
    lemma_2_2_check,
    list_identities,
)
from .report import Mismatch, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BaileyPair",
    "BindingOutOfDomain",
    "Coefficient",
    "Comparison",
    "DivergentProduct",
    "INF",
    "IdentityCase",
    "InvertNonUnit",
    "Mismatch",
    "MonomialSpec",
    "OrderExhausted",
    "PARAMS",
    "Partition",
    "Series",
    "UnknownIdentity",
    "VerificationReport",
    "andrews_pair",
    "bailey_lemma_check",
    "beta_from_alpha",
    "check_identity",
    "class_excess_I",
    "coefficient_at",
    "conjugate",
    "construct_varpi",
    "equal_up_to",
    "hecke_double_sum",
    "invert",
    "lemma_2_2_check",
    "list_identities",
    "make_monomial",
    "omega",
    "p_rN_enum",
    "p_rN_gf",
    "pair_from_name",
    "poch",
    "poch_inf",
    "rescale",
    "theorem_1_1_check",
    "thm23_pair",
    "transform_s2",
    "transform_s5",
    "unit_pair",
    "verify_pair",
    "__version__",
]
