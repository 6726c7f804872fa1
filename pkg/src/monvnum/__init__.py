"""Monomial ideals, associated primes of powers and v-numbers."""

from .assoc import (
    CertifiedPrimes,
    PrimeSet,
    StabilizationConfig,
    StabilizationReport,
    ass,
    ass_infty,
    ass_power,
    ass_product,
    ass_star,
    ass_sum_infty,
    ass_sum_power,
    is_associated,
)
from .core import (
    AmbientRing,
    Monomial,
    MonomialIdeal,
    MonomialPrime,
    alpha,
    as_prime,
    colon_ideal,
    colon_monomial,
    contains,
    ideal_sum,
    intersect,
    lcm_gens,
    localize,
    minimalize,
    mu,
    power,
    product,
    saturate,
    saturate_fast,
    support,
)
from .errors import (
    BudgetExceededError,
    HypothesisError,
    ImproperIdealError,
    MonvnumError,
    NotAssociatedError,
    RingMismatchError,
    SupportOverlapError,
)
from .vnumber import (
    LinearFit,
    VTable,
    fit_linear,
    v_function,
    lower_bound,
    v_local,
    v_local_all,
    v_number,
    v_product,
    v_product_local,
    v_sum,
    v_sum_local,
    x_ideal,
)

from .oracle import (
    WitnessRecord,
    oracle_ass,
    oracle_v,
    oracle_v_local,
)
from .structure import (
    Graph,
    Leaf,
    Node,
    VBound,
    ci_ass,
    ci_v,
    ci_v_line,
    components,
    disjoint_sum_vbound,
    edge_ideal,
    edge_v_asymptotic,
    graph_component_count,
    is_complete_intersection,
    vertex_split,
    vertex_splittable_v,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientRing",
    "BudgetExceededError",
    "CertifiedPrimes",
    "Graph",
    "HypothesisError",
    "ImproperIdealError",
    "Leaf",
    "LinearFit",
    "Monomial",
    "MonomialIdeal",
    "MonomialPrime",
    "MonvnumError",
    "Node",
    "NotAssociatedError",
    "PrimeSet",
    "RingMismatchError",
    "StabilizationConfig",
    "StabilizationReport",
    "SupportOverlapError",
    "VBound",
    "VTable",
    "WitnessRecord",
    "alpha",
    "as_prime",
    "ass",
    "ass_infty",
    "ass_power",
    "ass_product",
    "ass_star",
    "ass_sum_infty",
    "ass_sum_power",
    "ci_ass",
    "ci_v",
    "ci_v_line",
    "colon_ideal",
    "colon_monomial",
    "components",
    "contains",
    "disjoint_sum_vbound",
    "edge_ideal",
    "edge_v_asymptotic",
    "fit_linear",
    "graph_component_count",
    "ideal_sum",
    "intersect",
    "is_associated",
    "is_complete_intersection",
    "lcm_gens",
    "localize",
    "lower_bound",
    "minimalize",
    "mu",
    "oracle_ass",
    "oracle_v",
    "oracle_v_local",
    "power",
    "product",
    "saturate",
    "saturate_fast",
    "support",
    "v_function",
    "v_local",
    "v_local_all",
    "v_number",
    "v_product",
    "v_product_local",
    "v_sum",
    "v_sum_local",
    "vertex_split",
    "vertex_splittable_v",
    "x_ideal",
]
