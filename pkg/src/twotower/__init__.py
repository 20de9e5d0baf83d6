"""Quadratic class groups, Redei matrices, and 2-class field tower criteria."""

from .arith import (
    PrimeDiscriminant,
    QuadFieldSpec,
    crt_prime_search,
    factor,
    is_fundamental,
    is_prime,
    kronecker,
    prime_disc_factorization,
    sqrt_mod_prime,
)
from .quadforms import (
    AbelianGroupStructure,
    PrimeClassInfo,
    QuadForm,
    compose,
    inverse,
    narrow_class_group,
    negative_pell_solvable,
    prime_class_info,
    prime_form,
    principal_form,
    reduce_form,
    wide_class_group,
)
from .redei import (
    CaseId,
    RedeiMatrix,
    catalog_text,
    classify_open_case,
    f2_rank,
    four_rank_narrow,
    redei_matrix,
    two_ranks,
)
from .search import complete_tuple, dmw_family, find_base_fields, lopez_family
from .splitlab import explore_symbol_dependence, verify_imag_triple, verify_real_pair
from .tower import (
    Certificate,
    TowerReport,
    analyze,
    gs_infinite,
    gs_required,
    kl_rank_lower_bound,
    lemma_mixed_pair,
    lemma_pos_pair,
    lemma_triple,
    replay_certificate,
    splitting_count,
)

__all__ = [
    "AbelianGroupStructure",
    "CaseId",
    "Certificate",
    "PrimeClassInfo",
    "PrimeDiscriminant",
    "QuadFieldSpec",
    "QuadForm",
    "RedeiMatrix",
    "TowerReport",
    "analyze",
    "catalog_text",
    "classify_open_case",
    "complete_tuple",
    "compose",
    "crt_prime_search",
    "dmw_family",
    "explore_symbol_dependence",
    "f2_rank",
    "factor",
    "find_base_fields",
    "four_rank_narrow",
    "gs_infinite",
    "gs_required",
    "inverse",
    "is_fundamental",
    "is_prime",
    "kl_rank_lower_bound",
    "kronecker",
    "lemma_mixed_pair",
    "lemma_pos_pair",
    "lemma_triple",
    "lopez_family",
    "narrow_class_group",
    "negative_pell_solvable",
    "prime_class_info",
    "prime_disc_factorization",
    "prime_form",
    "principal_form",
    "redei_matrix",
    "reduce_form",
    "replay_certificate",
    "splitting_count",
    "sqrt_mod_prime",
    "two_ranks",
    "verify_imag_triple",
    "verify_real_pair",
    "wide_class_group",
]
