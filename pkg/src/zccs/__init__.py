"""Type-II Z-complementary code sets and complete complementary codes from
path/vertex graph functions, with exhaustive correlation checks."""

__version__ = "0.1.0"

from .seqcore import PhaseSequence, ResidueSum, CorrelationProfile, accs, full_profile, code_ccs, is_zero
from .mvf import MvfSpec, PathGraph, index_decode, index_encode, eval_quadratic, eval_F, chi, walsh_dot
from .construct import (CodeSet, ConstructionParams, ParameterError, build_code_set, build_ccc,
                        uncorrelated_pairs)
from .verify import (ZccsReport, Witness, classify, certify, row_pmepr_bound, measured_pmepr,
                     column_sequences)

__all__ = [
    "PhaseSequence", "ResidueSum", "CorrelationProfile", "accs", "full_profile", "code_ccs", "is_zero",
    "MvfSpec", "PathGraph", "index_decode", "index_encode", "eval_quadratic", "eval_F", "chi", "walsh_dot",
    "CodeSet", "ConstructionParams", "ParameterError", "build_code_set", "build_ccc", "uncorrelated_pairs",
    "ZccsReport", "Witness", "classify", "certify", "row_pmepr_bound", "measured_pmepr", "column_sequences",
]
