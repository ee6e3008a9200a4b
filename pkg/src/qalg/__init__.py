"""Exact structure theory for finite-dimensional associative algebras over Q.

The package computes Jacobson radicals, semisimple quotients, and full
two-sided decompositions into simple factors from structure constants alone,
lifts idempotents and projective modules through nilpotent ideals, and
evaluates a family of essential-dimension style numerical bounds driven by
that structure data. All arithmetic is exact rational arithmetic.
"""

from .algebra import (
    FDAlgebra,
    QuotientPresentation,
    Subspace,
    direct_product,
    dual_numbers,
    group_algebra,
    matrix_algebra,
    matrix_over,
    quaternions,
    quotient_by_ideal,
    subalgebra_on,
    upper_triangular,
)
from .edbounds import (
    KINDS,
    CSADescriptor,
    EdBoundReport,
    Partition,
    PartitionCheck,
    bound_csa,
    bound_division,
    bound_from_wedderburn,
    bound_matrix_over_simple,
    bundle_moduli_ed,
    ckm_value,
    enumerate_partitions,
    is_prime,
    karpenko_value,
    nil_stack_dim,
    partition_square_sum_check,
    prime_factors,
    severi_brauer_dim,
    trdeg_bound_indecomposable,
    trdeg_bound_nonsimple,
    vb_field_of_moduli_defect_bound,
    vp,
)
from .errors import (
    AlgebraMismatchError,
    BadPrimeError,
    MalformedTableError,
    NoSolutionError,
    NotAnIdealError,
    NotDivisorError,
    NotIdempotentError,
    NotNilpotentError,
    NotSemisimpleError,
    NotSimpleError,
    QalgError,
    RankNotRealizableError,
    UnknownIndexError,
    ValidationError,
)
from .linalg import (
    Mat,
    Rat,
    as_vector,
    kernel_basis,
    minimal_polynomial,
    rank,
    rat,
    rat_from_str,
    rat_to_str,
    rref,
    solve_linear,
)
from .modules import (
    IdempotentMatrix,
    ProjectiveModuleDescriptor,
    lift_idempotent,
    lift_idempotent_matrix,
    lift_idempotent_with_count,
    modules_isomorphic,
    peirce_corner,
    projective_module,
    rank_realizable,
    rank_vector,
    refine_to_idempotent,
)
from .poly import Poly
from .polyfactor import Factorization, factor_mod_p, factor_rational, squarefree_decomposition
from .structure import (
    RadicalReport,
    SimpleFactorData,
    WedderburnReport,
    central_primitive_idempotents,
    is_semisimple,
    jacobson_radical,
    try_matrix_size,
    wedderburn_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMismatchError",
    "BadPrimeError",
    "CSADescriptor",
    "EdBoundReport",
    "FDAlgebra",
    "Factorization",
    "IdempotentMatrix",
    "KINDS",
    "MalformedTableError",
    "Mat",
    "NoSolutionError",
    "NotAnIdealError",
    "NotDivisorError",
    "NotIdempotentError",
    "NotNilpotentError",
    "NotSemisimpleError",
    "NotSimpleError",
    "Partition",
    "PartitionCheck",
    "Poly",
    "ProjectiveModuleDescriptor",
    "QalgError",
    "QuotientPresentation",
    "RadicalReport",
    "RankNotRealizableError",
    "Rat",
    "SimpleFactorData",
    "Subspace",
    "UnknownIndexError",
    "ValidationError",
    "WedderburnReport",
    "as_vector",
    "bound_csa",
    "bound_division",
    "bound_from_wedderburn",
    "bound_matrix_over_simple",
    "bundle_moduli_ed",
    "central_primitive_idempotents",
    "ckm_value",
    "direct_product",
    "dual_numbers",
    "enumerate_partitions",
    "factor_mod_p",
    "factor_rational",
    "group_algebra",
    "is_prime",
    "is_semisimple",
    "jacobson_radical",
    "karpenko_value",
    "kernel_basis",
    "lift_idempotent",
    "lift_idempotent_matrix",
    "lift_idempotent_with_count",
    "matrix_algebra",
    "matrix_over",
    "minimal_polynomial",
    "modules_isomorphic",
    "nil_stack_dim",
    "partition_square_sum_check",
    "peirce_corner",
    "prime_factors",
    "projective_module",
    "quaternions",
    "quotient_by_ideal",
    "rank",
    "rank_realizable",
    "rank_vector",
    "rat",
    "rat_from_str",
    "rat_to_str",
    "refine_to_idempotent",
    "rref",
    "severi_brauer_dim",
    "solve_linear",
    "squarefree_decomposition",
    "subalgebra_on",
    "trdeg_bound_indecomposable",
    "trdeg_bound_nonsimple",
    "try_matrix_size",
    "upper_triangular",
    "vb_field_of_moduli_defect_bound",
    "vp",
    "wedderburn_decomposition",
]
