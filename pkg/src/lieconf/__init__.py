"""Exact lambda-bracket calculus for finite Lie conformal algebras.

Structure-constant presentation of algebras, axiom checking, conformal
derivations, central extensions, rank-one modules, and basic/reduced
cohomology with explicit representatives, all over exact rationals.
"""

from .algebra import (
    ConformalAlgebra,
    ModuleSpec,
    abelian,
    check_algebra_axioms,
    check_module_axioms,
    check_perfect,
    free_rank1_module,
    m_delta_alpha,
    one_dim_module,
    trivial_module,
    virasoro,
    w22,
)
from .central import ExtensionResult, h2, solve_2cocycles, trivial_2cocycles
from .cochains import Cochain, CochainComplex
from .cohomology import (
    CohomologyTable,
    basic_cohomology,
    check_homotopy,
    is_coboundary,
    reduced_cohomology,
    verify_representatives,
)
from .derivations import inner_subspace, outer_dim, solve_derivations
from .linalg import ExactMatrix, rank_kernel
from .poly import PARTIAL, Polynomial, lam, named, pvar
from .rank1 import classify_rank_one, solve_m_action

__version__ = "0.1.0"

__all__ = [
    "ConformalAlgebra",
    "ModuleSpec",
    "Cochain",
    "CochainComplex",
    "CohomologyTable",
    "ExactMatrix",
    "ExtensionResult",
    "PARTIAL",
    "Polynomial",
    "abelian",
    "basic_cohomology",
    "check_algebra_axioms",
    "check_homotopy",
    "check_module_axioms",
    "check_perfect",
    "classify_rank_one",
    "free_rank1_module",
    "h2",
    "inner_subspace",
    "is_coboundary",
    "lam",
    "m_delta_alpha",
    "named",
    "one_dim_module",
    "outer_dim",
    "pvar",
    "rank_kernel",
    "reduced_cohomology",
    "solve_2cocycles",
    "solve_derivations",
    "solve_m_action",
    "trivial_2cocycles",
    "trivial_module",
    "verify_representatives",
    "virasoro",
    "w22",
]
