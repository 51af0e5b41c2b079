"""ramseykit: computational partition Ramsey theory.

Decides partition regularity of integer linear systems via the columns
condition, builds and finds Deuber (m, p, c)-towers, manipulates
IP-systems and finite sums, generates central-set/D-set candidates as
return-time sets of exact dynamical systems, and searches finite-scale
witnesses of the Central Sets Theorem conclusion.
"""

from .cst import CstWitness, MpcFromCstResult, cst_search, mpc_from_cst, verify_cst_witness
from .deuber import MpcParams, MpcSystem, contains_mpc, generate_mpc, mpc_size, verify_mpc
from .dynsets import (
    Arc,
    Cylinder,
    DensityReport,
    OrbitResult,
    ProductSystem,
    ProductTarget,
    RotationSystem,
    ShiftSystem,
    StraussResult,
    banach_density_estimate,
    orbit_hits,
    piecewise_syndetic_window,
    product_return_times,
    strauss_set,
    syndetic_gap,
)
from .errors import (
    BudgetExceededError,
    DegenerateMatrixError,
    InputError,
    MpcExpansionError,
)
from .exactq import Rational, RationalMatrix, in_column_span, rank, solve_linear
from .ipcore import (
    FiniteIndexSet,
    IPSystemSpec,
    alpha_less,
    find_divisible_subsequence,
    fs_enumerate,
    ip_term,
    zero_sum_mod,
)
from .rado import (
    Coloring,
    ColumnsCertificate,
    EmpiricalResult,
    SolutionVector,
    columns_condition,
    empirical_pr,
    schur_number,
    single_equation_pr,
    solve_in_cell,
    vdw_number,
    verify_certificate,
)
from .windows import SetWindow

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BudgetExceededError",
    "Coloring",
    "ColumnsCertificate",
    "CstWitness",
    "Cylinder",
    "DegenerateMatrixError",
    "DensityReport",
    "EmpiricalResult",
    "FiniteIndexSet",
    "IPSystemSpec",
    "InputError",
    "MpcExpansionError",
    "MpcFromCstResult",
    "MpcParams",
    "MpcSystem",
    "OrbitResult",
    "ProductSystem",
    "ProductTarget",
    "Rational",
    "RationalMatrix",
    "RotationSystem",
    "SetWindow",
    "ShiftSystem",
    "SolutionVector",
    "StraussResult",
    "alpha_less",
    "banach_density_estimate",
    "columns_condition",
    "contains_mpc",
    "cst_search",
    "empirical_pr",
    "find_divisible_subsequence",
    "fs_enumerate",
    "generate_mpc",
    "in_column_span",
    "ip_term",
    "mpc_from_cst",
    "mpc_size",
    "orbit_hits",
    "piecewise_syndetic_window",
    "product_return_times",
    "rank",
    "schur_number",
    "single_equation_pr",
    "solve_in_cell",
    "solve_linear",
    "strauss_set",
    "syndetic_gap",
    "vdw_number",
    "verify_certificate",
    "verify_cst_witness",
    "verify_mpc",
    "zero_sum_mod",
]
