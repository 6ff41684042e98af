"""Spherical 3-design toolkit.

Constructs explicit point sets on S^d that average polynomials up to degree
three exactly, verifies the design property through harmonic and moment
sums, and determines maximal signed-sum-free residue sets by exhaustive
search.
"""

from .compose import (
    MergeCoefficients,
    antipodal_double,
    antipodal_lift,
    lift_coefficients,
    merge_antipodal_coefficients,
    merge_coefficients,
    merge_designs,
    merge_designs_antipodal,
    octahedron,
)
from .harmonic import (
    DesignMatrix,
    HarmonicPolynomial,
    VerificationReport,
    default_tolerance,
    evaluate_sum,
    harmonic_basis,
    harmonic_dim,
    moment_check,
    verify_design,
)
from .planner import (
    Feasibility,
    Recipe,
    RecipeKind,
    Status,
    build,
    classify,
    conjectured_size_threshold,
    dgs_bound,
    plan,
    regular_nonexistence_scan,
    results_table,
)
from .regular import RegularRecipe, build_regular, trig_rows
from .sidon import (
    SidonSearchResult,
    SidonSet,
    Violation,
    conjecture_table,
    construct_bound_set,
    find_violation,
    is_sidon,
    lower_bound_size,
    max_sidon_search,
)

__version__ = "0.1.0"

__all__ = [
    "DesignMatrix",
    "Feasibility",
    "HarmonicPolynomial",
    "MergeCoefficients",
    "Recipe",
    "RecipeKind",
    "RegularRecipe",
    "SidonSearchResult",
    "SidonSet",
    "Status",
    "VerificationReport",
    "Violation",
    "antipodal_double",
    "antipodal_lift",
    "build",
    "build_regular",
    "classify",
    "conjecture_table",
    "conjectured_size_threshold",
    "construct_bound_set",
    "default_tolerance",
    "dgs_bound",
    "evaluate_sum",
    "find_violation",
    "harmonic_basis",
    "harmonic_dim",
    "is_sidon",
    "lift_coefficients",
    "lower_bound_size",
    "max_sidon_search",
    "merge_antipodal_coefficients",
    "merge_coefficients",
    "merge_designs",
    "merge_designs_antipodal",
    "moment_check",
    "octahedron",
    "plan",
    "regular_nonexistence_scan",
    "results_table",
    "trig_rows",
    "verify_design",
]
