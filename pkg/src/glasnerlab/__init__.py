"""Exact-arithmetic toolkit for torus density experiments with integer
polynomial matrices: condition checking, witness generation, unipotent
constructions, exponential sums, and pair statistics."""

from .intmat import (
    IntMat,
    SNFResult,
    gcd_vec,
    left_kernel_integer,
    rank_rational,
    smith_normal_form,
    verify_gcd_bound,
)
from .polymat import (
    IntPoly,
    MPoly,
    MPolyMat,
    PolyMat,
    bilinear_poly,
    coeff_matrices,
    coeff_norm,
    poly_mat_eval,
    substitute,
)
from .checker import (
    ComplexityBound,
    GlasnerVerdict,
    VerdictStatus,
    certify_generic,
    clear_to_height,
    check_pair,
    complexity_bound,
    entries_independent,
    find_violation,
    fleeing_matrix,
    full_check,
    verify_multiplicative_complexity,
)
from .expsum import HuaReport, SumResult, complete_sum, hua_experiment, orbit_average, weyl_average
from .torus import (
    DensityReport,
    PairSpectrum,
    TorusPointSet,
    eps_dense,
    fourier_statistic,
    non_glasner_witness,
    orbit_density_search,
    pair_spectrum,
    weighted_spectrum_sum,
)
from .unipotent import (
    IrreducibilityStatus,
    IrreducibilityVerdict,
    SubstitutionPlan,
    UnipotentSystem,
    adjoint_rep,
    cayley_affine_span_dim,
    cayley_span_dim,
    certify_irreducible,
    construct_polynomial,
    is_unipotent,
    substitution_plan,
    symbolic_power,
    word_product,
)

__version__ = "0.1.0"
