"""Exact computations with rank-metric codes and the subspace designs they hold."""

from .am import AMReport, InvarianceError, am_hypothesis, am_run, mrd_trivial_design_equivalence, support_design
from .codes import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    CodeError,
    HypothesisError,
    InconsistencyError,
    MatrixCode,
    VectorCode,
    WeightDistribution,
    append_zero_column_code,
    codewords_with_support_in,
    covering_radius,
    dual,
    dual_vector,
    dual_weight_distribution,
    expand,
    external_distance,
    gabidulin,
    is_dually_qmrd,
    is_mrd,
    macwilliams,
    min_distance,
    puncture,
    punctured_wd_from_dual_weights,
    shorten,
    singleton_bound,
    weight_distribution,
)
from .designs import (
    DesignCheck,
    DesignError,
    DesignInstance,
    Invariance,
    dual_design,
    enumerate_subspaces,
    intersection_number,
    is_u_invariant,
    supports_of_rank,
    verify_design,
)
from .gf import GF, ExtField, Field, FieldElement, FieldError, trace, trace_dual_basis
from .linalg import FqMatrix, Subspace, basis_change_matrix, inverse, kernel, orthogonal_complement, rank, rref, support
from .qcomb import q_binomial, q_pascal_system

__version__ = "0.1.0"
