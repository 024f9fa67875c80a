"""Certified two-sided bounds for convex functions.

Pointwise enclosures of the Ostrowski difference, composite quadrature
with certified remainders, integral-mean comparisons, CDF bounds for
monotone densities, and sandwiched divergences of discrete
distributions, plus an expression-parsing CLI.
"""

from . import catalog
from .convex_core import (
    ConvexFunction,
    ConvexityReport,
    EndpointSlopes,
    Interval,
    check_convexity,
    require_convex,
)
from .divergence import (
    KERNELS,
    DiscreteDistribution,
    DivergenceKernel,
    HHSandwich,
    chi_square_kernel,
    csiszar_divergence,
    hh_divergence,
    hh_gap_bounds,
    hh_sandwich,
    kernel_by_name,
    kl_kernel,
    lin_wong_divergence,
    reverse_kl_kernel,
    shifted_abs_kernel,
    total_variation_kernel,
)
from .errors import (
    BudgetExceededError,
    ConvexEncloseError,
    DegenerateSlopesError,
    DomainError,
    ExpressionError,
    ExtendedArithmeticError,
    InconsistentModelError,
    InternalInconsistencyError,
    InvalidDistributionError,
    NonConvexError,
    NotDifferentiableError,
    OracleFailureError,
    PartitionError,
    UnboundedSlopeError,
    UndefinedSideError,
)
from .expressions import (
    convex_function_from_expression,
    eval_expr,
    one_sided_symbolic_derivative,
    parse_expression,
    unparse,
)
from .means import (
    MeanComparison,
    SpecialMeans,
    mean_comparison,
    special_means,
    verify_mean_inequalities,
)
from .oracle import (
    ADAPTIVE_SIMPSON,
    CLOSED_FORM,
    OracleResult,
    brute_force_hh,
    reference_integral,
)
from .pointwise import (
    Enclosure,
    best_evaluation_point,
    classical_ostrowski_bound,
    differentiable_lower,
    hh_refinement,
    ostrowski_enclosure,
    ostrowski_lower,
    ostrowski_upper,
    quadratic_form_upper,
    window_enclosure,
)
from .probability import (
    RandomVariableModel,
    cdf_enclosure,
    cdf_gap_enclosure,
    expectation_from_cdf,
    exponential_density_model,
    median_point_probability,
    model_from_density,
    power_density_model,
    step_density_model,
    uniform_model,
)
from .quadrature import (
    DEFAULT_MAX_CELLS,
    Partition,
    QuadratureResult,
    differentiable_lower_form,
    integrate_adaptive,
    midpoint_rule,
    remainder_enclosure,
    remainder_upper_by_node,
    riemann_sum,
)

__version__ = "0.1.0"
