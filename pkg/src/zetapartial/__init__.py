"""Partial sums of Dedekind zeta functions of cyclotomic fields and their zeros."""
from .coefficients import (
    CoefficientTable,
    brun_set_count,
    build_b_table,
    build_c_table,
    build_coefficient_table,
    count_nonzero_coefficients,
    density_ratio,
    divisor_count,
    local_coefficient,
    powerful_squarefree_decomposition,
)
from .cyclotomic import (
    CyclotomicField,
    SplittingType,
    cyclotomic_field,
    euler_phi,
    multiplicative_order,
    splitting_type,
)
from .dirichlet_poly import (
    PartialSum,
    build_partial_sum,
    evaluate,
    evaluate_derivative,
    imag_on_horizontal,
    leading_index,
)
from .errors import (
    BoundaryZeroError,
    CapacityError,
    DomainError,
    RangeError,
    RefinementFailed,
    ZetaPartialError,
)
from .kernels import BACKEND
from .zero_engine import (
    Rectangle,
    StripBounds,
    Tolerances,
    ZeroCountResult,
    ZeroRecord,
    alpha_bound,
    alpha_paper,
    beta_bound,
    count_zeros,
    count_zeros_to_height,
    descartes_check,
    locate_zeros,
    predicted_count,
    strip_bounds,
    verify_counting,
    winding_number,
)

__version__ = "0.1.0"
