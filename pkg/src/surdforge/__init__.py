"""Exact Pell search, descent and periodic continued fractions for square roots."""

from .contfrac import (
    ContinuedFraction,
    PeriodicityCertificate,
    approximation_report,
    cf_rational,
    cf_sqrt,
    cf_surd,
    convergents,
    irrationality_certificate,
    periodic_fixed_point,
    reconstruct_rational,
    verify_periodicity_certificate,
)
from .errors import (
    DegeneratePeriodError,
    InvalidParameterError,
    InvalidSurdError,
    NotDescendableError,
    NotFiniteError,
    OutOfRangeError,
    SurdforgeError,
)
from .numeric import (
    Rational,
    Surd,
    divmod_floor,
    gcd,
    is_perfect_square,
    isqrt,
    surd_equal,
    surd_floor,
    surd_normalize,
    surd_reciprocal_of_fractional_part,
)
from .pell import (
    DescentCertificate,
    Pair,
    SearchResult,
    compose_solutions,
    descent_chain,
    descent_no_solution_certificate,
    empirical_min_search,
    fundamental_solution,
    generate_unit_solutions,
    sign_flip_identity_check,
    step_down,
    step_up,
    unit_solutions_in_box,
    verify_descent_certificate,
)

__version__ = "0.1.0"
