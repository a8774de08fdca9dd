"""Infinite products, q-series and continued fractions, with conversions between
them, divergent-series summation and QD/Toda eigenvalue iteration."""

from ._numeric import DEFAULT_DIGITS, bareiss_det, det, fmt, hankel, precision
from .cases import CASES, CaseReport, Config, emit_report, list_cases, run_case
from .contfrac import (
    AdaptiveResult, ContinuedFraction, TridiagTruncation, cdd_value, convergents, evaluate,
    evaluate_adaptive, normal_to_standard, standard_to_normal, tridiagonal_determinant,
)
from .divergent import (
    PROBLEMS, Classification, SummationResult, average_limit, classify, diagnose,
    p_substitute, sum_problem, summate, wallis_cf, wallis_cf_value, wallis_integral,
)
from .errors import (
    BreakdownError, ClassificationError, ConvergenceError, DegenerateError, DomainError,
    ExhaustedError, PoleError, ZeroFactorError,
)
from .qdtoda import (
    TauTable, TodaState, TridiagonalMatrix, householder_tridiagonalize, lr_init, lr_step,
    qd_eigenvalues, tau_hankel,
)
from .qseries import (
    CATALOG, DivergenceWarning, ProductFactor, ProductSpec, QPoch, SeriesSpec, jacobi_sides,
    klein_coordinates, partial_sum, partial_sums, pochhammer, q_pochhammer, quotient_partial,
    series, term, terms, truncated_product,
)
from .transforms import (
    HankelLadder, contiguous_check, euler_cf, euler_inverse, euler_product_cf, extended_cf,
    gauss_heine_cf, muir_cf, muir_rogers_cf, muir_rogers_inverse, ramanujan_cf,
)

__version__ = "0.1.0"
