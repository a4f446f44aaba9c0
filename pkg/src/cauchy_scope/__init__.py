"""Meromorphic extension from boundary samples, with winding-number certificates."""

__version__ = "0.1.0"

from .certificates import (
    CertificateKind,
    Completion,
    NoFalsifier,
    WindingCertificate,
    cesaro_witness,
    constrained_q_check,
    falsify,
    zero_free_completion,
)
from .errors import (
    CauchyScopeError,
    CompletionError,
    ConditioningError,
    DomainError,
    InputError,
    ParseError,
    PreconditionError,
    ResolutionError,
    RootClassificationError,
    SearchError,
    WindingUndefinedError,
)
from .extension import MeromorphicReport, Verdict, cauchy_extend, detect_meromorphic, minimal_budget
from .hankel import annihilator, build_system, numeric_rank, rank_report
from .oracle import RationalFunction, exact_negative_coefficients, exact_winding, random_rational
from .polynomial import ComplexPolynomial
from .spectrum import (
    BoundarySamples,
    FourierSpectrum,
    analytic_split,
    evaluate_series,
    fourier_coefficients,
    sample,
    synthesize,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .winding import WindingResult, composite_winding, winding_number
