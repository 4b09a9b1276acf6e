"""rankfreq: local frequency-count reestimation, rank-frequency asymptotics,
and count-based probability smoothing, tied together by one real parameter.

The reestimation rule x* = (x + theta) N_{x+1}/N_x interpolates between
Turing's rule (theta=1, exponential rank law) and the inverse rank law
(theta=2); its cumulative converges exactly for theta in [1, 2). The package
provides the discrete identities, the closed-form laws, fitting and smoothing
on empirical counts, seeded population sampling, and numerical verification
of the family's error bounds.
"""

from .asymptote import (
    AsymptoteSpec,
    GeometricRankLaw,
    PowerAsymptote,
    TuringAsymptote,
    ZipfAsymptote,
    beta_of_theta,
    converges,
    cumulative,
    cumulative_discrete,
    frequency_at,
    geometric_pmf,
    normalize,
    theta_of_beta,
)
from .corpus import CorpusConfig, tokenize_and_count
from .estimation import (
    FitFailureError,
    RankFrequencySeries,
    SmoothedDistribution,
    ThetaFit,
    build_ranking,
    default_tail_start,
    fit_theta,
    geometric_tail_smooth,
    good_turing_smooth,
    rank_series_from_counts,
)
from .histogram import (
    FrequencyHistogram,
    SpeciesCounts,
    UndefinedReestimateError,
    build_histogram,
    ideal_histogram,
    validate_counts,
)
from .simulation import (
    PopulationModel,
    ReestimationReport,
    ReestimationRow,
    empirical_reestimation_report,
    sample_histogram,
    sample_tokens,
)
from .verification import (
    BoundReport,
    BoundRow,
    general_bound_check,
    integral_convergence_probe,
    is_bounded_sequence,
    product_approx_check,
    turing_bound_check,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoteSpec",
    "BoundReport",
    "BoundRow",
    "CorpusConfig",
    "FitFailureError",
    "FrequencyHistogram",
    "GeometricRankLaw",
    "PopulationModel",
    "PowerAsymptote",
    "RankFrequencySeries",
    "ReestimationReport",
    "ReestimationRow",
    "SmoothedDistribution",
    "SpeciesCounts",
    "ThetaFit",
    "TuringAsymptote",
    "UndefinedReestimateError",
    "ZipfAsymptote",
    "beta_of_theta",
    "build_histogram",
    "build_ranking",
    "converges",
    "cumulative",
    "cumulative_discrete",
    "default_tail_start",
    "empirical_reestimation_report",
    "fit_theta",
    "frequency_at",
    "general_bound_check",
    "geometric_pmf",
    "geometric_tail_smooth",
    "good_turing_smooth",
    "ideal_histogram",
    "integral_convergence_probe",
    "is_bounded_sequence",
    "normalize",
    "product_approx_check",
    "rank_series_from_counts",
    "sample_histogram",
    "sample_tokens",
    "theta_of_beta",
    "tokenize_and_count",
    "turing_bound_check",
    "validate_counts",
    "__version__",
]
