"""Confidence levels for hypotheses, derived from summary statistics or p-values.

A result's null sampling distribution, slid along to centre on the observed
estimate, serves as a confidence distribution. Confidence in ``x > 1`` is its
mass above 1; confidence in ``x > 0`` follows directly from a two-tailed p.
A discrete uniform-prior Bayesian grid engine and Monte Carlo calibration
harness check the construction independently.
"""

__version__ = "0.1.0"

from .errors import (
    BoundInversionError,
    ConflevelError,
    DegenerateVarianceError,
    DomainError,
    MissingHeaderError,
    OutOfGridError,
    TruncationError,
    UnprocessableRowError,
    UnsupportedComplementError,
)
from .specialfn import Normal, StudentT, dist_cdf, dist_pdf, dist_quantile, log_gamma, reg_inc_beta
from .model import (
    Between,
    ConfidenceDistribution,
    ConfidenceStatement,
    GreaterThan,
    Kind,
    LessThan,
    SampleSummary,
    TwoGroupData,
    VarianceRule,
    hypothesis_complement,
    parse_hypothesis,
    summarize_two_groups,
)
from .inference import (
    EstimateSign,
    ParameterContext,
    check_applicability,
    confidence_distribution,
    confidence_interval,
    confidence_level,
    confidence_to_p,
    format_percent,
    p_to_confidence,
    star_bound,
    two_tailed_p,
)
from .bayes_grid import (
    ParameterGrid,
    discretize_null,
    grid_confidence,
    posterior,
    shifted_likelihood,
    verify_shift_identity,
)
from .calibrate import SummaryShape, coverage_experiment, posterior_calibration
from .tables import annotate_row, emit_report, parse_results_csv
from .plot import render_confidence_plot
