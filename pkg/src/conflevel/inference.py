"""Confidence distributions, confidence levels and p-value conversions.

The confidence distribution of a result is its null sampling distribution
slid along so that it is centred on the observed estimate. Confidence in a
hypothesis about the parameter is then the mass of that distribution over
the region where the hypothesis holds.

Example
-------
>>> from conflevel import SampleSummary, StudentT, GreaterThan
>>> s = SampleSummary(1.07, 1.07 / 2.40, StudentT(40))
>>> cd = confidence_distribution(s)
>>> format_percent(confidence_level(cd, GreaterThan(1)).confidence)
'56.2%'
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .errors import BoundInversionError, DomainError
from .model import (
    Between,
    ConfidenceDistribution,
    ConfidenceStatement,
    GreaterThan,
    Hypothesis,
    Kind,
    LessThan,
    SampleSummary,
)
from .specialfn import dist_cdf, dist_quantile

__all__ = [
    "EstimateSign",
    "ParameterContext",
    "Applicability",
    "two_tailed_p",
    "confidence_distribution",
    "confidence_level",
    "confidence_interval",
    "p_to_confidence",
    "confidence_to_p",
    "star_bound",
    "check_applicability",
    "round_half_away",
    "format_percent",
]


class EstimateSign(enum.Enum):
    NON_NEGATIVE = "non-negative"
    NEGATIVE = "negative"

    @classmethod
    def of(cls, estimate: float) -> "EstimateSign":
        return cls.NON_NEGATIVE if estimate >= 0 else cls.NEGATIVE


class ParameterContext(enum.Enum):
    SCALAR_PARAMETER = "scalar"
    NON_NEGATIVE_STATISTIC = "non-negative-statistic"
    NON_SCALAR = "non-scalar"


@dataclass(frozen=True)
class Applicability:
    applicable: bool
    reason: str


def two_tailed_p(s: SampleSummary, null_value: float = 0.0) -> float:
    """Two-tailed p-value of ``s`` against the null ``x = null_value``."""
    z = abs(s.estimate - null_value) / s.standard_error
    # lower tail keeps precision where 1 - cdf(z) would round to zero
    return min(1.0, 2.0 * dist_cdf(s.family, -z))


def confidence_distribution(s: SampleSummary) -> ConfidenceDistribution:
    return ConfidenceDistribution(center=s.estimate, scale=s.standard_error, family=s.family)


def _mass_above(cd, c):
    return 1.0 - dist_cdf(cd.family, (c - cd.center) / cd.scale)


def _mass_below(cd, c):
    return dist_cdf(cd.family, (c - cd.center) / cd.scale)


def confidence_level(cd: ConfidenceDistribution, h: Hypothesis) -> ConfidenceStatement:
    """Confidence that the parameter satisfies ``h``.

    Strict and non-strict inequalities coincide because the boundary point
    carries no mass.
    """
    if isinstance(h, GreaterThan):
        conf = _mass_above(cd, h.threshold)
    elif isinstance(h, LessThan):
        conf = _mass_below(cd, h.threshold)
    elif isinstance(h, Between):
        conf = _mass_below(cd, h.hi) - _mass_below(cd, h.lo)
    else:
        raise TypeError(f"unsupported hypothesis: {h!r}")
    conf = min(1.0, max(0.0, conf))
    return ConfidenceStatement(h, conf, Kind.EXACT, source=f"confidence distribution {_describe(cd)}")


def _describe(cd):
    return f"{cd.family} centred at {cd.center:g}, scale {cd.scale:g}"


def confidence_interval(cd: ConfidenceDistribution, level: float) -> tuple[float, float]:
    """Equal-tailed interval holding ``level`` of the confidence distribution."""
    if not (0.0 < level < 1.0):
        raise DomainError(f"confidence level must lie in (0, 1), got {level!r}")
    q = dist_quantile(cd.family, 0.5 * (1.0 - level))
    half = -q * cd.scale
    return cd.center - half, cd.center + half


def p_to_confidence(p: float, estimate_sign: EstimateSign) -> ConfidenceStatement:
    """Confidence that the parameter exceeds zero, from a two-tailed p-value.

    Returns ``1 - p/2`` for a non-negative estimate and ``p/2`` otherwise.
    """
    if not (0.0 < p <= 1.0):
        raise DomainError(f"p-value must lie in (0, 1], got {p!r}")
    sign = EstimateSign(estimate_sign)
    conf = 1.0 - 0.5 * p if sign is EstimateSign.NON_NEGATIVE else 0.5 * p
    return ConfidenceStatement(GreaterThan(0.0), conf, Kind.EXACT, source=f"two-tailed p = {p:g}")


def confidence_to_p(statement: ConfidenceStatement) -> float:
    """Recover the two-tailed p-value behind an exact ``x > 0`` statement."""
    if statement.kind is not Kind.EXACT:
        raise BoundInversionError(
            f"a {statement.kind.value} statement only bounds p and cannot be inverted"
        )
    if statement.hypothesis != GreaterThan(0.0):
        raise DomainError(f"only statements about x > 0 map to a p-value, got {statement.hypothesis}")
    c = statement.confidence
    if not (0.0 < c < 1.0):
        raise DomainError(f"confidence must lie in (0, 1), got {c!r}")
    return 2.0 * (1.0 - c) if c >= 0.5 else 2.0 * c


def star_bound(alpha: float, estimate_sign: EstimateSign, token: str | None = None) -> ConfidenceStatement:
    """Bound on confidence in ``x > 0`` implied by a reported ``p < alpha``.

    A positive estimate yields a lower bound ``1 - alpha/2``; a negative one
    an upper bound ``alpha/2``.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    sign = EstimateSign(estimate_sign)
    source = f"p < {alpha:g}" + (f" (star '{token}')" if token else "")
    if sign is EstimateSign.NON_NEGATIVE:
        return ConfidenceStatement(GreaterThan(0.0), 1.0 - 0.5 * alpha, Kind.LOWER_BOUND, source)
    return ConfidenceStatement(GreaterThan(0.0), 0.5 * alpha, Kind.UPPER_BOUND, source)


_REJECTIONS = {
    ParameterContext.NON_NEGATIVE_STATISTIC: (
        "statistic is bounded below by zero and measures departure from a random "
        "model without a direction (e.g. chi-square, ANOVA F, goodness of fit); "
        "the null value sits at the end of the scale, so there is no confidence "
        "distribution to slide and no directional hypothesis to assess"
    ),
    ParameterContext.NON_SCALAR: (
        "parameter is not a point on a numerical scale (e.g. a shape hypothesis "
        "such as an inverted U relationship); shifting a null distribution is "
        "meaningless here"
    ),
}


def check_applicability(s: SampleSummary | None, context: ParameterContext) -> Applicability:
    """Decide whether the shifted-null construction applies to a result."""
    context = ParameterContext(context)
    if context in _REJECTIONS:
        return Applicability(False, _REJECTIONS[context])
    family = "the supplied family" if s is None else str(s.family)
    return Applicability(
        True, f"scalar parameter with symmetric null model ({family}); shifted-null construction applies"
    )


def round_half_away(value: float, decimals: int = 0) -> float:
    """Round with ties going away from zero (not to even)."""
    if not math.isfinite(value):
        return value
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def format_percent(confidence: float, decimals: int = 1) -> str:
    """``0.98944`` -> ``'98.9%'``."""
    return f"{round_half_away(100.0 * confidence, decimals):.{decimals}f}%"
