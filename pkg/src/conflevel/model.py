"""Value types shared by every inference path."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DegenerateVarianceError, DomainError, UnsupportedComplementError
from .specialfn import DistFamily, Normal, StudentT

__all__ = [
    "SampleSummary",
    "TwoGroupData",
    "GreaterThan",
    "LessThan",
    "Between",
    "Hypothesis",
    "ConfidenceDistribution",
    "Kind",
    "ConfidenceStatement",
    "VarianceRule",
    "summarize_two_groups",
    "hypothesis_complement",
    "parse_hypothesis",
    "hypothesis_code",
]


def _check_family(family):
    if not isinstance(family, (StudentT, Normal)):
        raise TypeError(f"unsupported distribution family: {family!r}")


@dataclass(frozen=True)
class SampleSummary:
    """Point estimate, standard error and null-model family of one result."""

    estimate: float
    standard_error: float
    family: DistFamily = field(default_factory=Normal)
    label: Optional[str] = None

    def __post_init__(self):
        if not math.isfinite(self.estimate):
            raise DomainError(f"estimate must be finite, got {self.estimate!r}")
        if not (self.standard_error > 0) or math.isinf(self.standard_error):
            raise DomainError(f"standard error must be positive, got {self.standard_error!r}")
        _check_family(self.family)


@dataclass(frozen=True)
class TwoGroupData:
    group_a: tuple
    group_b: tuple

    def __post_init__(self):
        object.__setattr__(self, "group_a", tuple(float(v) for v in self.group_a))
        object.__setattr__(self, "group_b", tuple(float(v) for v in self.group_b))
        if len(self.group_a) < 2 or len(self.group_b) < 2:
            raise DomainError("each group needs at least two observations")


@dataclass(frozen=True)
class GreaterThan:
    threshold: float

    def __str__(self):
        return f"x > {self.threshold:g}"


@dataclass(frozen=True)
class LessThan:
    threshold: float

    def __str__(self):
        return f"x < {self.threshold:g}"


@dataclass(frozen=True)
class Between:
    """Interval hypothesis lo < x < hi (an extension beyond one-sided claims)."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"Between needs lo < hi, got ({self.lo}, {self.hi})")

    def __str__(self):
        return f"{self.lo:g} < x < {self.hi:g}"


Hypothesis = Union[GreaterThan, LessThan, Between]


def parse_hypothesis(text: str) -> Hypothesis:
    """Parse the compact ``gt:1`` / ``lt:0`` / ``between:a,b`` spelling."""
    form, _, arg = text.strip().partition(":")
    form = form.lower()
    try:
        if form == "gt":
            return GreaterThan(float(arg))
        if form == "lt":
            return LessThan(float(arg))
        if form == "between":
            lo, hi = arg.split(",")
            return Between(float(lo), float(hi))
    except ValueError as exc:
        raise DomainError(f"bad hypothesis {text!r}: {exc}") from None
    raise DomainError(f"unknown hypothesis form {text!r}; expected gt:c, lt:c or between:a,b")


def hypothesis_code(h: Hypothesis) -> str:
    """Inverse of :func:`parse_hypothesis`."""
    if isinstance(h, GreaterThan):
        return f"gt:{h.threshold!r}"
    if isinstance(h, LessThan):
        return f"lt:{h.threshold!r}"
    return f"between:{h.lo!r},{h.hi!r}"


def hypothesis_complement(h: Hypothesis) -> Hypothesis:
    """Swap ``x > c`` and ``x < c``.

    ``Between`` is rejected: its complement is a union of two rays.
    """
    if isinstance(h, GreaterThan):
        return LessThan(h.threshold)
    if isinstance(h, LessThan):
        return GreaterThan(h.threshold)
    raise UnsupportedComplementError(f"{h} has no single-hypothesis complement")


@dataclass(frozen=True)
class ConfidenceDistribution:
    """The null family relocated to ``center`` and rescaled by ``scale``."""

    center: float
    scale: float
    family: DistFamily

    def __post_init__(self):
        if not (self.scale > 0) or math.isinf(self.scale):
            raise DomainError(f"scale must be positive, got {self.scale!r}")
        _check_family(self.family)

    def cdf(self, x: float) -> float:
        return self.family.cdf((x - self.center) / self.scale)

    def pdf(self, x: float) -> float:
        return self.family.pdf((x - self.center) / self.scale) / self.scale


class Kind(enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"
    UPPER_BOUND = "UpperBound"


@dataclass(frozen=True)
class ConfidenceStatement:
    hypothesis: Hypothesis
    confidence: float
    kind: Kind = Kind.EXACT
    source: str = ""

    def __post_init__(self):
        if not (0.0 <= self.confidence <= 1.0):
            raise DomainError(f"confidence must lie in [0, 1], got {self.confidence!r}")


class VarianceRule(enum.Enum):
    POOLED = "pooled"
    WELCH = "welch"


def _mean_var(xs):
    # fsum is correctly rounded, so results do not depend on observation order
    mean = math.fsum(xs) / len(xs)
    return mean, math.fsum((x - mean) ** 2 for x in xs) / (len(xs) - 1)


def summarize_two_groups(
    data: TwoGroupData, variance_rule: VarianceRule = VarianceRule.POOLED
) -> SampleSummary:
    """Reduce two raw groups to the difference ``mean(b) - mean(a)``.

    Pooled uses the classic two-sample t (df = n_a + n_b - 2); Welch uses the
    Welch-Satterthwaite degrees of freedom.
    """
    a, b = data.group_a, data.group_b
    na, nb = len(a), len(b)
    ma, va = _mean_var(a)
    mb, vb = _mean_var(b)
    if va == 0.0 and vb == 0.0:
        raise DegenerateVarianceError("both groups have zero variance")
    estimate = mb - ma
    rule = VarianceRule(variance_rule)
    if rule is VarianceRule.POOLED:
        df = na + nb - 2
        pooled = ((na - 1) * va + (nb - 1) * vb) / df
        se = math.sqrt(pooled * (1.0 / na + 1.0 / nb))
    else:
        wa, wb = va / na, vb / nb
        se = math.sqrt(wa + wb)
        df = (wa + wb) ** 2 / (wa**2 / (na - 1) + wb**2 / (nb - 1))
    return SampleSummary(estimate, se, StudentT(float(df)))
