"""Monte Carlo checks of what stated confidence levels mean operationally.

Two experiments:

* :func:`coverage_experiment` fixes the true parameter and counts how often
  the equal-tailed interval contains it.
* :func:`posterior_calibration` draws the true parameter uniformly from a
  grid and compares each stated confidence level with how often the
  hypothesis actually held.

Every tolerance is derived from a binomial standard error. Random numbers
come from numpy's ``PCG64`` bit generator; its name and the seed are stored
with each result so a run can be reproduced bit for bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .bayes_grid import ParameterGrid
from .errors import DomainError
from .inference import confidence_interval
from .model import ConfidenceDistribution
from .specialfn import DistFamily, Normal, StudentT, dist_cdf

__all__ = [
    "SummaryShape",
    "CoverageResult",
    "CalibrationBin",
    "CalibrationReport",
    "make_rng",
    "sample_family",
    "coverage_experiment",
    "posterior_calibration",
    "PRNG_NAME",
    "MIN_BIN_COUNT",
]

PRNG_NAME = "PCG64"
MIN_BIN_COUNT = 30
N_SIGMA = 3.0


@dataclass(frozen=True)
class SummaryShape:
    """Sampling model of an estimate: family and standard error, no location."""

    family: DistFamily
    scale: float

    def __post_init__(self):
        if not (self.scale > 0):
            raise DomainError(f"scale must be positive, got {self.scale!r}")


@dataclass(frozen=True)
class CoverageResult:
    level: float
    trials: int
    hits: int
    seed: int
    prng: str = PRNG_NAME

    @property
    def coverage(self) -> float:
        return self.hits / self.trials

    @property
    def standard_error(self) -> float:
        """Binomial standard error at the nominal level."""
        return math.sqrt(self.level * (1.0 - self.level) / self.trials)

    def within(self, n_sigma: float = N_SIGMA) -> bool:
        return abs(self.coverage - self.level) <= n_sigma * self.standard_error

    def to_dict(self) -> dict:
        return {
            **asdict(self),
            "coverage": self.coverage,
            "standard_error": self.standard_error,
            "within_3se": self.within(),
        }


@dataclass(frozen=True)
class CalibrationBin:
    lo: float
    hi: float
    count: int
    mean_confidence: float
    hit_fraction: float

    @property
    def populated(self) -> bool:
        return self.count >= MIN_BIN_COUNT

    @property
    def standard_error(self) -> float:
        if self.count == 0:
            return math.nan
        m = self.mean_confidence
        return math.sqrt(max(m * (1.0 - m), 0.0) / self.count)

    def calibrated(self, n_sigma: float = N_SIGMA) -> bool:
        if not self.populated:
            return True
        return abs(self.hit_fraction - self.mean_confidence) <= n_sigma * self.standard_error


@dataclass(frozen=True)
class CalibrationReport:
    threshold: float
    trials: int
    seed: int
    bins: tuple
    grid: tuple
    family: str
    scale: float
    prng: str = PRNG_NAME

    @property
    def calibrated(self) -> bool:
        return all(b.calibrated() for b in self.bins)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "threshold": self.threshold,
            "trials": self.trials,
            "seed": self.seed,
            "prng": self.prng,
            "family": self.family,
            "scale": self.scale,
            "grid": {"min": self.grid[0], "max": self.grid[1], "step": self.grid[2]},
            "calibrated": self.calibrated,
            "bins": [
                {
                    "lo": b.lo,
                    "hi": b.hi,
                    "count": b.count,
                    "mean_confidence": b.mean_confidence,
                    "hit_fraction": b.hit_fraction,
                    "standard_error": b.standard_error,
                    "populated": b.populated,
                    "calibrated": b.calibrated(),
                }
                for b in self.bins
            ],
        }


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _chi_square(rng, df, size):
    k = int(df)
    if k == df and k <= 200:
        out = np.zeros(size)
        for _ in range(k):
            z = rng.standard_normal(size)
            out += z * z
        return out
    # non-integer (or very large) df: chi2(df) = 2 * Gamma(df / 2)
    return 2.0 * rng.standard_gamma(0.5 * df, size)


def sample_family(rng: np.random.Generator, family: DistFamily, size: int) -> np.ndarray:
    """Draw ``size`` variates from the standard member of ``family``.

    Student-t uses the ratio Z / sqrt(chi2 / df).
    """
    z = rng.standard_normal(size)
    if isinstance(family, Normal):
        return z
    if isinstance(family, StudentT):
        return z / np.sqrt(_chi_square(rng, family.df, size) / family.df)
    raise TypeError(f"unsupported distribution family: {family!r}")


def coverage_experiment(
    true_param: float,
    shape: SummaryShape,
    level: float,
    trials: int = 100_000,
    seed: int = 0,
) -> CoverageResult:
    """Fraction of simulated intervals that contain ``true_param``."""
    if not (0.0 < level < 1.0):
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    if trials < 1000:
        raise DomainError(f"coverage needs at least 1000 trials, got {trials}")
    rng = make_rng(seed)
    estimates = true_param + shape.scale * sample_family(rng, shape.family, trials)
    # interval half-widths do not depend on the centre
    lo, hi = confidence_interval(ConfidenceDistribution(0.0, shape.scale, shape.family), level)
    hits = int(np.count_nonzero((estimates + lo <= true_param) & (true_param <= estimates + hi)))
    return CoverageResult(level, trials, hits, seed)


def _stated_confidence(family, estimates, threshold, scale):
    z = (threshold - estimates) / scale
    return 1.0 - np.fromiter((dist_cdf(family, v) for v in z), float, z.size)


def posterior_calibration(
    grid: ParameterGrid,
    shape: SummaryShape,
    threshold: float,
    trials: int = 100_000,
    bins: int = 10,
    seed: int = 0,
) -> CalibrationReport:
    """Check stated confidence in ``x > threshold`` against realized truth.

    Each trial draws the true value uniformly from the grid points, an
    estimate from the sampling model around it, and states confidence from
    the confidence distribution of that estimate. Trials are then binned by
    stated confidence. Bins with fewer than ``MIN_BIN_COUNT`` trials raise a
    warning and do not count towards the verdict.
    """
    if trials < 10_000:
        raise DomainError(f"calibration needs at least 10000 trials, got {trials}")
    if bins < 5:
        raise DomainError(f"calibration needs at least 5 bins, got {bins}")
    rng = make_rng(seed)
    theta = grid.values[rng.integers(0, grid.n, trials)]
    estimates = theta + shape.scale * sample_family(rng, shape.family, trials)
    stated = _stated_confidence(shape.family, estimates, threshold, shape.scale)
    # grid values carry rounding noise; a point on the threshold does not exceed it
    truth = theta > threshold + 1e-9 * grid.step

    edges = np.linspace(0.0, 1.0, bins + 1)
    which = np.clip(np.searchsorted(edges, stated, side="right") - 1, 0, bins - 1)
    out = []
    sparse = []
    for k in range(bins):
        mask = which == k
        count = int(np.count_nonzero(mask))
        mean = float(stated[mask].mean()) if count else math.nan
        hit = float(truth[mask].mean()) if count else math.nan
        b = CalibrationBin(float(edges[k]), float(edges[k + 1]), count, mean, hit)
        if not b.populated:
            sparse.append(f"[{b.lo:.2f}, {b.hi:.2f}) has {count}")
        out.append(b)
    if sparse:
        warnings.warn(
            f"calibration bins with fewer than {MIN_BIN_COUNT} trials: " + "; ".join(sparse),
            RuntimeWarning,
            stacklevel=2,
        )
    return CalibrationReport(
        threshold=threshold,
        trials=trials,
        seed=seed,
        bins=tuple(out),
        grid=(grid.min, grid.max, grid.step),
        family=str(shape.family),
        scale=shape.scale,
    )
