"""Special functions behind the Student-t and normal distributions.

Everything here is written against the standard library ``math`` module
only: log-gamma, the regularized incomplete beta function, and the CDF,
density and quantile of the standard (location 0, scale 1) members of the
two supported families.

All probabilities are plain floats in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "StudentT",
    "Normal",
    "DistFamily",
    "log_gamma",
    "reg_inc_beta",
    "dist_cdf",
    "dist_pdf",
    "dist_quantile",
]

CF_MAX_ITER = 300
CF_EPS = 1e-14
_FPMIN = 1e-300

# Stirling series coefficients B_2k / (2k (2k-1)), k = 1..7
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)
_STIRLING_MIN = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class StudentT:
    """Standard Student-t family with ``df`` degrees of freedom."""

    df: float

    def __post_init__(self):
        if not (isinstance(self.df, (int, float)) and math.isfinite(self.df) and self.df > 0):
            raise DomainError(f"degrees of freedom must be a positive finite number, got {self.df!r}")

    def cdf(self, z: float) -> float:
        return dist_cdf(self, z)

    def pdf(self, z: float) -> float:
        return dist_pdf(self, z)

    def quantile(self, p: float) -> float:
        return dist_quantile(self, p)

    def __str__(self):
        return f"t({self.df:g})"


@dataclass(frozen=True)
class Normal:
    """Standard normal family (the large-sample limit of Student-t)."""

    def cdf(self, z: float) -> float:
        return dist_cdf(self, z)

    def pdf(self, z: float) -> float:
        return dist_pdf(self, z)

    def quantile(self, p: float) -> float:
        return dist_quantile(self, p)

    def __str__(self):
        return "normal"


DistFamily = StudentT | Normal


def _check_family(family):
    if not isinstance(family, (StudentT, Normal)):
        raise TypeError(f"unsupported distribution family: {family!r}")


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``.

    Uses the Stirling series for x >= 15 and the upward recurrence
    Gamma(x + k) = x (x + 1) ... (x + k - 1) Gamma(x) below that.
    """
    if not (x > 0) or math.isinf(x):
        raise DomainError(f"log_gamma needs a positive finite argument, got {x!r}")
    shift = 0.0
    if x < _STIRLING_MIN:
        prod = 1.0
        while x < _STIRLING_MIN:
            prod *= x
            x += 1.0
        shift = math.log(prod)
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    term = inv
    for c in _STIRLING:
        series += c * term
        term *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series - shift


def _beta_cf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge in {CF_MAX_ITER} "
        f"iterations (a={a}, b={b}, x={x})"
    )


def _inc_beta(a, b, x, y):
    # y == 1 - x, passed separately so callers can supply it without cancellation
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = (
        a * math.log(x) + b * math.log(y) - (log_gamma(a) + log_gamma(b) - log_gamma(a + b))
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, y) / b


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Parameters
    ----------
    a, b : float
        Positive shape parameters.
    x : float
        Upper integration limit in [0, 1].

    Raises
    ------
    DomainError
        If a or b is not positive or x lies outside [0, 1].
    """
    if not (a > 0 and b > 0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"reg_inc_beta needs a > 0 and b > 0, got a={a!r}, b={b!r}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"reg_inc_beta needs 0 <= x <= 1, got {x!r}")
    return _inc_beta(a, b, x, 1.0 - x)


def _t_lower_tail(df, z):
    """P(T <= -|z|) for T ~ t(df)."""
    t2 = z * z
    denom = df + t2
    return 0.5 * _inc_beta(0.5 * df, 0.5, df / denom, t2 / denom)


def dist_cdf(family: DistFamily, z: float) -> float:
    """P(Z <= z) for the standard member of ``family``.

    Exactly 0.5 at z = 0 for both families, and
    ``dist_cdf(f, z) + dist_cdf(f, -z) == 1`` up to rounding.
    """
    _check_family(family)
    if math.isnan(z):
        raise DomainError("dist_cdf is undefined at NaN")
    if z == 0:
        return 0.5
    if math.isinf(z):
        return 1.0 if z > 0 else 0.0
    if isinstance(family, Normal):
        tail = 0.5 * math.erfc(abs(z) / math.sqrt(2.0))
    else:
        tail = _t_lower_tail(family.df, z)
    return 1.0 - tail if z > 0 else tail


def dist_pdf(family: DistFamily, z: float) -> float:
    """Density of the standard member of ``family`` at ``z``."""
    _check_family(family)
    if isinstance(family, Normal):
        return _INV_SQRT_2PI * math.exp(-0.5 * z * z)
    v = family.df
    log_norm = log_gamma(0.5 * (v + 1.0)) - log_gamma(0.5 * v) - 0.5 * math.log(v * math.pi)
    return math.exp(log_norm - 0.5 * (v + 1.0) * math.log1p(z * z / v))


def _lower_quantile(family, p):
    """Solve dist_cdf(family, z) = p for p < 0.5 (so z < 0)."""
    hi = 0.0
    lo = -math.sqrt(-2.0 * math.log(p))  # normal-tail bound; t quantiles lie further out
    while dist_cdf(family, lo) > p:
        hi = lo
        lo *= 2.0
        if math.isinf(lo):
            raise ArithmeticError(f"could not bracket quantile for p={p!r}")
    z = lo
    for _ in range(400):
        f = dist_cdf(family, z) - p
        if f == 0.0:
            return z
        if f > 0.0:
            hi = z
        else:
            lo = z
        dens = dist_pdf(family, z)
        step = f / dens if dens > 0.0 else math.inf
        z_new = z - step
        if not (lo < z_new < hi):
            z_new = 0.5 * (lo + hi)
        if abs(z_new - z) <= 1e-15 * max(1.0, abs(z)) or hi - lo <= 1e-15 * max(1.0, abs(lo)):
            return z_new
        z = z_new
    return z


def dist_quantile(family: DistFamily, p: float) -> float:
    """Inverse of :func:`dist_cdf` for ``0 < p < 1``.

    Newton steps inside a maintained bracket, falling back to bisection when
    a step leaves it. The upper half is obtained by antisymmetry: for
    ``q > 0.5`` the result is exactly ``-dist_quantile(f, 1 - q)``.
    """
    _check_family(family)
    if not (0.0 < p < 1.0):
        raise DomainError(f"quantile probability must lie in (0, 1), got {p!r}")
    if p == 0.5:
        return 0.0
    if p > 0.5:
        return -_lower_quantile(family, 1.0 - p)
    return _lower_quantile(family, p)
