"""Special functions used throughout the package.

Gamma/beta/normal wrappers delegate to scipy.special.  The Mittag-Leffler
function on the negative axis and the Lamperti law (the one-sided stable
ratio density whose Laplace transform is Mittag-Leffler) are implemented
here directly.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NumericalError

__all__ = [
    "ln_gamma",
    "beta",
    "std_normal_cdf",
    "std_normal_pdf",
    "gamma_quantile",
    "lamperti_density",
    "lamperti_cdf",
    "lamperti_quantile",
    "mittag_leffler_neg",
]

#: quantiles are clamped here so downstream exponential rates stay finite
LAMPERTI_QUANTILE_CAP = 1e25

_SERIES_TOL = 1e-16
_SERIES_CAP = 400


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return float(special.gammaln(x))


def beta(u: float, v: float) -> float:
    """Euler beta function B(u, v) for u, v > 0."""
    if u <= 0.0 or v <= 0.0:
        raise DomainError(f"beta requires positive arguments, got ({u}, {v})")
    return float(special.beta(u, v))


def std_normal_cdf(x):
    """Standard normal CDF (vectorized)."""
    return special.ndtr(x)


def std_normal_pdf(x):
    """Standard normal density (vectorized)."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    return out if out.ndim else float(out)


def gamma_quantile(shape: float, u: float) -> float:
    """Quantile of the Gamma(shape, rate=1) distribution at level u."""
    if shape <= 0.0:
        raise DomainError(f"gamma_quantile requires shape > 0, got {shape}")
    if not 0.0 < u < 1.0:
        raise DomainError(f"gamma_quantile requires 0 < u < 1, got {u}")
    return float(special.gammaincinv(shape, u))


def _check_lamperti_shape(a: float) -> None:
    if not 0.0 < a < 1.0:
        raise DomainError(f"Lamperti shape must lie in (0, 1), got {a}")


def lamperti_density(a: float, x):
    """Density sin(a*pi)/pi * x^(a-1) / (1 + 2*cos(a*pi)*x^a + x^(2a)) on x > 0."""
    _check_lamperti_shape(a)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("lamperti_density requires x > 0")
    xa = x**a
    dens = (np.sin(a * math.pi) / math.pi) * x ** (a - 1.0) / (
        1.0 + 2.0 * np.cos(a * math.pi) * xa + xa * xa
    )
    return dens if dens.ndim else float(dens)


def lamperti_cdf(a: float, x):
    """Distribution function of the Lamperti law, closed form via atan2."""
    _check_lamperti_shape(a)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise DomainError("lamperti_cdf requires x >= 0")
    xa = x**a
    val = np.arctan2(xa * np.sin(a * math.pi), 1.0 + xa * np.cos(a * math.pi)) / (
        a * math.pi
    )
    return val if val.ndim else float(val)


def lamperti_quantile(a: float, u: float) -> float:
    """Quantile (sin(u*a*pi) / sin((1-u)*a*pi))^(1/a), clamped at 1e25."""
    _check_lamperti_shape(a)
    if not 0.0 < u < 1.0:
        raise DomainError(f"lamperti_quantile requires 0 < u < 1, got {u}")
    num = math.sin(u * a * math.pi)
    den = math.sin((1.0 - u) * a * math.pi)
    # work in logs so extreme ratios do not overflow before the clamp
    logq = (math.log(num) - math.log(den)) / a
    if logq >= math.log(LAMPERTI_QUANTILE_CAP):
        return LAMPERTI_QUANTILE_CAP
    return math.exp(logq)


def _ml_series(x: float, a: float) -> float:
    """Power series sum_k (-x)^k / Gamma(a*k + 1), valid for |x| <= 1."""
    total = 0.0
    term = 1.0
    for k in range(_SERIES_CAP):
        total += term
        term = (-x) ** (k + 1) / math.exp(special.gammaln(a * (k + 1) + 1.0))
        if abs(term) < _SERIES_TOL:
            return total + term
    raise NumericalError("Mittag-Leffler series failed to converge")


def mittag_leffler_neg(a: float, t: float) -> float:
    """E_a(-t^a) for 0 < a < 1 and t >= 0.

    Uses the power series while t^a <= 1 and otherwise the Laplace-transform
    identity E_a(-t^a) = integral of exp(-t*x) against the Lamperti density,
    evaluated by adaptive quadrature on a log-transformed axis.
    """
    _check_lamperti_shape(a)
    if t < 0.0:
        raise DomainError(f"mittag_leffler_neg requires t >= 0, got {t}")
    if t == 0.0:
        return 1.0
    x = t**a
    if x <= 1.0:
        return _ml_series(x, a)

    def integrand(y: float) -> float:
        if t * math.exp(min(y, 709.0)) > 745.0:
            return 0.0  # exp(-t*u) underflows past any polynomial factor
        u = math.exp(y)
        if u == 0.0:
            return 0.0  # u^a factor of the density vanishes
        return math.exp(-t * u) * lamperti_density(a, u) * u

    val, err = integrate.quad(
        integrand, -np.inf, np.inf, epsabs=1e-12, epsrel=1e-12, limit=400
    )
    if err > 1e-8:
        raise NumericalError(
            f"Mittag-Leffler quadrature reached only {err:.2e} absolute error"
        )
    return val
