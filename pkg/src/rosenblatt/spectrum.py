"""Spectrum of the Rosenblatt distribution.

The distribution with self-similarity shape ``a`` in [0, 1/2) is the law of

    V = sum_n lambda_n * (eps_n**2 - 1),    eps_n iid standard normal,

where the lambda_n are the eigenvalues of the integral operator on L2(0, 1)
with kernel sigma_a * |x - u|**(-a).  This module provides a closed-form
approximation of those eigenvalues, exact power sums, and the truncation
rule that picks how many eigenvalues a finite model needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceLimitError
from .specfn import beta, ln_gamma

__all__ = [
    "Spectrum",
    "sigma_a",
    "eig_approx",
    "build_spectrum",
    "lambda_pow_sum_exact",
    "choose_M",
]

#: hard cap on the number of eigenvalues choose_M will consider
M_CAP = 10**6

#: horizon over which choose_M accumulates the discarded cube sum
TAIL_HORIZON = 50_000

_VARIANTS = ("main", "transposed")


def sigma_a(a: float) -> float:
    """Normalizing constant sqrt((1 - 2a) * (1 - a) / 2) for 0 <= a <= 1/2."""
    if not 0.0 <= a <= 0.5:
        raise DomainError(f"sigma_a requires 0 <= a <= 1/2, got {a}")
    return math.sqrt((1.0 - 2.0 * a) * (1.0 - a) / 2.0)


def _check_shape(a: float) -> None:
    if not 0.0 <= a < 0.5:
        raise DomainError(f"shape parameter must lie in [0, 1/2), got {a}")


def _leading_coef(a: float) -> float:
    """Coefficient of the n**(a-1) leading term."""
    return (
        2.0
        * sigma_a(a)
        * math.exp(ln_gamma(1.0 - a))
        * math.sin(math.pi * a / 2.0)
        / math.pi ** (1.0 - a)
    )


def _correction_coef(a: float, variant: str) -> float:
    """Coefficient of the n**(a-2.2) correction term.

    Two calibrations of this coefficient circulate; they transpose the
    constant 5/4 and the exponent 1.05.  "main" is the default; "transposed"
    is kept only so tests can compare both against a discretization oracle.
    """
    if a == 0.0:
        return 0.0
    root = math.sqrt(max(math.exp(ln_gamma(a + 0.5)) - 1.0, 0.0))
    if variant == "main":
        return 1.25 * a**1.05 * root
    return 1.05 * a**1.25 * root


def eig_approx(a: float, n, variant: str = "main"):
    """Approximate n-th largest eigenvalue of the |x-u|**(-a) kernel operator.

    Parameters
    ----------
    a : shape in [0, 1/2)
    n : eigenvalue index (1-based), scalar or array
    variant : "main" (default) or "transposed", see `_correction_coef`
    """
    _check_shape(a)
    if variant not in _VARIANTS:
        raise DomainError(f"variant must be one of {_VARIANTS}, got {variant!r}")
    n_arr = np.asarray(n)
    if np.any(n_arr < 1) or not np.issubdtype(n_arr.dtype, np.integer):
        raise DomainError("eigenvalue index must be a positive integer")
    n_f = n_arr.astype(float)
    lam1 = (
        (1.0 + 0.1409 * a)
        * math.sqrt(math.pi**a * math.exp(ln_gamma(1.0 - a)))
        * math.sqrt(0.5 - a)
    )
    tail = _leading_coef(a) * n_f ** (a - 1.0) + _correction_coef(a, variant) * n_f ** (
        a - 2.2
    )
    out = np.where(n_arr == 1, lam1, tail)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Spectrum:
    """Truncated eigenvalue model of the Rosenblatt distribution.

    ``sigma_eps2`` is the variance of the Gaussian remainder that stands in
    for the discarded eigenvalues, chosen so the total variance stays 1:
    2 * sum(lambdas**2) + sigma_eps2 = 1 (clamped at 0 if the approximate
    eigenvalues slightly overshoot).
    """

    a: float
    lambdas: np.ndarray = field(repr=False)
    sigma_eps2: float

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)
        if lam.ndim != 1 or lam.size == 0:
            raise DomainError("lambdas must be a non-empty 1-d array")
        if self.sigma_eps2 < 0.0:
            raise DomainError("sigma_eps2 must be non-negative")

    @property
    def M(self) -> int:
        return int(self.lambdas.size)

    @property
    def sigma_eps(self) -> float:
        return math.sqrt(self.sigma_eps2)


def build_spectrum(a: float, M: int, variant: str = "main") -> Spectrum:
    """First M approximate eigenvalues plus the Gaussian remainder variance."""
    _check_shape(a)
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    if M > M_CAP:
        raise ResourceLimitError(f"M={M} exceeds the cap of {M_CAP}")
    lam = eig_approx(a, np.arange(1, M + 1), variant=variant)
    sig2 = max(0.0, 1.0 - 2.0 * float(np.sum(lam * lam)))
    return Spectrum(a=a, lambdas=lam, sigma_eps2=sig2)


def lambda_pow_sum_exact(a: float, k: int) -> float:
    """Closed form of sum_n lambda_n**k over the full spectrum (k = 2 or 3)."""
    _check_shape(a)
    if k == 2:
        return 0.5
    if k == 3:
        s = sigma_a(a)
        return 2.0 * s**3 * beta(1.0 - a, 1.0 - a) / ((1.0 - a) * (2.0 - 3.0 * a))
    raise DomainError(f"no closed form implemented for k={k}")


def _tail_cube_remainder(a: float, horizon: int) -> float:
    """Upper bound on sum of eig_approx(a, n)**3 for n beyond the horizon.

    The approximation is a two-term power law in n, so the remainder of its
    cube is a combination of Hurwitz zeta values -- evaluated exactly rather
    than by slow summation.
    """
    from scipy.special import zeta

    c = _leading_coef(a)
    d = _correction_coef(a, "main")
    q = horizon + 1
    return (
        c**3 * zeta(3.0 - 3.0 * a, q)
        + 3.0 * c * c * d * zeta(4.2 - 3.0 * a, q)
        + 3.0 * c * d * d * zeta(5.4 - 3.0 * a, q)
        + d**3 * zeta(6.6 - 3.0 * a, q)
    )


def choose_M(a: float, eps: float, cap: int = M_CAP) -> int:
    """Smallest M whose discarded cube-sum tail is below eps.

    The tail is the cube sum of the approximate eigenvalues with indices
    M+1 .. TAIL_HORIZON.  The horizon is part of the truncation rule; the
    analytic remainder beyond it is checked against eps, and an eps that the
    horizon cannot certify raises a resource error.
    """
    if not 0.0 < a < 0.5:
        raise DomainError(f"choose_M requires 0 < a < 1/2, got {a}")
    if eps <= 0.0:
        raise DomainError(f"eps must be positive, got {eps}")
    if _tail_cube_remainder(a, TAIL_HORIZON) >= eps:
        raise ResourceLimitError(
            f"choose_M(a={a}, eps={eps}): eps is below the cube-sum resolution "
            f"of the {TAIL_HORIZON}-eigenvalue truncation horizon"
        )
    cubes = eig_approx(a, np.arange(1, TAIL_HORIZON + 1)) ** 3
    # tails[m-1] = sum of cubes with index > m
    tails = np.concatenate([np.cumsum(cubes[::-1])[::-1][1:], [0.0]])
    M = int(np.argmax(tails <= eps)) + 1
    if M > cap:
        raise ResourceLimitError(
            f"choose_M(a={a}, eps={eps}) would need more than {cap} eigenvalues"
        )
    return M
