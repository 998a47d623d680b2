"""Finite exponential mixtures for long-memory correlations and AR(1) sums.

A correlation function of the form r(t) = integral of exp(-x t) against a
mixing density p(x) is approximated by M exponentials: chop the mixing law
at its q_1 > q_2 > ... > q_M quantiles tau_k, give chunk k the weight of
its probability mass and the rate of the geometric mean of its edges (the
top chunk keeps its lower edge).  A Gaussian sequence with that correlation
is then the weighted sum of independent stationary AR(1) processes.

Two targets ship: power (1+t)^(-a), whose mixing law is Gamma(a, 1), and
the Mittag-Leffler correlation, whose mixing law is the Lamperti
distribution.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from ._rng import substream
from .errors import DomainError
from .specfn import gamma_quantile, lamperti_quantile, mittag_leffler_neg

__all__ = [
    "ExpMixture",
    "build_mixture",
    "mixture_corr",
    "target_corr",
    "approx_error_report",
    "simulate_lrd",
]

_KINDS = ("power", "mittag_leffler")


@dataclass(frozen=True)
class ExpMixture:
    """Weights and rates of the M-term exponential approximation."""

    a: float
    kind: str
    weights: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        w = np.asarray(self.weights, dtype=float)
        r = np.asarray(self.rates, dtype=float)
        if w.shape != r.shape or w.ndim != 1 or w.size == 0:
            raise DomainError("weights and rates must be matching nonempty vectors")
        if np.any(w <= 0.0) or abs(float(np.sum(w)) - 1.0) > 1e-9:
            raise DomainError("weights must be positive and sum to 1")
        if np.any(r <= 0.0) or np.any(np.diff(r) >= 0.0):
            raise DomainError("rates must be positive and strictly decreasing")
        w.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "rates", r)

    @property
    def M(self) -> int:
        return int(self.weights.size)


def _quantile_schedule(a: float, kind: str, M: int) -> np.ndarray:
    gamma = math.exp(-(2.0 - a) * a)
    q = np.empty(M)
    if kind == "power":
        q[0] = 0.98
        for k in range(2, M + 1):
            q[k - 1] = 0.9 * gamma ** (k - 2)
    else:
        head = [0.98, 0.9, 0.7]
        for k in range(1, M + 1):
            q[k - 1] = head[k - 1] if k <= 3 else 0.5 * gamma ** (k - 4)
    return q


def build_mixture(a: float, kind: str, weight_scheme: str = "quantile_gap") -> ExpMixture:
    """Mixture for the given target; M = ceil(2/a) + 8 components.

    weight_scheme "quantile_gap" (default) sets b_k = q_{k-1} - q_k with
    q_0 = 1 and renormalizes to unit sum.  "density_integral" reproduces an
    alternative scheme that integrates the mixing CDF over (tau_k,
    tau_{k-1}) with an ad-hoc top interval (tau_1, 4 tau_1); it is kept
    only for comparison and is also renormalized before use.
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"mixture shape must satisfy 0 < a < 1, got {a}")
    if kind not in _KINDS:
        raise DomainError(f"kind must be one of {_KINDS}, got {kind!r}")
    if weight_scheme not in ("quantile_gap", "density_integral"):
        raise DomainError(f"unknown weight_scheme {weight_scheme!r}")
    M = math.ceil(2.0 / a) + 8
    q = _quantile_schedule(a, kind, M)
    if kind == "power":
        tau = np.array([gamma_quantile(a, float(p)) for p in q])
    else:
        tau = np.array([lamperti_quantile(a, float(p)) for p in q])
    rates = np.empty(M)
    rates[0] = tau[0]
    rates[1:] = np.sqrt(tau[:-1] * tau[1:])
    if weight_scheme == "quantile_gap":
        b = -np.diff(np.concatenate([[1.0], q]))
    else:
        upper = np.concatenate([[4.0 * tau[0]], tau[:-1]])
        if kind == "power":
            from scipy.special import gammainc

            cdfv = lambda x: gammainc(a, x)
        else:
            from .specfn import lamperti_cdf

            cdfv = lambda x: lamperti_cdf(a, x)
        b = np.array([cdfv(float(u)) - cdfv(float(l)) for l, u in zip(tau, upper)])
    b = b / float(np.sum(b))
    return ExpMixture(a=a, kind=kind, weights=b, rates=rates)


def mixture_corr(mix: ExpMixture, t):
    """sum_k b_k exp(-rate_k t) for t >= 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0):
        raise DomainError("mixture_corr requires t >= 0")
    tt = np.atleast_1d(t)
    val = np.exp(-np.outer(tt, mix.rates)) @ mix.weights
    return val if t.ndim else float(val[0])


def target_corr(kind: str, a: float, t):
    """(1+t)^(-a) for power, Mittag-Leffler correlation otherwise."""
    if kind not in _KINDS:
        raise DomainError(f"kind must be one of {_KINDS}, got {kind!r}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0):
        raise DomainError("target_corr requires t >= 0")
    tt = np.atleast_1d(t)
    if kind == "power":
        val = (1.0 + tt) ** (-a)
    else:
        val = np.array([mittag_leffler_neg(a, float(u)) for u in tt])
    return val if t.ndim else float(val[0])


def approx_error_report(mix: ExpMixture, grid):
    """Rows (t, target, approx, rel_err) and the max |rel_err| over the grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("approx_error_report needs a nonempty grid")
    target = np.atleast_1d(target_corr(mix.kind, mix.a, grid))
    approx = np.atleast_1d(mixture_corr(mix, grid))
    rel = (approx - target) / target
    rows = [
        (float(t), float(tv), float(av), float(rv))
        for t, tv, av, rv in zip(grid, target, approx, rel)
    ]
    return rows, float(np.max(np.abs(rel)))


def _ar1_component(mix: ExpMixture, n: int, seed: int, k: int) -> np.ndarray:
    rng = substream(seed, k)
    A = math.exp(-float(mix.rates[k]))
    e = np.empty(n)
    e[0] = rng.standard_normal()
    if n > 1:
        e[1:] = math.sqrt(1.0 - A * A) * rng.standard_normal(n - 1)
    return lfilter([1.0], [1.0, -A], e)


def simulate_lrd(mix: ExpMixture, n: int, seed: int, threads: int = 1) -> np.ndarray:
    """Stationary Gaussian sequence with correlation mixture_corr(mix, .).

    Each AR(1) component starts from its stationary law and is driven by
    its own substream keyed on (seed, component), so the output is
    bit-identical for any thread count.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    sqw = np.sqrt(mix.weights)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            comps = list(pool.map(lambda k: _ar1_component(mix, n, seed, k), range(mix.M)))
    else:
        comps = [_ar1_component(mix, n, seed, k) for k in range(mix.M)]
    out = np.zeros(n)
    for k in range(mix.M):
        out += sqw[k] * comps[k]
    return out
