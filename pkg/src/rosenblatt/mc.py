"""Monte-Carlo harness for the four normalized quadratic-type functionals.

Each replicate simulates an input path (AR(1)-mixture sequence or fBm),
evaluates one functional, and the replicate values are summarized into an
empirical density plus a sup-norm distance to the computed distribution.
Replicates are keyed by (seed, index) so any worker count reproduces the
same numbers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._rng import derive_seed
from .errors import DomainError
from .dist import density_table
from .fbm import simulate_fbm
from .lrdmix import ExpMixture, build_mixture, mixture_corr, simulate_lrd
from .specfn import std_normal_cdf, std_normal_pdf
from .spectrum import Spectrum, sigma_a

__all__ = [
    "FunctionalSpec",
    "EmpiricalDensity",
    "functional_mean_h2",
    "functional_corr",
    "functional_sojourn",
    "functional_quadvar",
    "empirical_density",
    "run_monte_carlo",
    "ks_distance",
]

_KINDS = ("mean_h2", "correlation", "sojourn", "quadvar")
_KDE_POINTS = 512
_KDE_CHUNK = 65_536


@dataclass(frozen=True)
class FunctionalSpec:
    """Which functional to study and the simulation parameters it needs."""

    kind: str
    a: float
    n: int
    lag: int | None = None
    level: float | None = None
    corr_kind: str | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if not 0.0 < self.a < 0.5:
            raise DomainError(f"shape must satisfy 0 < a < 0.5, got {self.a}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if (self.lag is not None) != (self.kind == "correlation"):
            raise DomainError("lag is required exactly for the correlation kind")
        if self.kind == "correlation" and not 0 <= self.lag < self.n:
            raise DomainError(f"lag must satisfy 0 <= lag < n, got {self.lag}")
        if (self.level is not None) != (self.kind == "sojourn"):
            raise DomainError("level is required exactly for the sojourn kind")
        if self.kind == "sojourn" and not self.level > 0.0:
            raise DomainError(f"level must be positive, got {self.level}")
        needs_corr = self.kind != "quadvar"
        if (self.corr_kind is not None) != needs_corr:
            raise DomainError("corr_kind is required exactly for sequence kinds")


@dataclass(frozen=True)
class EmpiricalDensity:
    """Histogram, kernel estimate, and moments of the replicate values."""

    bin_edges: np.ndarray
    bin_mass: np.ndarray
    kde_xs: np.ndarray
    kde_vals: np.ndarray
    reps: int
    mean: float
    sd: float
    skewness: float
    values: np.ndarray = field(repr=False)


def _norm(E, a: float) -> tuple[np.ndarray, float]:
    E = np.asarray(E, dtype=float)
    n = E.size
    if n < 1:
        raise DomainError("empty input sequence")
    return E, sigma_a(a) * float(n) ** (a - 1.0)


def functional_corr(E, a: float, k: int, r_true: float) -> float:
    """Normalized centered lag-k correlation sum."""
    E, c = _norm(E, a)
    n = E.size
    if not 0 <= k < n:
        raise DomainError(f"lag must satisfy 0 <= lag < n, got {k}")
    if k == 0:
        prods = E * E
    else:
        prods = E[:-k] * E[k:]
    return c * float(np.sum(prods - r_true))


def functional_mean_h2(E, a: float) -> float:
    """Normalized sum of the second Hermite polynomial of the sequence."""
    return functional_corr(E, a, 0, 1.0)


def functional_sojourn(E, a: float, u: float) -> float:
    """Normalized centered count of exceedances of |E| over the level u."""
    E, c = _norm(E, a)
    if not u > 0.0:
        raise DomainError(f"level must be positive, got {u}")
    n = E.size
    count = float(np.sum(np.abs(E) > u))
    expected = 2.0 * n * (1.0 - std_normal_cdf(u))
    return c * (count - expected) / (u * std_normal_pdf(u))


def functional_quadvar(X, a: float) -> float:
    """Normalized centered quadratic variation of an fBm path of n+1 values."""
    X = np.asarray(X, dtype=float)
    if not 0.0 < a < 0.5:
        raise DomainError(f"shape must satisfy 0 < a < 0.5, got {a}")
    n = X.size - 1
    if n < 1:
        raise DomainError("path must hold at least two values")
    dx = np.diff(X)
    c = sigma_a(a) * float(n) ** (a - 1.0)
    scale = float(n) ** (2.0 - a) / (1.04 - 1.5 * a)
    return c * scale * float(np.sum(dx * dx - float(n) ** (a - 2.0)))


def empirical_density(values) -> EmpiricalDensity:
    """Summarize replicate values: FD histogram, Silverman-width KDE, moments."""
    v = np.asarray(values, dtype=float)
    if v.size < 1:
        raise DomainError("need at least one replicate value")
    mean = float(np.mean(v))
    sd = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    if sd > 0.0:
        skew = float(np.mean(((v - mean) / sd) ** 3))
        counts, edges = np.histogram(v, bins="fd")
        if counts.size == 0:  # zero-width FD bins on near-degenerate data
            counts, edges = np.histogram(v, bins=1)
    else:
        skew = 0.0
        edges = np.array([v[0] - 0.5, v[0] + 0.5])
        counts = np.array([v.size])
    mass = counts / float(v.size)
    bw = 1.06 * sd * float(v.size) ** (-0.2)
    if bw <= 0.0:
        bw = 1.0
    xs = np.linspace(float(v.min()) - 3.0 * bw, float(v.max()) + 3.0 * bw, _KDE_POINTS)
    kde = np.zeros(_KDE_POINTS)
    for lo in range(0, v.size, _KDE_CHUNK):  # bounded memory at large rep counts
        z = (xs[:, None] - v[None, lo:lo + _KDE_CHUNK]) / bw
        kde += np.exp(-0.5 * z * z).sum(axis=1)
    kde /= v.size * bw * math.sqrt(2.0 * math.pi)
    return EmpiricalDensity(
        bin_edges=edges, bin_mass=mass, kde_xs=xs, kde_vals=kde, reps=int(v.size),
        mean=mean, sd=sd, skewness=skew, values=v,
    )


def _replicate_value(fs: FunctionalSpec, mix: ExpMixture | None, rep_seed: int) -> float:
    if fs.kind == "quadvar":
        path = simulate_fbm(1.0 - fs.a / 2.0, fs.n, rep_seed)
        return functional_quadvar(path, fs.a)
    E = simulate_lrd(mix, fs.n, rep_seed)
    if fs.kind == "mean_h2":
        return functional_mean_h2(E, fs.a)
    if fs.kind == "correlation":
        return functional_corr(E, fs.a, fs.lag, mixture_corr(mix, float(fs.lag)))
    return functional_sojourn(E, fs.a, fs.level)


def run_monte_carlo(
    fs: FunctionalSpec, reps: int, seed: int, threads: int = 1
) -> EmpiricalDensity:
    """reps independent replicates of the functional, summarized."""
    if reps < 2:
        raise DomainError(f"reps must be >= 2, got {reps}")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    mix = None
    if fs.kind != "quadvar":
        mix = build_mixture(fs.a, fs.corr_kind)
    seeds = [derive_seed(seed, r) for r in range(reps)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(lambda s: _replicate_value(fs, mix, s), seeds))
    else:
        vals = [_replicate_value(fs, mix, s) for s in seeds]
    return empirical_density(np.array(vals))


def ks_distance(ed: EmpiricalDensity, spec: Spectrum, grid_points: int = 801) -> float:
    """Sup distance between the replicate empirical CDF and the computed CDF."""
    v = np.sort(ed.values)
    lo = float(v[0]) - 1e-9
    hi = float(v[-1]) + 1e-9
    xs = np.linspace(lo, hi, grid_points)
    tab = density_table(spec, xs)
    F = PchipInterpolator(tab.xs, tab.cdf)(v)
    i = np.arange(1, v.size + 1, dtype=float)
    return float(np.max(np.maximum(np.abs(F - i / v.size), np.abs(F - (i - 1.0) / v.size))))
