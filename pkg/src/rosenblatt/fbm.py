"""Exact fractional Brownian motion on [0,1] via circulant embedding.

The unit-spaced fractional Gaussian noise covariance gamma(k) is embedded
in a circulant matrix of size 2n whose eigenvalues come from one FFT of
the first row; a Hermitian complex Gaussian vector shaped by the square
roots of those eigenvalues transforms back to n exact fGn variates.  The
motion itself is the cumulative sum of the increments rescaled to the
grid, X(j/n) = n^(-H) * (xi_0 + ... + xi_{j-1}).
"""

from __future__ import annotations

import math

import numpy as np

from ._rng import substream
from .errors import DomainError, EmbeddingError

__all__ = ["fgn_autocov", "simulate_fbm"]

_EIG_TOL = 1e-10  # relative floor for circulant eigenvalue roundoff


def _check_hurst(H: float) -> None:
    if not 0.0 < H < 1.0:
        raise DomainError(f"Hurst parameter must lie in (0, 1), got {H}")


def fgn_autocov(H: float, k):
    """Autocovariance of unit-variance, unit-spaced fractional noise."""
    _check_hurst(H)
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0):
        raise DomainError("fgn_autocov requires k >= 0")
    kk = np.atleast_1d(k)
    h2 = 2.0 * H
    val = 0.5 * ((kk + 1.0) ** h2 - 2.0 * kk**h2 + np.abs(kk - 1.0) ** h2)
    return val if k.ndim else float(val[0])


def _circulant_eigs(H: float, n: int) -> np.ndarray:
    gam = fgn_autocov(H, np.arange(n + 1))
    row = np.concatenate([gam, gam[n - 1 : 0 : -1]])
    w = np.fft.fft(row).real
    floor = -_EIG_TOL * float(np.max(w))
    if float(np.min(w)) < floor:
        raise EmbeddingError(
            f"circulant embedding indefinite: min eigenvalue {np.min(w):.3e}"
        )
    return np.maximum(w, 0.0)


def simulate_fbm(H: float, n: int, seed: int) -> np.ndarray:
    """n+1 values X(0)=0, X(1/n), ..., X(1); exact in distribution."""
    _check_hurst(H)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    w = _circulant_eigs(H, n)
    rng = substream(seed)
    g = rng.standard_normal(2 * n)
    eta = np.empty(2 * n, dtype=complex)
    eta[0] = g[0]
    eta[n] = g[1]
    half = 1.0 / math.sqrt(2.0)
    eta[1:n] = half * (g[2 : n + 1] + 1.0j * g[n + 1 : 2 * n])
    eta[n + 1 :] = np.conj(eta[n - 1 : 0 : -1])
    xi = math.sqrt(2.0 * n) * np.fft.ifft(np.sqrt(w) * eta).real[:n]
    x = np.empty(n + 1)
    x[0] = 0.0
    np.cumsum(xi, out=x[1:])
    x[1:] *= float(n) ** (-H)
    return x
