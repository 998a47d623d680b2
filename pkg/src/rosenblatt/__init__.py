"""Numerics for the Rosenblatt distribution and its limit-theorem experiments.

The package computes the distribution itself (spectrum, characteristic
function, density, CDF, quantiles, exact sampler, moments, Levy density)
and reproduces the Monte-Carlo limit experiments on long-memory Gaussian
sequences and fractional Brownian motion.  The `rosenblatt` console script
exposes everything as batch subcommands.
"""

from .charfn import (
    LogLTRepresentation,
    MomentSet,
    charfn_eps,
    levy_density,
    log_laplace,
    moments,
    stein_moment_residual,
)
from .dist import DensityTable, cdf, density, density_table, quantile, sample
from .errors import DomainError, EmbeddingError, NumericalError, ResourceLimitError
from .fbm import fgn_autocov, simulate_fbm
from .lrdmix import (
    ExpMixture,
    approx_error_report,
    build_mixture,
    mixture_corr,
    simulate_lrd,
    target_corr,
)
from .mc import (
    EmpiricalDensity,
    FunctionalSpec,
    empirical_density,
    functional_corr,
    functional_mean_h2,
    functional_quadvar,
    functional_sojourn,
    ks_distance,
    run_monte_carlo,
)
from .specfn import (
    gamma_quantile,
    lamperti_cdf,
    lamperti_density,
    lamperti_quantile,
    mittag_leffler_neg,
)
from .spectrum import (
    Spectrum,
    build_spectrum,
    choose_M,
    eig_approx,
    lambda_pow_sum_exact,
    sigma_a,
)

__version__ = "1.0.0"

__all__ = [
    "LogLTRepresentation",
    "MomentSet",
    "charfn_eps",
    "levy_density",
    "log_laplace",
    "moments",
    "stein_moment_residual",
    "DensityTable",
    "cdf",
    "density",
    "density_table",
    "quantile",
    "sample",
    "DomainError",
    "EmbeddingError",
    "NumericalError",
    "ResourceLimitError",
    "fgn_autocov",
    "simulate_fbm",
    "ExpMixture",
    "approx_error_report",
    "build_mixture",
    "mixture_corr",
    "simulate_lrd",
    "target_corr",
    "EmpiricalDensity",
    "FunctionalSpec",
    "empirical_density",
    "functional_corr",
    "functional_mean_h2",
    "functional_quadvar",
    "functional_sojourn",
    "ks_distance",
    "run_monte_carlo",
    "gamma_quantile",
    "lamperti_cdf",
    "lamperti_density",
    "lamperti_quantile",
    "mittag_leffler_neg",
    "Spectrum",
    "build_spectrum",
    "choose_M",
    "eig_approx",
    "lambda_pow_sum_exact",
    "sigma_a",
    "__version__",
]
