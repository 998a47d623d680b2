import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from oracles import chi2_shift_charfn
from rosenblatt.charfn import (charfn_eps, levy_density, log_laplace, moments,
                               stein_moment_residual)
from rosenblatt.errors import DomainError
from rosenblatt.spectrum import Spectrum, build_spectrum, lambda_pow_sum_exact

REPS = ("direct", "domain_scaled", "ramanujan", "ramanujan_bradley", "integral")


def test_single_eigenvalue_hand_value():
    # lambda=1/2, s=1, no Gaussian remainder: K(1) = 1/2 - ln(2)/2
    sp = Spectrum(0.0, np.array([0.5]), 0.0)
    want = 0.5 - math.log(2.0) / 2.0
    for rep in REPS:
        assert log_laplace(sp, 1.0, rep=rep) == pytest.approx(want, rel=1e-12)
    assert log_laplace(sp, 0.0) == 0.0


def test_representations_agree(spec_at):
    sp = spec_at(0.25)
    lam1 = float(sp.lambdas[0])
    for s in np.linspace(-0.25 / lam1, 50.0, 10):
        vals = [log_laplace(sp, float(s), rep=r) for r in REPS]
        spread = max(vals) - min(vals)
        assert spread <= 1e-12 * max(1.0, abs(vals[0])), s


def test_laplace_domain():
    sp = Spectrum(0.0, np.array([0.5]), 0.0)
    with pytest.raises(DomainError):
        log_laplace(sp, -1.0)  # at/below -1/(2 lambda_1)
    with pytest.raises(DomainError):
        log_laplace(sp, -3.0)
    with pytest.raises(DomainError):
        log_laplace(sp, 1.0, rep="bogus")
    # just inside the domain still evaluates
    assert math.isfinite(log_laplace(sp, -0.999))


def test_charfn_chi2_anchor():
    sp = build_spectrum(0.0, 4)
    zs = np.array([-7.0, -2.0, -0.3, 0.0, 0.3, 2.0, 7.0])
    got = charfn_eps(sp, zs)
    want = np.array([chi2_shift_charfn(float(z)) for z in zs])
    assert np.max(np.abs(got - want)) < 1e-14
    assert got[3] == 1.0 + 0.0j


def test_charfn_hermitian_and_bounded(spec_at):
    sp = spec_at(0.3)
    zs = np.linspace(0.1, 40.0, 25)
    plus = charfn_eps(sp, zs)
    minus = charfn_eps(sp, -zs)
    assert np.max(np.abs(minus - np.conj(plus))) == 0.0
    assert np.all(np.abs(plus) <= 1.0)


def test_moments_shape_zero():
    mom = moments(build_spectrum(0.0, 4))
    assert mom.m1 == 0.0
    assert mom.m2 == pytest.approx(1.0, abs=1e-14)
    assert mom.m3 == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-14)
    assert mom.m4 == pytest.approx(48.0 * 0.25 + 3.0, rel=1e-14)


def test_moments_match_laplace_derivatives(spec_at):
    # K(s) = ln E exp(-sV): K'(0) = -m1, K''(0) = m2.
    sp = spec_at(0.3)
    mom = moments(sp)
    h = 1e-3
    kp, km = log_laplace(sp, h), log_laplace(sp, -h)
    assert (kp - km) / (2.0 * h) == pytest.approx(-mom.m1, abs=1e-5)
    assert (kp + km) / h**2 == pytest.approx(mom.m2, abs=1e-5)


def test_third_moment_tail_completion(spec_at):
    sp = spec_at(0.25)
    full = moments(sp, complete_tail=True)
    raw = moments(sp, complete_tail=False)
    assert full.m3 == pytest.approx(8.0 * lambda_pow_sum_exact(0.25, 3), rel=1e-12)
    assert raw.m3 == raw.m3_truncated
    assert full.m3_truncated == raw.m3_truncated
    assert full.m3 > full.m3_truncated  # discarded tail is positive


def test_moments_near_half(spec_at):
    mom = moments(spec_at(0.4999))
    assert mom.m1 == 0.0
    assert mom.m2 == pytest.approx(1.0, abs=1e-12)
    assert abs(mom.m3) < 1e-4
    assert mom.m4 == pytest.approx(3.0, abs=1e-4)


def test_levy_density_hand_value():
    sp = Spectrum(0.0, np.array([0.5]), 0.0)
    assert levy_density(sp, 1.0) == pytest.approx(math.exp(-1.0) / 2.0, rel=1e-14)
    with pytest.raises(DomainError):
        levy_density(sp, 0.0)
    with pytest.raises(DomainError):
        levy_density(sp, np.array([-1.0, 1.0]))


def test_levy_density_variance_identity(spec_at):
    # integral of x^2 m(x) equals the truncated chaos variance 2 sum(lambda^2)
    sp = spec_at(0.3)
    val, _ = quad(lambda x: x * x * levy_density(sp, x), 0.0, np.inf, limit=400)
    assert val == pytest.approx(2.0 * float(np.sum(sp.lambdas**2)), rel=1e-9)


@pytest.mark.parametrize("a", [0.1, 0.25, 0.4])
def test_stein_residuals_vanish(a, spec_at):
    sp = spec_at(a)
    for k in (1, 2, 3):
        lhs, rhs = stein_moment_residual(sp, k)
        assert abs(lhs - rhs) < 1e-12, k


def test_stein_domain(spec_at):
    with pytest.raises(DomainError):
        stein_moment_residual(spec_at(0.25), 4)
    with pytest.raises(DomainError):
        stein_moment_residual(spec_at(0.25), 0)
