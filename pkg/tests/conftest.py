import pytest

from rosenblatt.spectrum import build_spectrum, choose_M


@pytest.fixture(scope="session")
def spec_at():
    """Session-cached truncated spectra keyed by (a, eps)."""
    cache = {}

    def get(a: float, eps: float = 1e-4):
        key = (a, eps)
        if key not in cache:
            cache[key] = build_spectrum(a, choose_M(a, eps))
        return cache[key]

    return get
