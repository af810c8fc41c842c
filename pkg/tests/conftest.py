import numpy as np
import pytest

from pouframes.trigpoly import TrigPoly

ACCEPTANCE = {}


def fft_coeffs(func, period, band):
    """Fourier coefficients of a `period`-periodic function by sampling; independent of TrigPoly."""
    M = 8 * (band + 1)
    x = period * np.arange(M) / M
    c = np.fft.fft(func(x)) / M
    return {k: c[k % M] for k in range(-band, band + 1)}


def random_real_poly(rng, period, band):
    coeffs = {0: rng.normal()}
    for k in range(1, band + 1):
        c = complex(rng.normal(), rng.normal())
        coeffs[k] = c
        coeffs[-k] = c.conjugate()
    return TrigPoly(period, coeffs)


def pou_poly(rng, N, band, exact=True):
    """Random real N-periodic polynomial, forced onto the partition-of-unity constraints when `exact`."""
    P = random_real_poly(rng, N, band)
    coeffs = dict(P.coeffs)
    for k in list(coeffs):
        if k % N == 0:
            coeffs[k] = 0
    coeffs[0] = 1 / N
    if not exact:
        j = int(rng.integers(0, band // N + 1)) * N
        d = float(rng.choice([-1, 1])) * 10 ** rng.uniform(-6, -1)
        coeffs[j] = coeffs.get(j, 0) + d
        coeffs[-j] = coeffs.get(-j, 0) + d if j else coeffs[0]
    return TrigPoly(N, coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def sin2():
    return TrigPoly(2, {-1: -0.25, 0: 0.5, 1: -0.25})


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
