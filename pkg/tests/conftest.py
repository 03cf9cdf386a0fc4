import numpy as np
import pytest

from monoscope.states import ghz_state, w_state


@pytest.fixture
def bell():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.outer(v, v.conj())


@pytest.fixture
def ghz():
    return ghz_state()


@pytest.fixture
def w():
    return w_state()


@pytest.fixture
def nprng():
    return np.random.default_rng(12345)


def random_unitary(rng, n):
    """Haar unitary via QR of a Ginibre matrix (numpy-only, independent of the package)."""
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(rng, n, rank=None):
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


# acceptance results, echoed once more at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
