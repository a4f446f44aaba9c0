import numpy as np
import pytest

from cauchy_scope.oracle import rational_corpus
from cauchy_scope.spectrum import fourier_coefficients, sample

M_DEFAULT = 4096
K_DEFAULT = 256


def half_pole(z):
    return 1.0 / (z - 0.5)


def lacunary_fn(k_max=4):
    def f(z):
        z = np.asarray(z, dtype=complex)
        return sum(2.0**-k * z ** (-(3**k)) for k in range(1, k_max + 1))

    return f


def spectrum_of(fn, M=M_DEFAULT, K=K_DEFAULT):
    return fourier_coefficients(sample(fn, M), K)


@pytest.fixture(scope="session")
def corpus():
    return rational_corpus(100, max_poles=5, pole_radius_cap=0.8, seed=0)


@pytest.fixture(scope="session")
def corpus_samples(corpus):
    return [sample(r, M_DEFAULT) for r in corpus]


@pytest.fixture(scope="session")
def corpus_spectra(corpus_samples):
    return [fourier_coefficients(s, K_DEFAULT) for s in corpus_samples]


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
