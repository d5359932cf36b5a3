import numpy as np
import pytest

from twoatom.gram import CMParams

SQ2 = 1 / np.sqrt(2)


@pytest.fixture
def fig1_params():
    return CMParams(0.8, 0.6, SQ2, SQ2, 0.8, 0.6)


@pytest.fixture
def fig2r_params():
    s = np.sqrt(3) / 2
    return CMParams(0.5, s, 0.5, s, 0.5, s)


def random_params(rng, complex_=False):
    """Random valid parameters; complex draws use random unit 2-vectors."""
    if not complex_:
        c, e, g = rng.uniform(-1, 1, 3)
        return CMParams.from_real(c, e, g)
    vals = []
    for _ in range(3):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        vals.extend(v)
    return CMParams(*vals)


def random_coeffs(rng, complex_=False):
    from twoatom.closed_form import SuperCoeffs

    if not complex_:
        return SuperCoeffs.from_a(rng.uniform())
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return SuperCoeffs(*v)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    def _report(criterion, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
