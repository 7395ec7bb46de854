import numpy as np
import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    def record(number, ok, detail=""):
        ACCEPTANCE[number] = (bool(ok), detail)
        print(f"CRITERION {number}: {'PASS' if ok else 'FAIL'} {detail}")
    return record


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}")
