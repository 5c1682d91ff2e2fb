import functools

import pytest

from fusionlab.algebra.model import build_model
from fusionlab.algebra.params import make_params


@functools.lru_cache(maxsize=None)
def _params(variant, d, n, seed=7, rho_sign=1, c=None):
    return make_params(variant, d, seed, n=max(n, 2), rho_sign=rho_sign, c=c)


@functools.lru_cache(maxsize=None)
def _model(variant, d, n, seed=7, rho_sign=1, c=None):
    return build_model(variant, d, n, _params(variant, d, n, seed, rho_sign, c))


@pytest.fixture(scope="session")
def params_for():
    return _params


@pytest.fixture(scope="session")
def model_for():
    return _model


CRITERIA = {}


def record_criterion(number, description, ok, note=""):
    CRITERIA[number] = (description, ok, note)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA, key=str):
        description, ok, note = CRITERIA[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {description}"
        terminalreporter.write_line(line + (f"  [{note}]" if note else ""))
