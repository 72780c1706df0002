import sys

import pytest
from hypothesis import settings

from poscones.positivity import grassmannian_model, plandflop_model, product_model

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def plandflop():
    return plandflop_model()


@pytest.fixture(scope="session")
def g24():
    return grassmannian_model(2, 4)


@pytest.fixture(scope="session")
def g25():
    return grassmannian_model(2, 5)


@pytest.fixture(scope="session")
def p1_4():
    return product_model([(1, 2)] * 4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
