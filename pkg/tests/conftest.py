import random

import pytest

from finspace.corpus import builtin_corpus, circle_model, two_over_five

# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE = {}
EMITTED = []


def record(number, ok, detail):
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def circle():
    return circle_model()


@pytest.fixture
def two_five():
    return two_over_five()


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture
def rng():
    return random.Random(20240611)
