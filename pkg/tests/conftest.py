import random

import pytest

from legdga.corpus import TREFOIL, UNKNOT, random_corpus
from legdga.diagram import parse_front


@pytest.fixture(scope="session")
def unknot():
    return parse_front(UNKNOT)


@pytest.fixture(scope="session")
def trefoil():
    return parse_front(TREFOIL)


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(120, seed=2024, max_crossings=8, max_cusps=3)


@pytest.fixture
def rng():
    return random.Random(0)


ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, passed: bool, text: str) -> None:
    ACCEPTANCE[criterion] = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {text}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
