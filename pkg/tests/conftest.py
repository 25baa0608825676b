import random
from fractions import Fraction

import pytest

from simplexsum.identity import Configuration

BIPYRAMID = [(0, 0, -1), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1)]
UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]

ACCEPTANCE_LINES = []


@pytest.fixture
def bipyramid():
    return Configuration.from_points(BIPYRAMID)


@pytest.fixture
def unit_square():
    return Configuration.from_points(UNIT_SQUARE)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_rational(rng, bound=100):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_rows(rng, order, bound=100):
    return [[random_rational(rng, bound) for _ in range(order)] for _ in range(order)]


def random_config(rng, n, bound=20):
    return Configuration(n, tuple(tuple(random_rational(rng, bound) for _ in range(n)) for _ in range(n + 2)))


@pytest.fixture
def acceptance_log():
    def log(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
