import random
from fractions import Fraction

import pytest

from expmat import linalg
from expmat.field import rationals
from expmat.matrix import NilMatrix

# acceptance results, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_nilpotent(rng: random.Random, n: int, nonzero: bool = False) -> NilMatrix:
    """S U S^-1 with U strictly upper triangular and S a random invertible integer matrix."""
    Q = rationals()
    while True:
        u = [[Fraction(rng.randint(-3, 3)) if j > i and rng.random() < 0.7 else Fraction(0)
              for j in range(n)] for i in range(n)]
        if nonzero and all(x == 0 for r in u for x in r):
            continue
        break
    while True:
        s = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if linalg.det(Q, s) != 0:
            break
    m = linalg.mat_mul(Q, linalg.mat_mul(Q, s, u), linalg.inverse(Q, s))
    return NilMatrix(Q, m)


@pytest.fixture
def rng():
    return random.Random(20240521)
