import random

import pytest

from glasnerlab.intmat import IntMat
from glasnerlab.polymat import IntPoly, PolyMat


X = IntPoly([0, 1])
ZERO = IntPoly()

# One line per acceptance criterion, echoed at the end of the run so the
# pass/fail record is visible even with output capture on.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def poly(*coeffs) -> IntPoly:
    return IntPoly(coeffs)


@pytest.fixture
def scalar_x() -> PolyMat:
    """xI in dimension 2: violates the condition for every orthogonal pair."""
    return PolyMat([[X, ZERO], [ZERO, X]])


@pytest.fixture
def symmetric_mix() -> PolyMat:
    """[[x, x^2], [x^2, x]]: violated exactly by v=(1,1), w=(1,-1)."""
    return PolyMat([[X, X * X], [X * X, X]])


@pytest.fixture
def power_matrix() -> PolyMat:
    """[[x, x^2], [x^3, x^4]]: fleeing matrix has full rank for every w != 0."""
    return PolyMat([[X, X * X], [X * X * X, X * X * X * X]])


def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> IntMat:
    return IntMat([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def random_poly_matrix(rng: random.Random, d: int, degree: int, bound: int) -> PolyMat:
    return PolyMat(
        [
            [IntPoly([rng.randint(-bound, bound) for _ in range(degree + 1)]) for _ in range(d)]
            for _ in range(d)
        ]
    )
