import sys
from fractions import Fraction
from pathlib import Path

import pytest

# The scripts import each other by bare module name
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "python_scripts"))

from coefficients import SYMBOLIC_FIELD, Specialization  # noqa: E402


@pytest.fixture
def field():
    return SYMBOLIC_FIELD


@pytest.fixture
def y(field):
    return field.y


@pytest.fixture
def spec_23():
    """t1 = 2, t2 = 3, one framing parameter, symbolic y."""
    return Specialization(Fraction(2), Fraction(3), (Fraction(5),), seed=None)


def partition_counts(n_max):
    """p(0..n_max) by Euler's pentagonal number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total, j = 0, 1
        while True:
            for g in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
                if g > n:
                    break
                total += (-1) ** (j + 1) * p[n - g]
            if j * (3 * j - 1) // 2 > n:
                break
            j += 1
        p[n] = total
    return p


@pytest.fixture(scope="session")
def partition_numbers():
    return partition_counts(20)
