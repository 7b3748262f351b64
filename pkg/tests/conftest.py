"""Shared seeds for the test suite.

Interior non-designated entries use distinct small primes as denominators so
no accidental integer differences appear; every seed here is also regular
(no integer gaps between adjacent rows).
"""

import pytest

from gtmod.scalars import rat
from gtmod.tableaux import validate_seed


def seed_3_1():
    rows = [
        [rat(1, 2)],
        [rat(1, 3), rat(1, 3)],
        [rat(1, 5), rat(2, 5), rat(4, 5)],
    ]
    return validate_seed(3, rows, [(2, 1, 2)])


def seed_4_2():
    rows = [
        [rat(1, 2)],
        [rat(1, 3), rat(1, 3)],
        [rat(1, 5), rat(4, 5), rat(1, 5)],
        [rat(1, 7), rat(2, 7), rat(3, 7), rat(5, 7)],
    ]
    return validate_seed(4, rows, [(2, 1, 2), (3, 1, 3)])


def seed_5_2_same_row():
    # two disjoint singular pairs in one row need four slots: row 4 of gl(5)
    rows = [
        [rat(1, 2)],
        [rat(1, 3), rat(2, 3)],
        [rat(1, 5), rat(2, 5), rat(4, 5)],
        [rat(1, 7), rat(1, 7), rat(3, 7), rat(3, 7)],
        [rat(1, 11), rat(2, 11), rat(3, 11), rat(4, 11), rat(5, 11)],
    ]
    return validate_seed(5, rows, [(4, 1, 2), (4, 3, 4)])


def seed_5_3():
    rows = [
        [rat(1, 2)],
        [rat(1, 3), rat(1, 3)],
        [rat(1, 5), rat(2, 5), rat(4, 5)],
        [rat(1, 7), rat(1, 7), rat(3, 7), rat(3, 7)],
        [rat(1, 11), rat(2, 11), rat(3, 11), rat(4, 11), rat(5, 11)],
    ]
    return validate_seed(5, rows, [(2, 1, 2), (4, 1, 2), (4, 3, 4)])


def seed_generic(n=3):
    primes = [2, 3, 5, 7, 11]
    rows = [
        [rat(j, primes[i - 1]) for j in range(1, i + 1)] for i in range(1, n + 1)
    ]
    return validate_seed(n, rows, [])


def verma_seed(n, avals):
    """The highest-weight seed of the tableaux-Verma construction."""
    avals = [rat(a) for a in avals]
    assert len(avals) == n - 1
    rows = []
    for r in range(1, n + 1):
        row = [avals[0]] * min(r, 2) + [avals[i - 2] for i in range(3, r + 1)]
        rows.append(row)
    singular = [(k, 1, 2) for k in range(2, n)]
    return validate_seed(n, rows, singular)


@pytest.fixture
def s31():
    return seed_3_1()


@pytest.fixture
def s42():
    return seed_4_2()


@pytest.fixture
def s52same():
    return seed_5_2_same_row()


@pytest.fixture
def s53():
    return seed_5_3()
