"""Exact elimination tests."""

import random
from fractions import Fraction

from qtl.linalg import IncrementalRank, bareiss_echelon, integerize, nullspace, rank


def test_integerize():
    assert integerize([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
    assert integerize([Fraction(2), Fraction(4)]) == [1, 2]
    assert integerize([0, 0]) == [0, 0]


def test_bareiss_known_rank():
    m = [[2, 4], [1, 2]]
    ech, pivots = bareiss_echelon(m)
    assert len(pivots) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([]) == 0


def test_nullspace_simple():
    # x + y = 0 over two variables
    basis = nullspace([[1, 1]], 2)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0


def test_nullspace_annihilates_randomly():
    rng = random.Random(11)
    for _ in range(25):
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(6)] for _ in range(4)]
        basis = nullspace(rows, 6)
        assert len(basis) == 6 - rank(rows)
        for v in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_nullspace_no_rows():
    basis = nullspace([], 3)
    assert len(basis) == 3


def test_incremental_rank():
    inc = IncrementalRank()
    assert inc.add([1, 0, 0])
    assert inc.add([1, 1, 0])
    assert not inc.add([2, 1, 0])
    assert inc.rank == 2
    assert inc.contains([5, -3, 0])
    assert not inc.contains([0, 0, 1])


def test_rank_agrees_with_fraction_rows():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3), Fraction(2)]]
    assert rank(rows) == 1
