"""Matrix helpers and the division-free characteristic polynomial."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from qtl.errors import NotSquare, ShapeMismatch, Singular
from qtl.fields import GF, QQ
from qtl.matrices import (char_poly_sigma, det, identity, is_invertible,
                          mat_equal, mat_inv, mat_mul, random_invertible,
                          random_matrix, trace, transpose)
from qtl.poly import PolyRing


def frac(m):
    return [[Fraction(x) for x in row] for row in m]


def det_by_permutations(m):
    """Leibniz formula; the independent oracle for determinants."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            cur = start
            while not seen[cur]:
                seen[cur] = True
                cur = perm[cur]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= m[i][perm[i]]
        total += sign * term
    return total


def test_char_poly_small_examples():
    assert char_poly_sigma(frac([[1, 0], [0, 1]])) == [2, 1]
    assert char_poly_sigma(frac([[1, 0], [0, 2]])) == [3, 2]
    assert char_poly_sigma(frac([[5]])) == [5]


def test_char_poly_generic_2x2():
    R = PolyRing(QQ, ["a", "b", "c", "d"])
    a, b, c, d = R.gens()
    s = char_poly_sigma([[a, b], [c, d]])
    assert s[0] == a + d
    assert s[1] == a * d - b * c


def test_char_poly_not_square():
    with pytest.raises(NotSquare):
        char_poly_sigma([[1, 2, 3], [4, 5, 6]])


def test_sigma1_is_trace_sigmad_is_det():
    rng = random.Random(3)
    for _ in range(20):
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
             for _ in range(3)]
        s = char_poly_sigma(m)
        assert s[0] == trace(m)
        assert s[2] == det_by_permutations(m)


def test_char_poly_mod_p_matches_rational():
    rng = random.Random(4)
    fields = [GF(2), GF(3), GF(101)]
    for _ in range(100):
        m = [[rng.randint(-20, 20) for _ in range(3)] for _ in range(3)]
        sq = char_poly_sigma(frac(m))
        for F in fields:
            mp = [[F.from_int(x) for x in row] for row in m]
            sp = char_poly_sigma(mp)
            for exact, modular in zip(sq, sp):
                assert F.element(exact) == modular


def test_char_poly_over_gf2():
    F = GF(2)
    m = [[F.from_int(1), F.from_int(1)], [F.from_int(1), F.from_int(0)]]
    assert char_poly_sigma(m) == [F.from_int(1), F.from_int(1)]


def test_mat_mul_shapes():
    a = frac([[1, 2]])
    b = frac([[3], [4]])
    assert mat_mul(a, b) == [[Fraction(11)]]
    with pytest.raises(ShapeMismatch):
        mat_mul(a, a)


def test_transpose_and_trace():
    m = frac([[1, 2], [3, 4]])
    assert transpose(m) == frac([[1, 3], [2, 4]])
    assert trace(m) == 5
    with pytest.raises(NotSquare):
        trace(frac([[1, 2]]))


def test_mat_inv_and_singular():
    m = frac([[2, 1], [1, 1]])
    inv = mat_inv(m, QQ)
    assert mat_equal(mat_mul(m, inv), identity(2, QQ.one(), QQ.zero()))
    with pytest.raises(Singular):
        mat_inv(frac([[1, 2], [2, 4]]), QQ)
    assert not is_invertible(frac([[0]]), QQ)


def test_random_invertible_seeded():
    rng = random.Random(9)
    m = random_invertible(3, GF(101), rng)
    assert is_invertible(m, GF(101))
    n = random_matrix(2, 3, QQ, rng)
    assert len(n) == 2 and len(n[0]) == 3


def test_det_matches_oracle():
    rng = random.Random(12)
    for _ in range(10):
        m = frac([[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)])
        assert det(m) == det_by_permutations(m)
