"""Field arithmetic tests."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtl.errors import FieldMismatch
from qtl.fields import GF, QQ, GFElement, field_from_name


def test_qq_basics():
    assert QQ.zero() == 0
    assert QQ.one() == 1
    assert QQ.from_int(-7) == Fraction(-7)
    assert QQ.char == 0


def test_gf_basics():
    F = GF(7)
    assert F.from_int(9) == 2
    assert F.from_int(3) + F.from_int(5) == 1
    assert F.from_int(3) * F.from_int(5) == 1
    assert -F.from_int(2) == 5
    assert F.from_int(3) / F.from_int(5) == F.from_int(3) * F.from_int(5).inverse()


def test_gf_requires_prime():
    with pytest.raises(ValueError):
        GF(6)


def test_gf_int_interop():
    F = GF(11)
    a = F.from_int(4)
    assert 1 + a == 5
    assert 2 * a == 8
    assert a - 5 == 10
    assert 7 - a == 3


def test_moduli_never_mix():
    with pytest.raises(FieldMismatch):
        GF(5).from_int(1) + GF(7).from_int(1)


def test_fraction_reduction_mod_p():
    F = GF(5)
    assert F.element(Fraction(1, 2)) == 3   # 2 * 3 = 6 = 1 mod 5
    with pytest.raises(ZeroDivisionError):
        F.element(Fraction(1, 5))


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        GF(5).from_int(0).inverse()


@given(st.integers(), st.integers(), st.integers())
def test_gf101_ring_axioms(a, b, c):
    F = GF(101)
    x, y, z = F.from_int(a), F.from_int(b), F.from_int(c)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)


@given(st.integers())
def test_gf101_inverse(a):
    F = GF(101)
    x = F.from_int(a)
    if x != 0:
        assert x * x.inverse() == 1


def test_random_elements_deterministic():
    rng1, rng2 = random.Random(5), random.Random(5)
    F = GF(13)
    assert [F.random(rng1) for _ in range(10)] == [F.random(rng2) for _ in range(10)]


def test_field_from_name():
    assert field_from_name("q") == QQ
    assert field_from_name("p:101") == GF(101)
    assert field_from_name("13") == GF(13)
    with pytest.raises(ValueError):
        field_from_name("widgets")


def test_field_equality():
    assert GF(7) == GF(7)
    assert GF(7) != GF(11)
    assert QQ != GF(7)
    assert hash(GFElement(7, 3)) == hash(GFElement(7, 10))
