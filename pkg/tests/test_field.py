from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jordouble.field import GF, QQ, PrimeField, field_from_string


def test_rationals_keep_integers_integral():
    assert QQ(Fraction(6, 3)) == 2 and type(QQ(Fraction(6, 3))) is int
    assert QQ(Fraction(1, 2)) == Fraction(1, 2)


@pytest.mark.parametrize("p", [2, 3, 9, 1])
def test_bad_prime_fields_rejected(p):
    with pytest.raises(ValueError):
        PrimeField(p)


@pytest.mark.parametrize("text,p", [("Q", 0), ("QQ", 0), ("F7", 7), ("GF(11)", 11), ("fp13", 13)])
def test_field_strings(text, p):
    assert field_from_string(text).p == p


def test_unknown_field_string():
    with pytest.raises(ValueError):
        field_from_string("R")


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_prime_field_inverse(a):
    F = GF(101)
    if a % 101:
        assert F(a) * F.inv(F(a)) % 101 == 1


def test_clean_drops_zeros_mod_p():
    assert GF(5).clean({1: 5, 2: 7}) == {2: 2}
    assert QQ.clean({1: 0, 2: Fraction(1, 3)}) == {2: Fraction(1, 3)}
