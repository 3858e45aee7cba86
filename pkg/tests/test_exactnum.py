import random
from fractions import Fraction

import pytest

from resonaut.exactnum import (
    Cyclotomic,
    ExactNumError,
    QQ,
    cyclotomic_field,
    format_rational,
    parse_cyclotomic,
    parse_rational,
)

from conftest import random_cyclotomic


def test_zeta_squared_order_three():
    z = Cyclotomic.zeta(3)
    assert (z * z).coeffs == (Fraction(-1), Fraction(-1))


def test_additive_inverse():
    z = Cyclotomic.zeta(3)
    assert not ((1 + z) + (-1 - z))


def test_zeta_cubed_is_one():
    z = Cyclotomic.zeta(3)
    assert z * z**2 == 1


def test_inverse_of_zeta():
    z = Cyclotomic.zeta(3)
    assert z.inverse() == z * z
    assert z.inverse() == Cyclotomic(3, [-1, -1])


def test_inverse_of_one_minus_zeta():
    # (1 - zeta)(2 + zeta)/3 = (2 - zeta - zeta^2)/3 = (2 + 1)/3 = 1
    z = Cyclotomic.zeta(3)
    expected = (2 + z) / 3
    assert (1 - z).inverse() == expected
    assert (1 - z) * expected == 1


def test_inverse_minus_one_order_two():
    minus_one = Cyclotomic(2, [-1])
    assert minus_one.inverse() == minus_one


def test_zero_inverse_raises():
    with pytest.raises(ExactNumError):
        Cyclotomic.zero(5).inverse()


def test_order_mismatch_raises():
    with pytest.raises(ExactNumError):
        Cyclotomic.zeta(3) + Cyclotomic.zeta(5)


def test_non_prime_order_rejected():
    with pytest.raises(ExactNumError):
        Cyclotomic.zeta(4)
    with pytest.raises(ExactNumError):
        cyclotomic_field(6)


@pytest.mark.parametrize("order", [2, 3, 5, 7])
def test_field_axioms_randomized(order):
    rng = random.Random(1000 + order)
    one = Cyclotomic.one(order)
    for _ in range(200):
        a = random_cyclotomic(order, rng)
        b = random_cyclotomic(order, rng)
        c = random_cyclotomic(order, rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == one


@pytest.mark.parametrize("order", [2, 3, 5, 7])
def test_serialize_parse_roundtrip(order):
    rng = random.Random(2000 + order)
    for _ in range(100):
        a = random_cyclotomic(order, rng)
        text = str(a)
        again = parse_cyclotomic(text, order)
        assert again == a
        assert str(again) == text


def test_rational_text_forms():
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(-3)) == "-3"
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == -7
    with pytest.raises(ExactNumError):
        parse_rational("x")


def test_zeta_power_reduction():
    # the (n-1)-st power folds onto the lower basis elements
    for n in (3, 5, 7):
        z = Cyclotomic.zeta(n)
        total = Cyclotomic.zero(n)
        for k in range(n):
            total = total + z**k
        assert not total
        assert z**n == 1
        assert z ** (-1) == z ** (n - 1)


def test_field_tags():
    field = cyclotomic_field(3)
    assert field != QQ
    assert field.coerce(Fraction(1, 2)) == Cyclotomic(3, [Fraction(1, 2), 0])
    assert QQ.coerce(Cyclotomic.one(3)) == 1
    with pytest.raises(ExactNumError):
        QQ.coerce(Cyclotomic.zeta(3))
    assert field.parse("-1 - zeta") == -1 - field.zeta()
    assert QQ.format(Fraction(5, 3)) == "5/3"
