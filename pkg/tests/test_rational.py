import random
from fractions import Fraction

import pytest

from racahsym.rational import format_rational, parse_rational, pochhammer, sign


def test_pochhammer_empty_product():
    assert pochhammer(Fraction(3), 0) == 1
    assert pochhammer(0, 0) == 1


def test_pochhammer_integer():
    assert pochhammer(3, 2) == 12


def test_pochhammer_half():
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)


def test_pochhammer_negative_length_rejected():
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_pochhammer_splits_additively():
    # (a)_{m+n} = (a)_m (a+m)_n, randomized over exact rationals
    rng = random.Random(20240817)
    for _ in range(200):
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        m, n = rng.randint(0, 20), rng.randint(0, 20)
        assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


def test_parse_and_format():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -7 ") == -7
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(5, 1)) == "5"
    assert format_rational(5) == "5"
    with pytest.raises(ValueError):
        parse_rational("x")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_sign():
    assert sign(Fraction(-2, 7)) == -1
    assert sign(0) == 0
    assert sign(3) == 1
