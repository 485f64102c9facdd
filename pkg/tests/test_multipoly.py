import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from racahsym.multipoly import (DimensionMismatchError, MultiPoly,
                                compose_projective, one_minus_sum)


def poly(dim, terms):
    return MultiPoly(dim, terms)


def var(dim, i):
    return MultiPoly.variable(dim, i)


@st.composite
def small_polys(draw, dim):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(dim))
        coeff = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        terms[exps] = terms.get(exps, 0) + coeff
    return MultiPoly(dim, terms)


# -- construction and canonical form ------------------------------------------

def test_zero_coefficients_dropped():
    p = poly(2, {(1, 0): 0, (0, 1): 2})
    assert p.terms == {(0, 1): 2}
    assert poly(2, {(1, 1): Fraction(0)}).is_zero


def test_bad_exponents_rejected():
    with pytest.raises(ValueError):
        poly(2, {(1,): 1})
    with pytest.raises(ValueError):
        poly(2, {(-1, 0): 1})


def test_degree_conventions():
    assert MultiPoly.zero(3).degree() == -1
    assert MultiPoly.const(3, 5).degree() == 0
    assert (var(2, 1) * var(2, 2)).degree() == 2


# -- multiplication -------------------------------------------------------------

def test_mul_identity():
    p = poly(2, {(2, 1): Fraction(3, 2), (0, 0): -1})
    assert MultiPoly.const(2, 1) * p == p


def test_mul_variables():
    assert var(2, 1) * var(2, 2) == poly(2, {(1, 1): 1})


def test_mul_hand_expansion():
    # (3x1 - 1)(x1 + 2x2 - 1) = 3x1^2 + 6x1x2 - 4x1 - 2x2 + 1
    a = poly(2, {(1, 0): 3, (0, 0): -1})
    b = poly(2, {(1, 0): 1, (0, 1): 2, (0, 0): -1})
    want = poly(2, {(2, 0): 3, (1, 1): 6, (1, 0): -4, (0, 1): -2, (0, 0): 1})
    assert a * b == want


def test_mul_degree_additive():
    a = poly(2, {(2, 0): 1, (0, 0): 1})
    b = poly(2, {(1, 3): Fraction(1, 2)})
    assert (a * b).degree() == a.degree() + b.degree()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        var(2, 1) * var(3, 1)
    with pytest.raises(DimensionMismatchError):
        var(2, 1) + var(3, 1)


@settings(max_examples=60)
@given(small_polys(2), small_polys(2))
def test_mul_commutes(p, q):
    assert p * q == q * p


@settings(max_examples=40)
@given(small_polys(2), small_polys(2), small_polys(2))
def test_mul_distributes(p, q, r):
    assert p * (q + r) == p * q + p * r


# -- derivatives -----------------------------------------------------------------

def test_partial_examples():
    assert MultiPoly.const(2, 7).partial(1).is_zero
    p = poly(2, {(2, 1): 1})  # x1^2 x2
    assert p.partial(1) == poly(2, {(1, 1): 2})
    assert p.partial(2) == poly(2, {(2, 0): 1})


def test_partial_index_range():
    with pytest.raises(IndexError):
        var(2, 1).partial(3)
    with pytest.raises(IndexError):
        var(2, 1).partial(0)


@settings(max_examples=40)
@given(small_polys(3))
def test_partials_commute(p):
    assert p.partial(1).partial(2) == p.partial(2).partial(1)


# -- evaluation ------------------------------------------------------------------

def test_eval_examples():
    assert (var(2, 1) + var(2, 2)).eval_at([Fraction(1, 2), Fraction(1, 2)]) == 1
    p = poly(2, {(1, 0): 3, (0, 0): -1})
    assert p.eval_at([Fraction(1, 3), 0]) == 0
    assert (var(2, 1) * var(2, 2)).eval_at(
        [Fraction(2, 3), Fraction(3, 4)]) == Fraction(1, 2)


def test_eval_is_ring_homomorphism():
    rng = random.Random(7)
    p = poly(2, {(2, 0): Fraction(1, 3), (1, 1): -2, (0, 0): 1})
    q = poly(2, {(0, 2): 5, (1, 0): Fraction(-1, 2)})
    for _ in range(50):
        point = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(2)]
        assert (p * q).eval_at(point) == p.eval_at(point) * q.eval_at(point)
        assert (p + q).eval_at(point) == p.eval_at(point) + q.eval_at(point)


def test_eval_length_checked():
    with pytest.raises(DimensionMismatchError):
        var(2, 1).eval_at([1])


# -- substitution -----------------------------------------------------------------

def test_substitute_identity():
    p = poly(2, {(2, 1): 3, (0, 1): -1})
    assert p.substitute([var(2, 1), var(2, 2)]) == p


def test_substitute_examples():
    images = [one_minus_sum(2), var(2, 1)]
    assert var(2, 1).substitute(images) == one_minus_sum(2)
    p = var(2, 1) * var(2, 2)
    got = p.substitute([var(2, 2), one_minus_sum(2)])
    want = poly(2, {(0, 1): 1, (1, 1): -1, (0, 2): -1})
    assert got == want


def test_substitute_length_checked():
    with pytest.raises(DimensionMismatchError):
        var(2, 1).substitute([var(2, 1)])


# -- projective composition --------------------------------------------------------

def test_compose_projective_affine():
    # q(t) = t with num = 2x1 - 1, den = 1 gives 2x1 - 1
    num = var(2, 1).scaled(2) - MultiPoly.const(2, 1)
    got = compose_projective([0, 1], num, MultiPoly.const(2, 1), 1)
    assert got == num


def test_compose_projective_constant():
    got = compose_projective([1], var(2, 1), one_minus_sum(2), 0)
    assert got == MultiPoly.const(2, 1)


def test_compose_projective_hand_case():
    den = MultiPoly.const(2, 1) - var(2, 1)
    num = var(2, 2).scaled(2) - den
    got = compose_projective([0, 1], num, den, 1)
    assert got == poly(2, {(1, 0): 1, (0, 1): 2, (0, 0): -1})


def test_compose_projective_degree_bound():
    with pytest.raises(ValueError):
        compose_projective([1, 2, 3], var(1, 1), var(1, 1), 1)


def test_compose_projective_evaluates_consistently():
    # den^m q(num/den) at points where den != 0
    rng = random.Random(3)
    num = poly(2, {(1, 0): 2, (0, 1): -1, (0, 0): 1})
    den = one_minus_sum(2)
    coeffs = [Fraction(1, 2), -2, Fraction(3, 5)]
    m = 3
    composed = compose_projective(coeffs, num, den, m)
    for _ in range(25):
        point = [Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(2)]
        dv = den.eval_at(point)
        if dv == 0:
            continue
        t = num.eval_at(point) / dv
        qval = sum(c * t ** k for k, c in enumerate(coeffs))
        assert composed.eval_at(point) == dv ** m * qval


# -- serialization and printing ------------------------------------------------------

def test_records_graded_lex_order_and_roundtrip():
    p = poly(2, {(0, 0): 1, (2, 0): Fraction(1, 2), (1, 1): -3, (0, 1): 4})
    recs = p.to_records()
    assert [r["exponents"] for r in recs] == [[2, 0], [1, 1], [0, 1], [0, 0]]
    assert recs[0]["coeff"] == "1/2"
    assert MultiPoly.from_records(2, recs) == p


def test_str_rendering():
    p = poly(2, {(1, 0): 3, (0, 0): -1})
    assert str(p) == "3*x1 - 1"
    assert str(MultiPoly.zero(2)) == "0"
