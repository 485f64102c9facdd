import random
from fractions import Fraction
from itertools import product

import pytest

from racahsym.multipoly import MultiPoly
from racahsym.symalg import (SymmetryContext, check_commutation,
                             check_fourth_order, check_gaudin,
                             check_generator_span, fourth_order_sides,
                             gamma_to_b, identity_perm, make_M, make_M_sigma,
                             make_M_tau, make_M_tau_inv, make_t, tau_cycle,
                             tau_cycle_inverse)
from racahsym.weyl import commutator


CTX2 = SymmetryContext(2, (0, 0, 0))
CTX3 = SymmetryContext(3, (Fraction(1, 2), Fraction(1, 3),
                           Fraction(1, 5), Fraction(1, 7)))


def test_context_validation():
    with pytest.raises(ValueError):
        SymmetryContext(2, (0, 0))
    with pytest.raises(ValueError):
        SymmetryContext(0, (0,))
    assert CTX3.gamma_at(1) == Fraction(1, 2)
    assert CTX3.gamma_tail(4) == Fraction(1, 7)
    assert CTX3.gamma_tail(5) == 0
    with pytest.raises(IndexError):
        CTX3.gamma_at(5)


def test_gamma_to_b():
    assert gamma_to_b((Fraction(1, 2),)) == (0,)
    assert gamma_to_b((0,)) == (Fraction(1, 4),)
    assert gamma_to_b((Fraction(1, 3), Fraction(1, 5))) == \
        (Fraction(5, 36), Fraction(21, 100))


# -- generators -----------------------------------------------------------------

def test_generator_annihilates_constants():
    one = MultiPoly.const(2, 1)
    assert make_t(CTX2, 1, 2).apply(one).is_zero
    assert make_t(CTX2, 1, 3).apply(one).is_zero


def test_generator_on_linear_coordinates():
    x1 = MultiPoly.variable(2, 1)
    x2 = MultiPoly.variable(2, 2)
    assert make_t(CTX2, 1, 2).apply(x1) == x2 - x1
    assert make_t(CTX2, 1, 3).apply(x1) == \
        MultiPoly(2, {(0, 0): 1, (1, 0): -2, (0, 1): -1})


def test_generator_index_symmetry():
    for i, j in [(1, 2), (1, 3), (2, 3)]:
        assert make_t(CTX2, i, j) == make_t(CTX2, j, i)
    assert make_t(CTX3, 2, 4) == make_t(CTX3, 4, 2)


def test_generator_index_validation():
    with pytest.raises(ValueError):
        make_t(CTX2, 1, 1)
    with pytest.raises(IndexError):
        make_t(CTX2, 0, 2)
    with pytest.raises(IndexError):
        make_t(CTX2, 1, 4)


def test_generator_preserves_degree():
    for i in range(1, 4):
        for j in range(i + 1, 5):
            t = make_t(CTX3, i, j)
            for exps in product(range(6), repeat=3):
                n = sum(exps)
                if n > 5:
                    continue
                image = t.apply(MultiPoly(3, {exps: 1}))
                assert image.degree() <= n


# -- Jucys-Murphy sums --------------------------------------------------------------

def test_fixed_dimension_two_sums():
    assert make_M(CTX2, 2) == make_t(CTX2, 2, 3)
    assert make_M_tau(CTX2, 2) == make_t(CTX2, 1, 3)
    assert make_M_tau(CTX2, 1) == make_M(CTX2, 1)


def test_vanishing_conventions():
    assert make_M(CTX2, 3).is_zero
    assert make_M(CTX2, 4).is_zero
    with pytest.raises(IndexError):
        make_M(CTX2, 5)


def test_identity_relabeling_is_plain_sum():
    for j in (1, 2, 3):
        assert make_M_sigma(CTX3, j, identity_perm(3)) == make_M(CTX3, j)


def test_relabeling_validation():
    with pytest.raises(ValueError):
        make_M_sigma(CTX2, 1, (1, 1, 2))


def test_cycle_conventions():
    assert tau_cycle(2) == (2, 3, 1)
    assert tau_cycle_inverse(2) == (3, 1, 2)
    assert tau_cycle(4) == (2, 3, 4, 5, 1)


# -- commutation relations -------------------------------------------------------------

def test_disjoint_generators_commute_exactly():
    # d = 3 admits two disjoint pairs
    a = make_t(CTX3, 1, 2) * make_t(CTX3, 3, 4)
    b = make_t(CTX3, 3, 4) * make_t(CTX3, 1, 2)
    assert a == b


def test_commutation_suite_dimension_three():
    rep = check_commutation(CTX3)
    assert rep.passed
    assert rep.counts["total"] == 15  # 3 disjoint splits + 12 triple relations


def test_commutation_suite_dimension_two():
    rng = random.Random(2)
    gamma = tuple(Fraction(rng.randint(-4, 12), rng.randint(1, 8))
                  for _ in range(3))
    rep = check_commutation(SymmetryContext(2, gamma))
    assert rep.passed
    assert all(case.case.startswith("pair-plus-third") for case in rep.cases)


def test_trivial_self_commutator():
    t = make_t(CTX3, 1, 2)
    assert commutator(t, t).is_zero


def test_gaudin_commutativity():
    assert check_gaudin(CTX3).passed
    rep = check_gaudin(SymmetryContext(4, (2, 3, 5, 7, 11)))
    assert rep.passed and rep.counts["total"] == 6


# -- the fourth-order reduction ----------------------------------------------------------

def test_fourth_order_annihilates_constants():
    ctx = SymmetryContext(3, (2, 3, 5, 7))
    lhs, rhs = fourth_order_sides(ctx, 1, 2, 3, 4)
    one = MultiPoly.const(3, 1)
    assert lhs.apply(one).is_zero and rhs.apply(one).is_zero


def test_fourth_order_integer_parameters():
    ctx = SymmetryContext(3, (2, 3, 5, 7))
    lhs, rhs = fourth_order_sides(ctx, 1, 2, 3, 4)
    assert lhs == rhs


def test_fourth_order_rational_parameters_dimension_four():
    rng = random.Random(13)
    for _ in range(2):
        gamma = tuple(Fraction(rng.randint(-15, 15), 16) for _ in range(5))
        ctx = SymmetryContext(4, gamma)
        rep = check_fourth_order(ctx, 2, 5, 1, 3)
        assert rep.passed


def test_fourth_order_rejects_unit_parameters():
    ctx = SymmetryContext(3, (0, 0, 1, 0))
    with pytest.raises(ValueError):
        fourth_order_sides(ctx, 1, 2, 3, 4)
    with pytest.raises(ValueError):
        fourth_order_sides(ctx, 1, 2, 2, 3)


# -- generator span ------------------------------------------------------------------------

def test_span_reproduces_fixed_relations():
    # d = 2: t12 = M1 - M2 - M^tau_2, t13 = M^tau_2, t23 = M2
    assert make_t(CTX2, 1, 2) == \
        make_M(CTX2, 1) - make_M(CTX2, 2) - make_M_tau(CTX2, 2)
    assert make_t(CTX2, 1, 3) == make_M_tau(CTX2, 2)
    assert make_t(CTX2, 2, 3) == make_M(CTX2, 2)


def test_span_suite():
    for ctx in (CTX2, CTX3):
        rep = check_generator_span(ctx)
        assert rep.passed
        # 2 invariance cases + d first-row + d last-column relations
        assert rep.counts["total"] == 2 + 2 * ctx.dim


def test_inverse_cycle_full_sum():
    assert make_M_tau_inv(CTX3, 1) == make_M(CTX3, 1)
