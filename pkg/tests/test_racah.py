import random
from fractions import Fraction

import pytest

from racahsym.racah import (B_value, C_value, apply_L, b_value,
                            check_racah_suite, generic_points, lambda_eig,
                            lattice_points, racah_norm_sq, racah_value,
                            racah_weight, reflect_point, shift_vectors,
                            w_value)
from racahsym.rational import DegeneracyError

BETA_INT = (0, 1, 2)
BETA_R2 = (Fraction(1, 5), Fraction(6, 5), Fraction(12, 5), Fraction(18, 5))


# -- building blocks ------------------------------------------------------------

def test_w_examples():
    assert w_value((0, 3), BETA_INT, 1) == 0
    assert w_value((1,), (0, 1), 1) == 2


def test_w_reflection_invariance():
    z, beta = (Fraction(3, 2), 4), (0, Fraction(1, 3), 2)
    assert w_value(z, beta, 1) == w_value(reflect_point(z, beta, [1]), beta, 1)


def test_B_examples():
    # quadratic block at the origin reduces to its constant part
    assert B_value(1, (0, 0), (0, 0), (9, 1, 2)) == 1
    assert B_value(0, (1, 0), (3,), (0, 1)) == 12


def test_b_example():
    assert b_value(1, 0, (1,), (0, 1)) == 4


def test_C_positive_shift_example():
    assert C_value(1, (1,), (1, 3), BETA_INT) == 4


def test_C_zero_shift_matches_block_ratio():
    # all-zero shift coefficient is the product of the diagonal blocks over
    # the zero-bit denominators (the denominators do not drop out; the
    # operator identities pin this reading)
    z, beta = (2, 3, 5), (Fraction(1, 3), Fraction(3, 2), Fraction(8, 3),
                          Fraction(21, 5))
    got = C_value(2, (0, 0), z, beta)
    want = B_value(0, (0, 0), z, beta) * B_value(1, (0, 0), z, beta) \
        * B_value(2, (0, 0), z, beta) \
        / (b_value(1, 0, z, beta) * b_value(2, 0, z, beta))
    assert got == want


def test_C_negative_shift_is_reflected_positive_shift():
    z = (1, 3)
    assert C_value(1, (-1,), z, BETA_INT) == \
        C_value(1, (1,), reflect_point(z, BETA_INT, [1]), BETA_INT)


def test_C_removable_singularity_resolved_by_limit():
    # integer parameters null a denominator block at the lattice edge; the
    # limit along the epsilon line recovers the finite coefficient
    assert C_value(1, (0,), (0, 2), BETA_INT) == Fraction(9, 2)
    assert C_value(1, (-1,), (0, 2), BETA_INT) == 0


def test_C_true_pole_raises():
    with pytest.raises(DegeneracyError):
        C_value(1, (0,), (Fraction(1, 2), 3), (0, 0, 2))


def test_shift_term_counts():
    assert len(shift_vectors(1)) == 3
    assert len(shift_vectors(2)) == 9
    assert len(shift_vectors(3)) == 27


def test_operator_kills_constants():
    one = lambda z: 1
    cases = [(1, (1, 3), BETA_INT),
             (2, (1, 2, 4), (Fraction(1, 3), Fraction(3, 2), Fraction(8, 3),
                             Fraction(21, 5))),
             (3, (0, 1, 2, 4), (Fraction(1, 5), Fraction(6, 5), Fraction(12, 5),
                                Fraction(18, 5), Fraction(24, 5)))]
    for j, z, beta in cases:
        assert apply_L(j, one, z, beta) == 0


def test_operator_I_invariance():
    # reflecting a coordinate and conjugating the argument leaves the action
    # unchanged
    beta = BETA_R2
    f = lambda z: w_value(z, beta, 1) ** 2 + 3 * w_value(z, beta, 2)
    for m in (1, 2):
        for z in generic_points(2, 4):
            zr = reflect_point(z, beta, [m])
            fr = lambda y, _m=m: f(reflect_point(y, beta, [_m]))
            assert apply_L(2, f, z, beta) == apply_L(2, fr, zr, beta)


def test_lambda_examples():
    assert lambda_eig(1, 0, BETA_INT) == 0
    assert lambda_eig(1, 1, BETA_INT) == -2
    assert lambda_eig(2, 2, (0, 1, 2, 3)) == -8


def test_lambda_depends_only_on_head_sum():
    beta = BETA_R2
    for nu_a, nu_b in [((1, 2), (2, 1)), ((0, 3), (3, 0))]:
        assert sum(nu_a[:1]) != sum(nu_b[:1])  # order-1 eigenvalues differ
        assert lambda_eig(2, sum(nu_a), beta) == lambda_eig(2, sum(nu_b), beta)


# -- polynomial values ------------------------------------------------------------

def test_value_trivial_index():
    assert racah_value(2, (0, 0), (0, 1, 2), (0, 1, 2, 3)) == 1


def test_value_hand_case():
    assert racah_value(1, (1,), (0, 2), BETA_INT) == -8


def test_value_is_function_of_w():
    beta = (Fraction(1, 3), Fraction(5, 4), Fraction(7, 3), Fraction(10, 3))
    z1, z2 = Fraction(5, 7), Fraction(5, 2)
    for nu in [(2,), (1,)]:
        plain = racah_value(1, nu, (z1, 3), beta[:3])
        reflected = racah_value(1, nu, (-z1 - beta[1], 3), beta[:3])
        assert plain == reflected
    base = racah_value(2, (1, 1), (z1, z2, 4), beta)
    assert base == racah_value(2, (1, 1), (z1, -z2 - beta[2], 4), beta)


def test_eigen_equation_pointwise():
    beta = BETA_R2
    nu = (1, 1)
    f = lambda z: racah_value(2, nu, z, beta)
    for z in generic_points(2, 5):
        for j in (1, 2):
            lam = lambda_eig(j, sum(nu[:j]), beta)
            assert apply_L(j, f, z, beta) == lam * f(z)


def test_order_one_action_on_quadratic_invariant():
    # the degree-one eigenfunction is affine in w_1, so the operator moves
    # w_1 by its eigenvalue plus the induced constant
    beta, z = BETA_INT, (1, 3)
    w1 = lambda y: w_value(y, beta, 1)
    # read off R(w) = a*w + b from two lattice values
    r0 = racah_value(1, (1,), (0, 3), beta)
    r1 = racah_value(1, (1,), (1, 3), beta)
    a = (r1 - r0) / (w_value((1, 3), beta, 1) - w_value((0, 3), beta, 1))
    b = Fraction(r0)
    lam = lambda_eig(1, 1, beta)
    assert apply_L(1, w1, z, beta) == lam * w1(z) + lam * b / a


# -- weights and norms --------------------------------------------------------------

def test_weight_hand_case():
    assert racah_weight(1, (0, 2), BETA_INT) == 1


def test_weight_requires_staircase():
    with pytest.raises(ValueError):
        racah_weight(1, (2, 1), BETA_INT)
    with pytest.raises(ValueError):
        racah_weight(1, (Fraction(1, 2), 2), BETA_INT)


def test_total_weight_is_trivial_norm():
    for k, N, beta in [(1, 2, BETA_INT), (2, 3, BETA_R2)]:
        total = sum(racah_weight(k, z, beta) for z in lattice_points(k, N))
        assert total == racah_norm_sq(k, (0,) * k, N, beta)


def test_norm_matches_lattice_sum():
    # closed form against the raw weighted sum of squares
    k, N, beta = 1, 2, BETA_INT
    for nu in [(1,), (2,)]:
        got = sum(racah_weight(k, z, beta) * racah_value(k, nu, z, beta) ** 2
                  for z in lattice_points(k, N))
        assert got == racah_norm_sq(k, nu, N, beta)


def test_norm_degree_guard():
    with pytest.raises(ValueError):
        racah_norm_sq(1, (3,), 2, BETA_INT)


def test_lattice_enumeration():
    assert lattice_points(1, 2) == [(0, 2), (1, 2), (2, 2)]
    assert len(lattice_points(2, 3)) == 10
    assert all(z[-1] == 3 and list(z) == sorted(z) for z in lattice_points(2, 3))


# -- operator stability of the w-polynomial space --------------------------------------

def _solve_exact(matrix, rhs):
    """Gaussian elimination over exact rationals."""
    n = len(matrix)
    m = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [row[-1] for row in m]


def _scattered_points(rng, k, count, last=Fraction(31, 7)):
    # the final coordinate is a spectator of the polynomial space, so it is
    # pinned to one value across the whole slice
    pts = []
    while len(pts) < count:
        cand = tuple(Fraction(rng.randint(1, 60), 7) + m for m in range(k)) \
            + (last,)
        if cand not in pts:
            pts.append(cand)
    return pts


def _independent_rows(rng, k, indices, beta):
    # grow a scattered point set until the evaluation matrix is invertible
    while True:
        points = _scattered_points(rng, k, len(indices))
        matrix = [[racah_value(k, nu, z, beta) for nu in indices]
                  for z in points]
        if _invertible(matrix):
            return points, matrix


def _invertible(matrix):
    n = len(matrix)
    m = [row[:] for row in matrix]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = Fraction(m[r][col]) / m[col][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return True


def test_operator_preserves_w_polynomials():
    # expand each w-monomial over the eigenbasis (by exact interpolation on
    # scattered points), push the eigenvalues through, and confirm the
    # operator action pointwise: the image is again the same-degree
    # polynomial in w
    k, N, beta = 2, 2, BETA_R2
    indices = [nu for n in range(N + 1) for nu in _vectors(k, n)]
    rng = random.Random(99)
    points, basis_matrix = _independent_rows(rng, k, indices, beta)
    for exps in indices:
        mono = lambda z: w_value(z, beta, 1) ** exps[0] \
            * w_value(z, beta, 2) ** exps[1]
        coeffs = _solve_exact(basis_matrix, [mono(z) for z in points])
        fresh = _scattered_points(rng, k, 6)
        for z in fresh:  # interpolation really is the polynomial identity
            assert mono(z) == sum(c * racah_value(k, nu, z, beta)
                                  for c, nu in zip(coeffs, indices))
        for j in (1, 2):
            for z in fresh:
                got = apply_L(j, mono, z, beta)
                want = sum(c * lambda_eig(j, sum(nu[:j]), beta)
                           * racah_value(k, nu, z, beta)
                           for c, nu in zip(coeffs, indices))
                assert got == want


def _vectors(k, n):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _vectors(k - 1, n - first):
            yield (first,) + rest


# -- the full suite -------------------------------------------------------------------

def test_suite_univariate_integer_parameters():
    rep = check_racah_suite(1, 2, BETA_INT)
    assert rep.passed


def test_suite_rank_two_integer_parameters():
    rep = check_racah_suite(2, 3, (0, 1, 2, 4))
    assert rep.passed


def test_suite_rank_two_rational_parameters():
    rep = check_racah_suite(2, 3, BETA_R2)
    assert rep.passed
    assert any("9 shift terms" in note for note in rep.notes)


def test_suite_records_term_count():
    rep = check_racah_suite(3, 2, (Fraction(1, 5), Fraction(6, 5),
                                   Fraction(12, 5), Fraction(18, 5),
                                   Fraction(24, 5)), commutativity_points=3)
    assert rep.passed
    assert any("27 shift terms" in note for note in rep.notes)


def test_suite_rejects_short_beta():
    with pytest.raises(ValueError):
        check_racah_suite(2, 2, (0, 1, 2))
