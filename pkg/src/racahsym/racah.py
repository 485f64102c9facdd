"""Multivariable Racah difference operators and polynomials.

The order-j operator acts on functions of lattice variables z1..zj (with
z_{j+1} and the parameter vector beta_0..beta_{j+1} as spectators) as a sum
of 3^j shift terms with rational-function coefficients, minus a constant.
Coefficients for negative shifts come from reflecting the evaluation point
coordinatewise (z_m -> -z_m - beta_m), which realizes the defining
involutions pointwise and exactly.

Operators are realized as pointwise evaluators rather than symbolic
rational-function elements: a coefficient is an exact number at an exact
point.  Where a coefficient's denominator vanishes removably (integer-like
parameters at lattice boundaries), the value is recovered as the limit along
a deterministic line (all operator variables shifted by a common formal
epsilon); a genuine pole raises :class:`DegeneracyError` naming the factor.

The polynomials attached to these operators are products of terminating
hypergeometric-type sums.  They are evaluated in a cancellation-safe form
(each summand carries the three complementary tail factors rather than
dividing by their Pochhammer prefixes), which is polynomial in all inputs,
so lattice points that would null a naive series denominator are fine.

Index conventions: ``beta[m]`` holds beta_m (0-based, matching the natural
parameter numbering), while ``z[m-1]`` holds z_m with z_0 = 0 implicit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import factorial
from typing import Callable, Iterable, Sequence

from .rational import DegeneracyError, Rational, pochhammer
from .report import VerificationReport, encode_rationals

HALF = Fraction(1, 2)

Point = tuple[Rational, ...]
Beta = tuple[Rational, ...]
Shift = tuple[int, ...]


def _exact_div(num: Rational, den: Rational) -> Rational:
    if den == 0:
        raise ZeroDivisionError("exact division by zero")
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        return q if r == 0 else Fraction(num, den)
    return Fraction(num) / Fraction(den)


class _EpsPoly:
    """Dense polynomial in a formal infinitesimal, for limit evaluation."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Rational]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def const(cls, value: Rational) -> "_EpsPoly":
        return cls([value])

    def __add__(self, other):
        o = other.c if isinstance(other, _EpsPoly) else [other]
        n = max(len(self.c), len(o))
        return _EpsPoly([(self.c[i] if i < len(self.c) else 0)
                         + (o[i] if i < len(o) else 0) for i in range(n)])

    __radd__ = __add__

    def __mul__(self, other):
        o = other.c if isinstance(other, _EpsPoly) else [other]
        if not self.c or not o:
            return _EpsPoly([])
        out = [0] * (len(self.c) + len(o) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o):
                out[i + j] += a * b
        return _EpsPoly(out)

    __rmul__ = __mul__

    def __sub__(self, other):
        o = other.c if isinstance(other, _EpsPoly) else [other]
        n = max(len(self.c), len(o))
        return _EpsPoly([(self.c[i] if i < len(self.c) else 0)
                         - (o[i] if i < len(o) else 0) for i in range(n)])

    def __rsub__(self, other):
        return _EpsPoly([other]) - self

    def __neg__(self):
        return _EpsPoly([-a for a in self.c])

    @property
    def is_zero(self) -> bool:
        return not self.c

    def valuation(self) -> int:
        for i, a in enumerate(self.c):
            if a != 0:
                return i
        return len(self.c)

    def coeff(self, i: int) -> Rational:
        return self.c[i] if i < len(self.c) else 0


# -- coefficient building blocks ----------------------------------------------

def w_value(z: Sequence[Rational], beta: Beta, s: int) -> Rational:
    """The quadratic invariant w_s = z_s (z_s + beta_s), 1-based s."""
    if s < 1:
        raise IndexError("w index must be >= 1")
    return z[s - 1] * (z[s - 1] + beta[s])


def reflect_point(z: Sequence[Rational], beta: Beta,
                  coords: Iterable[int]) -> tuple:
    """Apply z_m -> -z_m - beta_m on the given 1-based coordinates."""
    out = list(z)
    for m in coords:
        out[m - 1] = -out[m - 1] - beta[m]
    return tuple(out)


def _z_at(z: Sequence, m: int):
    return 0 if m == 0 else z[m - 1]


def B_value(i: int, bits: tuple[int, int], z: Sequence, beta: Beta):
    """Numerator building block indexed by adjacent shift bits; z_0 = 0."""
    zi, zi1 = _z_at(z, i), _z_at(z, i + 1)
    bi, bi1 = beta[i], beta[i + 1]
    if bits == (0, 0):
        return zi * (zi + bi) + zi1 * (zi1 + bi1) + (bi + 1) * (bi1 - 1) * HALF
    if bits == (0, 1):
        return (zi1 + zi + bi1) * (zi1 - zi + bi1 - bi)
    if bits == (1, 0):
        return (zi1 - zi) * (zi1 + zi + bi1)
    if bits == (1, 1):
        return (zi1 + zi + bi1) * (zi1 + zi + bi1 + 1)
    raise ValueError(f"bad bit pair {bits!r}")


def _b_factors(i: int, bit: int, z: Sequence, beta: Beta):
    """Denominator factors (list) and scale for the block b_i^bit."""
    t = 2 * z[i - 1] + beta[i]
    if bit == 0:
        return [t + 1, t - 1], HALF
    if bit == 1:
        return [t + 1, t], 1
    raise ValueError(f"bad bit {bit!r}")


def b_value(i: int, bit: int, z: Sequence, beta: Beta) -> Rational:
    factors, scale = _b_factors(i, bit, z, beta)
    out = scale
    for f in factors:
        out = out * f
    return out


@lru_cache(maxsize=None)
def shift_vectors(j: int) -> tuple[Shift, ...]:
    """All 3^j shift vectors of the order-j operator, in a fixed order."""
    return tuple(product((-1, 0, 1), repeat=j))


@lru_cache(maxsize=100000)
def C_value(j: int, shift: Shift, z: Point, beta: Beta) -> Rational:
    """Exact coefficient of the shift term E^shift in the order-j operator.

    For nonnegative shifts this is the product of the B blocks over the b
    blocks; mixed-sign shifts are evaluated at the reflected point.  A
    removable 0/0 is resolved by the deterministic epsilon-line limit.
    """
    if len(shift) != j or any(s not in (-1, 0, 1) for s in shift):
        raise ValueError(f"bad shift vector {shift!r} for order {j}")
    if len(z) < j + 1 or len(beta) < j + 2:
        raise ValueError("point/parameter vectors too short for this order")
    eta = tuple(abs(s) for s in shift)
    neg = [m for m, s in enumerate(shift, start=1) if s < 0]
    zr = reflect_point(z, beta, neg)

    den: Rational = 1
    vanished = None
    for m in range(1, j + 1):
        factors, scale = _b_factors(m, eta[m - 1], zr, beta)
        den = den * scale
        for f in factors:
            if f == 0 and vanished is None:
                vanished = f"b_{m}^{eta[m - 1]} at z_{m}={zr[m - 1]}"
            den = den * f
    if vanished is None:
        num: Rational = 1
        padded = (0,) + eta + (0,)
        for m in range(0, j + 1):
            num = num * B_value(m, (padded[m], padded[m + 1]), zr, beta)
        return _exact_div(num, den)

    # epsilon-line limit: perturb every operator variable, reflect afterwards
    zeps: list = [_EpsPoly([z[m - 1], 1]) if m <= j else _EpsPoly([z[m - 1]])
                  for m in range(1, j + 2)]
    for m in neg:
        zeps[m - 1] = _EpsPoly([-z[m - 1] - beta[m], -1])
    den_p = _EpsPoly([1])
    for m in range(1, j + 1):
        factors, scale = _b_factors(m, eta[m - 1], zeps, beta)
        den_p = den_p * scale
        for f in factors:
            den_p = den_p * f
    num_p = _EpsPoly([1])
    padded = (0,) + eta + (0,)
    for m in range(0, j + 1):
        num_p = num_p * B_value(m, (padded[m], padded[m + 1]), zeps, beta)
    if den_p.is_zero:
        raise DegeneracyError(f"identically vanishing denominator {vanished}")
    vd = den_p.valuation()
    if num_p.is_zero or num_p.valuation() > vd:
        return 0
    if num_p.valuation() < vd:
        raise DegeneracyError(f"pole from vanishing factor {vanished}")
    return _exact_div(num_p.coeff(vd), den_p.coeff(vd))


def operator_constant(j: int, z: Sequence[Rational], beta: Beta) -> Rational:
    """The subtracted scalar z_{j+1}(z_{j+1}+beta_{j+1}) + (beta_0+1)(beta_{j+1}-1)/2."""
    return w_value(z, beta, j + 1) + (beta[0] + 1) * (beta[j + 1] - 1) * HALF


def apply_L(j: int, f: Callable[[Point], Rational], z: Point,
            beta: Beta) -> Rational:
    """Apply the order-j operator to a function, evaluated at the point z."""
    z = tuple(z)
    total: Rational = 0
    for shift in shift_vectors(j):
        coeff = C_value(j, shift, z, beta)
        if coeff == 0:
            continue
        moved = tuple(z[m] + shift[m] if m < j else z[m] for m in range(len(z)))
        total += coeff * f(moved)
    return total - operator_constant(j, z, beta) * f(z)


def lambda_eig(j: int, s: Rational, beta: Beta) -> Rational:
    """Eigenvalue -s (s + beta_{j+1} - beta_0 - 1) of the order-j operator."""
    return -s * (s + beta[j + 1] - beta[0] - 1)


# -- the polynomial family -----------------------------------------------------

def racah_value(k: int, nu: Sequence[int], z: Sequence[Rational],
                beta: Beta) -> Rational:
    """Exact value of the rank-k polynomial of index nu at the point z.

    Evaluated as a product over j of terminating sums in the cancellation-safe
    form: summand m carries the complementary tails (b+m)_{nu_j-m} of the
    three prefactor bases instead of dividing by (b)_m, so the value is
    polynomial in z and beta and never divides by a vanishing Pochhammer.
    """
    if len(nu) != k or any(v < 0 for v in nu):
        raise ValueError(f"bad index vector {nu!r} for rank {k}")
    if len(z) < k + 1 or len(beta) < k + 2:
        raise ValueError("point/parameter vectors too short for this rank")
    total: Rational = 1
    head = 0  # running sum nu_1 + ... + nu_{j-1}
    for j in range(1, k + 1):
        nj = nu[j - 1]
        if nj == 0:
            continue
        b0, bj, bj1 = beta[0], beta[j], beta[j + 1]
        zj, zj1 = z[j - 1], z[j]
        base1 = 2 * head + bj - b0
        base2 = head + bj1 + zj1
        base3 = head - zj1
        term: Rational = 1
        factor: Rational = 0
        for m in range(nj + 1):
            if m > 0:
                term = _exact_div(
                    term * (-(nj - m + 1)) * (nj + 2 * head + bj1 - b0 - 2 + m)
                    * (head - zj + m - 1) * (head + bj + zj + m - 1), m)
            factor += term * pochhammer(base1 + m, nj - m) \
                * pochhammer(base2 + m, nj - m) * pochhammer(base3 + m, nj - m)
        total = total * factor
        head += nj
    return total


def lattice_points(k: int, N: int) -> list[Point]:
    """The staircase lattice: 0 <= z_1 <= ... <= z_k <= z_{k+1} = N."""
    if k < 0 or N < 0:
        raise ValueError("rank and size must be nonnegative")
    return [tuple(c) + (N,) for c in combinations_with_replacement(range(N + 1), k)]


def racah_weight(k: int, z: Sequence[int], beta: Beta) -> Rational:
    """Exact orthogonality weight at a staircase lattice point."""
    if len(z) < k + 1:
        raise ValueError("lattice point too short")
    prev = 0
    for m in range(k + 1):
        if not isinstance(z[m], int) or z[m] < prev:
            raise ValueError(f"not a staircase lattice point: {tuple(z)}")
        prev = z[m]
    val: Rational = 1
    for j in range(0, k + 1):
        zj, zj1 = _z_at(z, j), z[j]
        dif, tot = zj1 - zj, zj1 + zj
        den = factorial(dif) * pochhammer(beta[j] + 1, tot)
        if den == 0:
            raise DegeneracyError(f"vanishing factor (beta_{j}+1)_{tot}")
        val = val * _exact_div(
            pochhammer(beta[j + 1] - beta[j], dif) * pochhammer(beta[j + 1], tot),
            den)
    for j in range(1, k + 1):
        den = pochhammer(beta[j] * HALF, z[j - 1])
        if den == 0:
            raise DegeneracyError(f"vanishing factor (beta_{j}/2)_{z[j - 1]}")
        val = val * _exact_div(pochhammer((beta[j] + 2) * HALF, z[j - 1]), den)
    return val


def racah_norm_sq(k: int, nu: Sequence[int], N: int, beta: Beta) -> Rational:
    """Closed-form squared norm over the staircase lattice of size N."""
    n = sum(nu)
    if n > N:
        raise ValueError(f"index degree {n} exceeds lattice size {N}")
    den = factorial(N) * pochhammer(beta[0] + 1, N)
    if den == 0:
        raise DegeneracyError(f"vanishing factor (beta_0+1)_{N}")
    val = _exact_div(
        pochhammer(beta[k + 1], N + n) * pochhammer(-N, n)
        * pochhammer(-N - beta[0], n) * pochhammer(2 * n + beta[k + 1] - beta[0], N - n),
        den)
    head = 0
    for j in range(1, k + 1):
        nj = nu[j - 1]
        val = val * factorial(nj) * pochhammer(beta[j + 1] - beta[j], nj) \
            * pochhammer(2 * head + beta[j] - beta[0], nj) \
            * pochhammer(2 * head + nj + beta[j + 1] - beta[0] - 1, nj)
        head += nj
    return val


# -- generic evaluation points ---------------------------------------------------

def generic_points(k: int, count: int, salt: int = 0) -> list[Point]:
    """Deterministic generic rational points for pointwise operator checks.

    Components avoid half-integer alignments so that no shift denominator can
    vanish for the parameter regimes used by the suites.
    """
    pts = []
    for t in range(count):
        pts.append(tuple(
            Fraction(2 + 3 * (t + salt) + 5 * m, 7) + m for m in range(1, k + 2)))
    return pts


# -- the verification suite -------------------------------------------------------

def check_racah_suite(k: int, N: int, beta: Sequence[Rational],
                      commutativity_points: int = 20) -> VerificationReport:
    """Eigen-equations on the lattice, pairwise commutativity on a spanning
    polynomial set at generic points, orthogonality and closed-form norms."""
    beta = tuple(beta)
    if len(beta) < k + 2:
        raise ValueError(f"need at least {k + 2} parameters, got {len(beta)}")
    report = VerificationReport(suite="racah")
    params = {"k": k, "N": N, "beta": encode_rationals(beta)}
    report.note(f"operator order {k} enumerates {len(shift_vectors(k))} shift terms")

    lattice = lattice_points(k, N)
    indices = [nu for n in range(N + 1)
               for nu in _index_vectors(k, n)]

    rcache: dict[tuple, Rational] = {}

    def rval(nu: tuple, z: Point) -> Rational:
        key = (nu, z)
        out = rcache.get(key)
        if out is None:
            out = racah_value(k, nu, z, beta)
            rcache[key] = out
        return out

    # (a) eigen-equations at every lattice point
    for nu in indices:
        f = lambda zz, _nu=nu: rval(_nu, zz)
        for j in range(1, k + 1):
            lam = lambda_eig(j, sum(nu[:j]), beta)
            bad = None
            for z in lattice:
                try:
                    lhs = apply_L(j, f, z, beta)
                except DegeneracyError as exc:
                    bad = {"z": encode_rationals(z), "degeneracy": str(exc)}
                    break
                rhs = lam * rval(nu, z)
                if lhs != rhs:
                    bad = {"z": encode_rationals(z), "lhs": str(Fraction(lhs)),
                           "rhs": str(Fraction(rhs))}
                    break
            report.add(f"eigen[nu={list(nu)},j={j}]", bad is None,
                       params={**params, "nu": list(nu), "j": j,
                               "eigenvalue": str(Fraction(lam))},
                       witness=bad)

    # (b) pairwise commutativity on w-monomials at generic rational points
    monos = [e for n in range(N + 1) for e in _index_vectors(k, n)]
    points = generic_points(k, commutativity_points)
    for ja, jb in combinations(range(1, k + 1), 2):
        bad = None
        for e in monos:
            f = _w_monomial(e, beta)
            for z in points:
                ab = apply_L(ja, lambda y: apply_L(jb, f, y, beta), z, beta)
                ba = apply_L(jb, lambda y: apply_L(ja, f, y, beta), z, beta)
                if ab != ba:
                    bad = {"monomial": list(e), "z": encode_rationals(z),
                           "ab": str(Fraction(ab)), "ba": str(Fraction(ba))}
                    break
            if bad:
                break
        report.add(f"commute[L{ja},L{jb}]", bad is None,
                   params={**params, "points": commutativity_points},
                   witness=bad)

    # (c) weight positivity for this parameter regime (checked, not assumed)
    weights = {}
    bad = None
    for z in lattice:
        try:
            weights[z] = racah_weight(k, z, beta)
        except DegeneracyError as exc:
            bad = {"z": list(z), "degeneracy": str(exc)}
            break
        if weights[z] <= 0:
            bad = {"z": list(z), "weight": str(Fraction(weights[z]))}
            break
    report.add("weight-positive", bad is None, params=params, witness=bad)

    # (d) orthogonality and closed-form norms over the lattice
    if bad is None:
        table = {nu: [rval(nu, z) for z in lattice] for nu in indices}
        wlist = [weights[z] for z in lattice]
        for a in range(len(indices)):
            for b in range(a, len(indices)):
                nu, mu = indices[a], indices[b]
                got = sum(w * x * y for w, x, y
                          in zip(wlist, table[nu], table[mu]))
                want = racah_norm_sq(k, nu, N, beta) if nu == mu else 0
                report.add(f"orthogonality[{list(nu)},{list(mu)}]", got == want,
                           params=params,
                           witness={"sum": str(Fraction(got)),
                                    "expected": str(Fraction(want))})
    return report


def _index_vectors(k: int, n: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _index_vectors(k - 1, n - first):
            yield (first,) + rest


def _w_monomial(exps: Sequence[int], beta: Beta) -> Callable[[Point], Rational]:
    def f(z: Point) -> Rational:
        out: Rational = 1
        for s, e in enumerate(exps, start=1):
            if e:
                out = out * w_value(z, beta, s) ** e
        return out
    return f
