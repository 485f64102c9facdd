"""Dirichlet inner product and Jacobi polynomial bases on the simplex.

The inner product is computed through exact monomial moments of the
normalized Dirichlet weight (a ratio of Pochhammer symbols), never by
quadrature.  The orthogonal basis is a nested product of univariate Jacobi
polynomials with projective arguments; a second basis is obtained by
simultaneously relabeling simplex coordinates and parameters with the cyclic
permutation.

Conventions for the cyclic action, frozen after programmatic validation (see
the tests): with tau(m) = m+1 (mod d+1), the transported polynomial is built
from the relabeled parameter vector gamma'(k) = gamma(tau(k)) and then slot i
is substituted with the coordinate of label tau(i), where label d+1 carries
1 - x1 - ... - xd.  Under that pairing the inner product is invariant and
the relabeled Jucys-Murphy sums act diagonally with the relabeled spectra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .multipoly import MultiPoly, compose_projective, one_minus_sum
from .rational import DegeneracyError, Rational, pochhammer
from .report import VerificationReport, encode_rationals
from .symalg import (SymmetryContext, make_M, make_M_sigma, make_t,
                     tau_cycle)

JacobiIndex = tuple[int, ...]


# -- index bookkeeping -------------------------------------------------------

def indices_of_degree(d: int, n: int) -> Iterator[JacobiIndex]:
    """All length-d tuples of nonnegative ints summing to n, lex ascending."""
    if d == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in indices_of_degree(d - 1, n - first):
            yield (first,) + rest


def indices_up_to(d: int, n: int) -> Iterator[JacobiIndex]:
    """All indices of total degree at most n, graded lex ascending."""
    for m in range(n + 1):
        yield from indices_of_degree(d, m)


def head_sum(v: Sequence[Rational], j: int) -> Rational:
    """v_1 + ... + v_j (empty for j = 0)."""
    return sum(v[:j], 0)


def tail_sum(v: Sequence[Rational], j: int) -> Rational:
    """v_j + v_{j+1} + ... (empty once j exceeds the length)."""
    return sum(v[j - 1:], 0)


# -- Dirichlet moments and the inner product ---------------------------------

@lru_cache(maxsize=None)
def dirichlet_moment(ctx: SymmetryContext, mu: JacobiIndex) -> Fraction:
    """Exact moment of x^mu under the normalized simplex weight."""
    ctx.requires_orthogonality_regime()
    if len(mu) != ctx.dim or any(m < 0 for m in mu):
        raise ValueError(f"bad moment exponent {mu!r} for dimension {ctx.dim}")
    num: Rational = 1
    for j, m in enumerate(mu, start=1):
        num *= pochhammer(ctx.gamma_at(j) + 1, m)
    return Fraction(num, 1) / pochhammer(ctx.gamma_total() + ctx.dim + 1, sum(mu))


def inner_product(ctx: SymmetryContext, p: MultiPoly, q: MultiPoly) -> Fraction:
    """Bilinear extension of the moment functional to a product of polynomials."""
    total = Fraction(0)
    for exps, coeff in (p * q).terms.items():
        total += coeff * dirichlet_moment(ctx, exps)
    return total


# -- univariate Jacobi polynomials -------------------------------------------

def jacobi_1d(n: int, alpha: Rational, beta: Rational) -> list[Fraction]:
    """Coefficients (ascending powers of t) of the degree-n Jacobi polynomial
    normalized so its terminating series prefactor is (alpha+1)_n/(beta+1)_n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    den0 = pochhammer(beta + 1, n)
    if den0 == 0:
        raise DegeneracyError(f"vanishing factor ({beta}+1)_{n}")
    prefactor = Fraction(pochhammer(alpha + 1, n), 1) / den0
    # series in u = (1-t)/2, then expanded to powers of t
    coeffs = [Fraction(0)] * (n + 1)
    term = Fraction(1)
    u_pow: list[Fraction] = [Fraction(1)]  # (1-t)/2 raised to m, ascending in t
    for m in range(n + 1):
        if m > 0:
            den = (alpha + m) * m  # incremental (alpha+1)_m * m!
            if den == 0:
                raise DegeneracyError(f"vanishing factor ({alpha}+1)_{m}")
            term = term * (-(n - m + 1)) * (n + alpha + beta + m) / den
            u_pow = _mul_univariate(u_pow, [Fraction(1, 2), Fraction(-1, 2)])
        for k, c in enumerate(u_pow):
            coeffs[k] += term * c
    return [prefactor * c for c in coeffs]


def _mul_univariate(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


# -- the simplex Jacobi basis -------------------------------------------------

def a_params(ctx: SymmetryContext, nu: JacobiIndex) -> tuple[Rational, ...]:
    """The nested first parameters: a_j = |gamma^(j+1)| + 2|nu^(j+1)| + d - j."""
    d = ctx.dim
    return tuple(ctx.gamma_tail(j + 1) + 2 * tail_sum(nu, j + 1) + d - j
                 for j in range(1, d + 1))


@lru_cache(maxsize=None)
def jacobi_basis(ctx: SymmetryContext, nu: JacobiIndex) -> MultiPoly:
    """The orthogonal basis polynomial of index nu (total degree |nu|)."""
    d = ctx.dim
    if len(nu) != d or any(m < 0 for m in nu):
        raise ValueError(f"bad index {nu!r} for dimension {d}")
    avec = a_params(ctx, nu)
    out = MultiPoly.const(d, 1)
    for k in range(1, d + 1):
        if nu[k - 1] == 0:
            continue
        den = MultiPoly.const(d, 1)
        for p in range(1, k):
            den = den - MultiPoly.variable(d, p)
        num = MultiPoly.variable(d, k).scaled(2) - den
        coeffs = jacobi_1d(nu[k - 1], avec[k - 1], ctx.gamma_at(k))
        out = out * compose_projective(coeffs, num, den, nu[k - 1])
    return out


@lru_cache(maxsize=None)
def jacobi_norm_sq(ctx: SymmetryContext, nu: JacobiIndex) -> Fraction:
    """Closed-form squared norm of the basis polynomial of index nu."""
    d = ctx.dim
    avec = a_params(ctx, nu)
    out = Fraction(1) / pochhammer(ctx.gamma_total() + d + 1, 2 * sum(nu))
    for j in range(1, d + 1):
        nj = nu[j - 1]
        gj, aj = ctx.gamma_at(j), avec[j - 1]
        num = pochhammer(gj + aj + nj + 1, nj) * pochhammer(aj + 1, nj) \
            * pochhammer(1, nj)
        out *= Fraction(num, 1) / pochhammer(gj + 1, nj)
    return out


# -- the cyclic relabeling and its image basis --------------------------------

def sigma_context(ctx: SymmetryContext, sigma: Sequence[int]) -> SymmetryContext:
    """Context with parameters relabeled along sigma: gamma'(k) = gamma(sigma(k))."""
    return SymmetryContext(ctx.dim, tuple(ctx.gamma_at(s) for s in sigma))


def sigma_images(d: int, sigma: Sequence[int]) -> list[MultiPoly]:
    """Substitution images: slot i receives the coordinate of label sigma(i),
    where label d+1 carries the polynomial 1 - x1 - ... - xd."""
    images = []
    for i in range(1, d + 1):
        target = sigma[i - 1]
        images.append(one_minus_sum(d) if target == d + 1
                      else MultiPoly.variable(d, target))
    return images


def tau_context(ctx: SymmetryContext) -> SymmetryContext:
    return sigma_context(ctx, tau_cycle(ctx.dim))


@lru_cache(maxsize=None)
def tau_basis(ctx: SymmetryContext, nu: JacobiIndex) -> MultiPoly:
    """Image of the basis polynomial under the cyclic relabeling."""
    d = ctx.dim
    base = jacobi_basis(tau_context(ctx), nu)
    return base.substitute(sigma_images(d, tau_cycle(d)))


def tau_norm_sq(ctx: SymmetryContext, nu: JacobiIndex) -> Fraction:
    """Squared norm of the relabeled basis polynomial (measure invariance)."""
    return jacobi_norm_sq(tau_context(ctx), nu)


def spectral_eigenvalue(ctx: SymmetryContext, nu: JacobiIndex, j: int) -> Rational:
    """Eigenvalue of the j-th Jucys-Murphy sum on the basis element nu."""
    t = tail_sum(nu, j)
    return -t * (t + ctx.gamma_tail(j) + ctx.dim + 1 - j)


# -- basis expansion -----------------------------------------------------------

def expand_in_basis(ctx: SymmetryContext, p: MultiPoly, n: int,
                    use_tau: bool = False) -> dict[JacobiIndex, Fraction]:
    """Exact coefficients of p over the basis elements of degree <= n.

    Coefficients come from orthogonal projection; the expansion is then
    re-summed and compared against p, so a successful return is a proof of
    exact reconstruction.
    """
    if p.degree() > n:
        raise ValueError(f"degree {p.degree()} exceeds expansion bound {n}")
    basis = tau_basis if use_tau else jacobi_basis
    norm = tau_norm_sq if use_tau else jacobi_norm_sq
    out: dict[JacobiIndex, Fraction] = {}
    recon = MultiPoly.zero(ctx.dim)
    for mu in indices_up_to(ctx.dim, n):
        b = basis(ctx, mu)
        c = inner_product(ctx, p, b) / norm(ctx, mu)
        if c != 0:
            out[mu] = c
            recon = recon + b.scaled(c)
    if recon != p:
        raise ArithmeticError("basis expansion failed to reconstruct the input")
    return out


# -- verification suites --------------------------------------------------------

def check_spectral(ctx: SymmetryContext, n: int) -> VerificationReport:
    """Diagonal action of the Jucys-Murphy sums on both bases, degree <= n."""
    report = VerificationReport(suite="spectral")
    d = ctx.dim
    params_base = {"d": d, "gamma": encode_rationals(ctx.gamma)}
    tctx = tau_context(ctx)
    tau = tau_cycle(d)
    for nu in indices_up_to(d, n):
        p = jacobi_basis(ctx, nu)
        pt = tau_basis(ctx, nu)
        for j in range(1, d + 1):
            lam = spectral_eigenvalue(ctx, nu, j)
            got = make_M(ctx, j).apply(p)
            want = p.scaled(lam)
            report.add(
                f"diagonal[nu={list(nu)},j={j}]", got == want,
                params={**params_base, "nu": list(nu), "j": j,
                        "eigenvalue": str(Fraction(lam))},
                witness={"difference": (got - want).to_records()})
            lam_t = spectral_eigenvalue(tctx, nu, j)
            got_t = make_M_sigma(ctx, j, tau).apply(pt)
            want_t = pt.scaled(lam_t)
            report.add(
                f"diagonal-cyclic[nu={list(nu)},j={j}]", got_t == want_t,
                params={**params_base, "nu": list(nu), "j": j,
                        "eigenvalue": str(Fraction(lam_t))},
                witness={"difference": (got_t - want_t).to_records()})
    report.note("cyclic-image convention: parameters relabeled by tau, "
                "slot i substituted with the coordinate of label tau(i)")
    return report


def check_selfadjoint(ctx: SymmetryContext, n: int) -> VerificationReport:
    """Symmetry of every generator against monomial pairs of degree <= n."""
    report = VerificationReport(suite="self-adjoint")
    d = ctx.dim
    monomials = [MultiPoly._make(d, {m: 1}) for m in indices_up_to(d, n)]
    for i, j in combinations(range(1, d + 2), 2):
        t = make_t(ctx, i, j)
        images = [t.apply(m) for m in monomials]
        bad = None
        for a in range(len(monomials)):
            for b in range(a, len(monomials)):
                lhs = inner_product(ctx, images[a], monomials[b])
                rhs = inner_product(ctx, monomials[a], images[b])
                if lhs != rhs:
                    bad = {"left-monomial": list(monomials[a].sorted_terms()[0][0]),
                           "right-monomial": list(monomials[b].sorted_terms()[0][0]),
                           "lhs": str(lhs), "rhs": str(rhs)}
                    break
            if bad:
                break
        report.add(
            f"symmetric[t({i},{j})]", bad is None,
            params={"d": d, "gamma": encode_rationals(ctx.gamma),
                    "max_degree": n},
            witness=bad)
    return report


def check_orthogonality(ctx: SymmetryContext, n: int) -> VerificationReport:
    """Gram matrix of the basis vs the closed-form norms, degree <= n."""
    report = VerificationReport(suite="orthogonality")
    d = ctx.dim
    index_list = list(indices_up_to(d, n))
    polys = {nu: jacobi_basis(ctx, nu) for nu in index_list}
    params = {"d": d, "gamma": encode_rationals(ctx.gamma), "max_degree": n}
    for a in range(len(index_list)):
        for b in range(a, len(index_list)):
            nu, mu = index_list[a], index_list[b]
            got = inner_product(ctx, polys[nu], polys[mu])
            want = jacobi_norm_sq(ctx, nu) if nu == mu else Fraction(0)
            report.add(
                f"gram[{list(nu)},{list(mu)}]", got == want,
                params=params,
                witness={"nu": list(nu), "mu": list(mu),
                         "inner": str(got), "expected": str(want)})
    return report
