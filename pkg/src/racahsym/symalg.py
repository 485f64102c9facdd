"""Symmetry operators on the simplex and their structural identities.

The generators t_{i,j} (i != j in 1..d+1) are second-order differential
operators acting on polynomials in x1..xd, parametrized by a vector gamma of
length d+1.  Nested partial sums of generators (Jucys-Murphy sums M_j) give
commuting families; relabeling generator indices by a permutation transports
the whole structure.

All identities checked here are exact equalities of Weyl normal forms, not
sampled agreement: a passing case is an operator identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .multipoly import MultiPoly, one_minus_sum
from .rational import Rational
from .report import VerificationReport, encode_rationals
from .weyl import WeylOp, anticommutator, commutator


@dataclass(frozen=True)
class SymmetryContext:
    """Dimension d and the parameter vector (gamma_1..gamma_{d+1})."""

    dim: int
    gamma: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        object.__setattr__(self, "gamma", tuple(self.gamma))
        if len(self.gamma) != self.dim + 1:
            raise ValueError(
                f"gamma must have {self.dim + 1} entries, got {len(self.gamma)}")

    def gamma_at(self, j: int) -> Rational:
        """gamma_j, 1-based, j in 1..d+1."""
        if not 1 <= j <= self.dim + 1:
            raise IndexError(f"gamma index {j} out of range 1..{self.dim + 1}")
        return self.gamma[j - 1]

    def gamma_total(self) -> Rational:
        return sum(self.gamma)

    def gamma_tail(self, j: int) -> Rational:
        """Sum gamma_j + gamma_{j+1} + ... + gamma_{d+1} (empty sum is 0)."""
        return sum(self.gamma[j - 1:], 0)

    def requires_orthogonality_regime(self) -> None:
        if any(g <= -1 for g in self.gamma):
            raise ValueError("inner-product regime needs every gamma entry > -1")


def gamma_to_b(gamma: Sequence[Rational]) -> tuple[Fraction, ...]:
    """Map each parameter g to the potential coefficient 1/4 - g^2."""
    return tuple(Fraction(1, 4) - Fraction(g) * Fraction(g) for g in gamma)


# -- permutations of the d+1 simplex labels ---------------------------------

def identity_perm(d: int) -> tuple[int, ...]:
    return tuple(range(1, d + 2))


def tau_cycle(d: int) -> tuple[int, ...]:
    """The cyclic relabeling 1 -> 2 -> ... -> d+1 -> 1 (images by position)."""
    return tuple(range(2, d + 2)) + (1,)


def tau_cycle_inverse(d: int) -> tuple[int, ...]:
    return (d + 1,) + tuple(range(1, d + 1))


def _check_perm(sigma: Sequence[int], d: int) -> tuple[int, ...]:
    sig = tuple(sigma)
    if sorted(sig) != list(range(1, d + 2)):
        raise ValueError(f"not a permutation of 1..{d + 1}: {sig}")
    return sig


# -- generators and Jucys-Murphy sums ---------------------------------------

@lru_cache(maxsize=None)
def make_t(ctx: SymmetryContext, i: int, j: int) -> WeylOp:
    """The generator t_{i,j} = t_{j,i} as a normal-form operator.

    For i, j <= d:  x_i x_j (D_i - D_j)^2 + [(g_i+1) x_j - (g_j+1) x_i] (D_i - D_j).
    For j = d+1:    x_i (1-|x|) D_i^2 + [(g_i+1)(1-|x|) - (g_{d+1}+1) x_i] D_i.
    """
    d = ctx.dim
    if i == j:
        raise ValueError("generator indices must differ")
    if not (1 <= i <= d + 1 and 1 <= j <= d + 1):
        raise IndexError(f"generator indices ({i},{j}) out of range 1..{d + 1}")
    if i > j:
        i, j = j, i
    gi, gj = ctx.gamma_at(i), ctx.gamma_at(j)
    if j <= d:
        xi, xj = MultiPoly.variable(d, i), MultiPoly.variable(d, j)
        diff = WeylOp.partial(d, i) - WeylOp.partial(d, j)
        quad = WeylOp.from_poly(xi * xj) * (diff * diff)
        lin = WeylOp.from_poly(xj.scaled(gi + 1) - xi.scaled(gj + 1)) * diff
        return quad + lin
    xi = MultiPoly.variable(d, i)
    rem = one_minus_sum(d)
    di = WeylOp.partial(d, i)
    quad = WeylOp.from_poly(xi * rem) * (di * di)
    lin = WeylOp.from_poly(rem.scaled(gi + 1) - xi.scaled(ctx.gamma_at(d + 1) + 1)) * di
    return quad + lin


@lru_cache(maxsize=None)
def make_M_sigma(ctx: SymmetryContext, j: int, sigma: tuple[int, ...]) -> WeylOp:
    """Relabeled Jucys-Murphy sum sum_{j <= k < l <= d+1} t_{sigma(k), sigma(l)}.

    By convention the sums with j = d+1 or j = d+2 are the zero operator.
    """
    d = ctx.dim
    sig = _check_perm(sigma, d)
    if j in (d + 1, d + 2):
        return WeylOp.zero(d)
    if not 1 <= j <= d:
        raise IndexError(f"index {j} out of range 1..{d + 2}")
    out = WeylOp.zero(d)
    for k, l in combinations(range(j, d + 2), 2):
        out = out + make_t(ctx, sig[k - 1], sig[l - 1])
    return out


def make_M(ctx: SymmetryContext, j: int) -> WeylOp:
    """The Jucys-Murphy sum M_j = sum_{j <= k < l <= d+1} t_{k,l}."""
    return make_M_sigma(ctx, j, identity_perm(ctx.dim))


def make_M_tau(ctx: SymmetryContext, j: int) -> WeylOp:
    return make_M_sigma(ctx, j, tau_cycle(ctx.dim))


def make_M_tau_inv(ctx: SymmetryContext, j: int) -> WeylOp:
    return make_M_sigma(ctx, j, tau_cycle_inverse(ctx.dim))


# -- structural identity checks ----------------------------------------------

def _operator_witness(lhs: WeylOp, rhs: WeylOp) -> dict:
    return {"lhs": lhs.to_records(), "rhs": rhs.to_records(),
            "difference": (lhs - rhs).to_records()}


def check_commutation(ctx: SymmetryContext) -> VerificationReport:
    """Commutation relations among the generators.

    Generators on disjoint index pairs commute; each generator also commutes
    with the sum of the two generators joining its pair to any third index.
    """
    report = VerificationReport(suite="commutation")
    d = ctx.dim
    params = {"d": d, "gamma": encode_rationals(ctx.gamma)}
    if d >= 3:
        for quad in combinations(range(1, d + 2), 4):
            for (i, j), (k, l) in _pair_splits(quad):
                c = commutator(make_t(ctx, i, j), make_t(ctx, k, l))
                report.add(
                    f"disjoint-pairs[({i},{j}),({k},{l})]", c.is_zero,
                    params=params,
                    witness={"commutator": c.to_records()})
    for tri in combinations(range(1, d + 2), 3):
        for i, j, k in _distinguished_pairs(tri):
            c = commutator(make_t(ctx, i, j),
                           make_t(ctx, i, k) + make_t(ctx, j, k))
            report.add(
                f"pair-plus-third[({i},{j});{k}]", c.is_zero,
                params=params,
                witness={"commutator": c.to_records()})
    return report


def _pair_splits(quad: tuple[int, int, int, int]):
    """Unordered splits of four distinct labels into two unordered pairs."""
    a, b, c, d = quad
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def _distinguished_pairs(tri: tuple[int, int, int]):
    """For labels {a,b,c}: each choice of the distinguished pair, third last."""
    a, b, c = tri
    return [(a, b, c), (a, c, b), (b, c, a)]


def fourth_order_sides(ctx: SymmetryContext, i: int, j: int, k: int,
                       l: int) -> tuple[WeylOp, WeylOp]:
    """Both sides of the reduction expressing t_{i,j} via the other five
    generators on {i,j,k,l}; requires gamma_k, gamma_l != +-1."""
    if len({i, j, k, l}) != 4:
        raise ValueError("indices must be distinct")
    gi, gj = ctx.gamma_at(i), ctx.gamma_at(j)
    gk, gl = ctx.gamma_at(k), ctx.gamma_at(l)
    if gk in (1, -1) or gl in (1, -1):
        raise ValueError("reduction needs the last two parameters != +-1")
    tik, til = make_t(ctx, i, k), make_t(ctx, i, l)
    tjk, tjl = make_t(ctx, j, k), make_t(ctx, j, l)
    tkl = make_t(ctx, k, l)
    lhs = make_t(ctx, i, j).scaled((1 - gk * gk) * (1 - gl * gl))
    rhs = anticommutator(commutator(tjk, tkl), commutator(tik, tkl))
    rhs = rhs - anticommutator(tkl, tik * tjl).scaled(2)
    rhs = rhs - anticommutator(tkl, commutator(tik, commutator(tjk, tkl)))
    rhs = rhs + commutator(tik, commutator(tkl, tjl)).scaled((1 + gk) * (1 + gl))
    rhs = rhs + (anticommutator(tik, tkl) - tik.scaled(2 * gk)
                 - tkl.scaled((1 + gi) * (1 + gk))).scaled((1 + gj) * (1 + gl))
    rhs = rhs + anticommutator(tik, tjk).scaled(1 - gl * gl)
    rhs = rhs + anticommutator(til, tjl).scaled(1 - gk * gk)
    rhs = rhs + anticommutator(tjl, tkl).scaled((1 + gi) * (1 + gk))
    rhs = rhs - (tjk * til).scaled(4)
    rhs = rhs + (tjl * tik).scaled(2 * (-1 + gk + gl + gk * gl))
    rhs = rhs + tjk.scaled((1 + gi) * (1 + gl) * (1 - gk + gl + gk * gl))
    rhs = rhs - tjl.scaled(2 * (1 + gi) * (1 + gk) * gl)
    rhs = rhs + til.scaled((1 + gj) * (1 + gk) * (1 + gk - gl + gk * gl))
    return lhs, rhs


def check_fourth_order(ctx: SymmetryContext, i: int, j: int, k: int,
                       l: int) -> VerificationReport:
    """Verify the fourth-order generator reduction for one index assignment."""
    report = VerificationReport(suite="generator-reduction")
    lhs, rhs = fourth_order_sides(ctx, i, j, k, l)
    report.add(
        f"reduction[{i},{j};{k},{l}]", lhs == rhs,
        params={"d": ctx.dim, "gamma": encode_rationals(ctx.gamma),
                "indices": [i, j, k, l]},
        witness=_operator_witness(lhs, rhs))
    report.note("identity checked at the concrete sampled parameters, "
                "not symbolically in gamma")
    return report


def check_gaudin(ctx: SymmetryContext) -> VerificationReport:
    """The Jucys-Murphy sums M_1..M_d commute pairwise, exactly."""
    report = VerificationReport(suite="gaudin")
    params = {"d": ctx.dim, "gamma": encode_rationals(ctx.gamma)}
    for a, b in combinations(range(1, ctx.dim + 1), 2):
        c = commutator(make_M(ctx, a), make_M(ctx, b))
        report.add(f"commute[M{a},M{b}]", c.is_zero, params=params,
                   witness={"commutator": c.to_records()})
    return report


def check_generator_span(ctx: SymmetryContext) -> VerificationReport:
    """Linear relations recovering the distinguished generators from the
    Jucys-Murphy sums of the identity, cyclic and inverse-cyclic labelings."""
    report = VerificationReport(suite="generator-span")
    d = ctx.dim
    params = {"d": d, "gamma": encode_rationals(ctx.gamma)}

    # the full sums agree for every relabeling, so the cyclic families
    # need only indices >= 2 to span
    for name, op in (("cyclic", make_M_tau(ctx, 1)),
                     ("inverse-cyclic", make_M_tau_inv(ctx, 1))):
        report.add(f"full-sum-invariant[{name}]", op == make_M(ctx, 1),
                   params=params, witness=_operator_witness(op, make_M(ctx, 1)))

    for j in range(2, d + 2):
        lhs = make_t(ctx, 1, j)
        rhs = (make_M_tau(ctx, j - 1) - make_M(ctx, j)) \
            - (make_M_tau(ctx, j) - make_M(ctx, j + 1))
        report.add(f"first-row[t(1,{j})]", lhs == rhs, params=params,
                   witness=_operator_witness(lhs, rhs))
    for i in range(1, d + 1):
        lhs = make_t(ctx, i, d + 1)
        rhs = (make_M(ctx, i) - make_M_tau_inv(ctx, i + 1)) \
            - (make_M(ctx, i + 1) - make_M_tau_inv(ctx, i + 2))
        report.add(f"last-column[t({i},{d + 1})]", lhs == rhs, params=params,
                   witness=_operator_witness(lhs, rhs))
    report.note("every distinguished generator is reached from the three "
                "Jucys-Murphy families by these linear relations")
    return report
