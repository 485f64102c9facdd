"""Transition matrices between the two Jacobi bases and their Racah form.

For a fixed total degree n, the normalized cyclic-image basis and the
normalized standard basis are related by an orthogonal matrix.  Each entry
is, up to the global sign (-1)^n, a square root of an exactly rational
quantity: the Racah orthogonality weight at a staircase point derived from
the row index, times the squared value of a Racah polynomial indexed by the
column, over its closed-form squared norm.  Two parametrizations produce the
same matrix: one driven by tail profiles of the row index ("hat" data), one
by head profiles of the column index ("tilde" data, degree-dependent).

Square roots never materialize.  Entries are carried as (sign, square)
pairs with rational squares; matrix orthogonality is checked on the
unnormalized rational Gram data, where the irrational scale factors cancel.

The same hat/tilde data turn the Jucys-Murphy action on a degree-n slice
into difference operators acting on the index lattice; those are applied
through :func:`index_operator_apply` and compared against honest basis
expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .racah import (C_value, operator_constant, racah_norm_sq, racah_value,
                    racah_weight, shift_vectors, w_value)
from .rational import DegeneracyError, Rational, pochhammer, sign
from .report import VerificationReport, encode_rationals
from .simplex import (JacobiIndex, expand_in_basis, head_sum, indices_of_degree,
                      inner_product, jacobi_basis, jacobi_norm_sq,
                      spectral_eigenvalue, tail_sum, tau_basis, tau_context,
                      tau_norm_sq)
from .symalg import SymmetryContext, make_M, make_M_sigma, tau_cycle


# -- index-side data -----------------------------------------------------------

def hat_beta(ctx: SymmetryContext) -> tuple[Rational, ...]:
    """Racah parameters attached to the cyclic-image basis (length d+1)."""
    d = ctx.dim
    return tuple(ctx.gamma_at(1) + ctx.gamma_tail(d + 2 - j) + j
                 for j in range(0, d + 1))


def hat_point(nu: JacobiIndex) -> tuple[int, ...]:
    """Weakly increasing tail profile (|nu^d|, ..., |nu^1|); last entry |nu|."""
    d = len(nu)
    return tuple(tail_sum(nu, d + 1 - m) for m in range(1, d + 1))


def bar_index(mu: JacobiIndex) -> tuple[int, ...]:
    """The reversed trailing components (mu_d, ..., mu_2), length d-1."""
    return tuple(reversed(mu[1:]))


def tilde_beta(ctx: SymmetryContext, n: int) -> tuple[Rational, ...]:
    """Degree-dependent Racah parameters attached to the standard basis."""
    d = ctx.dim
    out = [ctx.gamma_at(1)]
    for j in range(1, d + 1):
        out.append(-ctx.gamma_tail(j + 1) - 2 * n - d + j)
    return tuple(out)


def tilde_point(mu: JacobiIndex) -> tuple[int, ...]:
    """Weakly increasing head profile (|mu_1|, ..., |mu_d|); last entry |mu|."""
    return tuple(head_sum(mu, m) for m in range(1, len(mu) + 1))


@dataclass(frozen=True)
class HatData:
    """Row-side Racah data for a fixed index nu of degree n."""
    beta: tuple[Rational, ...]
    point: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.point) != sorted(self.point):
            raise ValueError("tail profile must be weakly increasing")


@dataclass(frozen=True)
class TildeData:
    """Column-side Racah data for a fixed index mu of degree n."""
    beta: tuple[Rational, ...]
    point: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.point) != sorted(self.point):
            raise ValueError("head profile must be weakly increasing")


def hat_data(ctx: SymmetryContext, nu: JacobiIndex) -> HatData:
    return HatData(hat_beta(ctx), hat_point(nu))


def tilde_data(ctx: SymmetryContext, mu: JacobiIndex, n: int) -> TildeData:
    if sum(mu) != n:
        raise ValueError(f"index {mu!r} does not have total degree {n}")
    return TildeData(tilde_beta(ctx, n), tilde_point(mu))


def g_factor(ctx: SymmetryContext, mu: JacobiIndex) -> Fraction:
    """Gauge factor (1+gamma_1)_{mu_1} / (|gamma|+2|mu|+d-mu_1)_{mu_1}."""
    m1 = mu[0]
    den = pochhammer(ctx.gamma_total() + 2 * sum(mu) + ctx.dim - m1, m1)
    if den == 0:
        raise DegeneracyError(
            f"vanishing factor (|gamma|+2|mu|+d-mu_1)_{m1}")
    return Fraction(pochhammer(ctx.gamma_at(1) + 1, m1), 1) / den


# -- exact square-root bookkeeping ----------------------------------------------

@dataclass(frozen=True)
class SignedSquare:
    """A real number r with rational r^2, stored as (sign, r^2)."""

    sign: int
    square: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "square", Fraction(self.square))
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"bad sign {self.sign!r}")
        if self.square < 0:
            raise ValueError("square must be nonnegative")
        if (self.sign == 0) != (self.square == 0):
            raise ValueError("sign is zero exactly when the square is zero")

    @classmethod
    def from_ratio(cls, num: Rational, den_sq: Rational) -> "SignedSquare":
        """The number num / sqrt(den_sq) with den_sq > 0 rational."""
        if den_sq <= 0:
            raise ValueError("denominator square must be positive")
        return cls(sign(num), Fraction(num) ** 2 / Fraction(den_sq))

    def to_dict(self) -> dict:
        return {"sign": self.sign, "square": str(self.square)}


def _sqrt_weight_entry(n: int, weight: Rational, value: Rational,
                       norm_sq: Rational) -> SignedSquare:
    """The entry (-1)^n sqrt(weight) * value / sqrt(norm_sq), exactly.

    Principal roots are taken; when weight and norm_sq are both negative
    their imaginary units cancel, so only opposite signs are rejected.
    """
    if norm_sq == 0:
        raise DegeneracyError("vanishing Racah norm")
    if value == 0 or weight == 0:
        return SignedSquare(0, Fraction(0))
    if (weight > 0) != (norm_sq > 0):
        raise DegeneracyError(
            "imaginary entry: weight and squared norm have opposite signs")
    square = Fraction(weight) * Fraction(value) ** 2 / Fraction(norm_sq)
    return SignedSquare((-1) ** n * sign(value), square)


# -- the three routes to the transition matrix -----------------------------------

def transition_direct(ctx: SymmetryContext, n: int) -> dict:
    """Normalized Gram entries <image nu, standard mu> as (sign, square)."""
    entries: dict[tuple[JacobiIndex, JacobiIndex], SignedSquare] = {}
    for nu in indices_of_degree(ctx.dim, n):
        pnu = tau_basis(ctx, nu)
        nnu = tau_norm_sq(ctx, nu)
        for mu in indices_of_degree(ctx.dim, n):
            ip = inner_product(ctx, pnu, jacobi_basis(ctx, mu))
            entries[(nu, mu)] = SignedSquare.from_ratio(
                ip, nnu * jacobi_norm_sq(ctx, mu))
    return entries


def transition_via_hat(ctx: SymmetryContext, nu: JacobiIndex,
                       mu: JacobiIndex) -> SignedSquare:
    """Row-driven Racah form of the entry (rank d-1, lattice size |nu|)."""
    n = sum(nu)
    if sum(mu) != n:
        return SignedSquare(0, Fraction(0))
    d = ctx.dim
    data = hat_data(ctx, nu)
    idx = bar_index(mu)
    return _sqrt_weight_entry(
        n,
        racah_weight(d - 1, data.point, data.beta),
        racah_value(d - 1, idx, data.point, data.beta),
        racah_norm_sq(d - 1, idx, n, data.beta))


def transition_via_tilde(ctx: SymmetryContext, nu: JacobiIndex,
                         mu: JacobiIndex) -> SignedSquare:
    """Column-driven Racah form of the same entry (degree-dependent data)."""
    n = sum(nu)
    if sum(mu) != n:
        return SignedSquare(0, Fraction(0))
    d = ctx.dim
    data = tilde_data(ctx, mu, n)
    idx = tuple(nu[: d - 1])
    return _sqrt_weight_entry(
        n,
        racah_weight(d - 1, data.point, data.beta),
        racah_value(d - 1, idx, data.point, data.beta),
        racah_norm_sq(d - 1, idx, n, data.beta))


def norm_product(ctx: SymmetryContext, nu: JacobiIndex) -> Fraction:
    """The product ||image basis nu||^2 * weight(tail profile of nu)."""
    return Fraction(tau_norm_sq(ctx, nu)) * Fraction(
        racah_weight(ctx.dim - 1, hat_point(nu), hat_beta(ctx)))


def norm_product_expected(ctx: SymmetryContext, n: int) -> Fraction:
    """Degree-n value of the norm-weight product: (|gamma|+d)/(|gamma|+d+2n).

    The product is independent of the index within a degree slice, which is
    what the transition formulas require; its value differs from 1.
    """
    base = ctx.gamma_total() + ctx.dim
    return Fraction(base, 1) / (base + 2 * n)


# -- index-side difference operators ---------------------------------------------

def index_operator_apply(ctx: SymmetryContext, which: str, j: int,
                         coeffs: dict[JacobiIndex, Rational],
                         n: int) -> dict[JacobiIndex, Rational]:
    """Push a coefficient family through the index-side difference operator.

    ``which`` selects the realization: "hat" applies the operator of order
    d+1-j at the tail profile of each index, with the paired shifts that
    raise one tail sum; "tilde" applies the operator of order j-1 at the head
    profile, raising one head sum.  Both shift realizations preserve total
    degree.  Coefficients attached to shifts that would leave the nonnegative
    index lattice must vanish; a nonzero one raises ArithmeticError.
    """
    d = ctx.dim
    if not 2 <= j <= d:
        raise ValueError(f"operator label {j} out of range 2..{d}")
    if which == "hat":
        order = d + 1 - j
        beta = hat_beta(ctx)
        point_of = hat_point
        moves = [(d - l, d - l - 1) for l in range(1, order + 1)]
    elif which == "tilde":
        order = j - 1
        beta = tilde_beta(ctx, n)
        point_of = tilde_point
        moves = [(l - 1, l) for l in range(1, order + 1)]
    else:
        raise ValueError(f"unknown realization {which!r}")

    out: dict[JacobiIndex, Rational] = {}

    def accumulate(target: JacobiIndex, value: Rational) -> None:
        acc = out.get(target, 0) + value
        if acc != 0:
            out[target] = acc
        else:
            out.pop(target, None)

    for source, c in coeffs.items():
        if sum(source) != n or c == 0:
            continue
        z = point_of(source)
        for s in shift_vectors(order):
            cv = C_value(order, s, z, beta)
            tgt = list(source)
            for (up, down), step in zip(moves, s):
                tgt[up] += step
                tgt[down] -= step
            if min(tgt) < 0:
                if cv != 0:
                    raise ArithmeticError(
                        f"nonzero coefficient {cv} at out-of-lattice shift "
                        f"{s} from {source}")
                continue
            if cv != 0:
                accumulate(tuple(tgt), cv * c)
        accumulate(source, -operator_constant(order, z, beta) * c)
    return out


# -- verification suites -----------------------------------------------------------

def _diff_witness(got: dict, want: dict) -> dict:
    keys = sorted(set(got) | set(want))
    rows = []
    for key in keys:
        a, b = got.get(key, 0), want.get(key, 0)
        if a != b:
            rows.append({"index": list(key), "got": str(Fraction(a)),
                         "want": str(Fraction(b))})
    return {"mismatches": rows}


def check_transition(ctx: SymmetryContext, n: int) -> VerificationReport:
    """Direct Gram entries vs both Racah forms; orthogonality; norm product."""
    report = VerificationReport(suite="transition")
    d = ctx.dim
    if d < 2:
        raise ValueError("transition data needs dimension >= 2")
    params = {"d": d, "n": n, "gamma": encode_rationals(ctx.gamma)}
    rows = list(indices_of_degree(d, n))
    direct = transition_direct(ctx, n)

    for nu in rows:
        bad = None
        for mu in rows:
            want = direct[(nu, mu)]
            try:
                got_h = transition_via_hat(ctx, nu, mu)
                got_t = transition_via_tilde(ctx, nu, mu)
            except DegeneracyError as exc:
                bad = {"mu": list(mu), "degeneracy": str(exc)}
                break
            if got_h != want or got_t != want:
                bad = {"mu": list(mu), "direct": want.to_dict(),
                       "row-form": got_h.to_dict(), "column-form": got_t.to_dict()}
                break
        report.add(f"entry-formulas[nu={list(nu)}]", bad is None,
                   params=params, witness=bad)

    # orthogonality on the rational Gram data (irrational scales cancel)
    gram = {(nu, mu): inner_product(ctx, tau_basis(ctx, nu), jacobi_basis(ctx, mu))
            for nu in rows for mu in rows}
    bad = None
    for a, b in combinations_with_self(rows):
        got = sum(gram[(a, mu)] * gram[(b, mu)] / jacobi_norm_sq(ctx, mu)
                  for mu in rows)
        want = tau_norm_sq(ctx, a) if a == b else 0
        if got != want:
            bad = {"rows": [list(a), list(b)], "sum": str(Fraction(got)),
                   "expected": str(Fraction(want))}
            break
    report.add("rows-orthogonal", bad is None, params=params, witness=bad)
    bad = None
    for a, b in combinations_with_self(rows):
        got = sum(gram[(nu, a)] * gram[(nu, b)] / tau_norm_sq(ctx, nu)
                  for nu in rows)
        want = jacobi_norm_sq(ctx, a) if a == b else 0
        if got != want:
            bad = {"columns": [list(a), list(b)], "sum": str(Fraction(got)),
                   "expected": str(Fraction(want))}
            break
    report.add("columns-orthogonal", bad is None, params=params, witness=bad)

    bad = None
    for nu in rows:
        got = sum(direct[(nu, mu)].square for mu in rows)
        if got != 1:
            bad = {"nu": list(nu), "sum-of-squares": str(Fraction(got))}
            break
    report.add("row-squares-sum-to-one", bad is None, params=params, witness=bad)

    # the norm-weight product is constant on the degree slice; its value is
    # (|gamma|+d)/(|gamma|+d+2n), not 1
    expected = norm_product_expected(ctx, n)
    bad = None
    for nu in rows:
        got = norm_product(ctx, nu)
        if got != expected:
            bad = {"nu": list(nu), "product": str(got), "expected": str(expected)}
            break
    report.add("norm-weight-product", bad is None,
               params={**params, "expected": str(expected)}, witness=bad)
    report.note("entry signs use principal roots for weights and norms with "
                "the global parity sign; any residual discrepancy would fail "
                "the entry-formulas cases rather than being absorbed")
    return report


def combinations_with_self(items):
    for a in range(len(items)):
        for b in range(a, len(items)):
            yield items[a], items[b]


def check_basis_action(ctx: SymmetryContext, n: int) -> VerificationReport:
    """Full degree-n slice action of both Jucys-Murphy families on both bases."""
    report = VerificationReport(suite="basis-action")
    d = ctx.dim
    if d < 2:
        raise ValueError("basis-action checks need dimension >= 2")
    params = {"d": d, "n": n, "gamma": encode_rationals(ctx.gamma)}
    tau = tau_cycle(d)
    tctx = tau_context(ctx)
    tbeta = tilde_beta(ctx, n)
    hbeta = hat_beta(ctx)
    slice_indices = list(indices_of_degree(d, n))
    full = -n * (n + ctx.gamma_total() + d)

    for mu in slice_indices:
        p = jacobi_basis(ctx, mu)
        pt = tau_basis(ctx, mu)

        got = make_M(ctx, 1).apply(p)
        got_tau = make_M_sigma(ctx, 1, tau).apply(p)
        want = p.scaled(full)
        report.add(f"full-sum-standard[{list(mu)}]",
                   got == want and got_tau == want,
                   params={**params, "eigenvalue": str(Fraction(full))},
                   witness={"difference": (got - want).to_records(),
                            "difference-cyclic": (got_tau - want).to_records()})

        got = make_M(ctx, 1).apply(pt)
        got_tau = make_M_sigma(ctx, 1, tau).apply(pt)
        want = pt.scaled(full)
        report.add(f"full-sum-image[{list(mu)}]",
                   got == want and got_tau == want,
                   params={**params, "eigenvalue": str(Fraction(full))},
                   witness={"difference": (got - want).to_records(),
                            "difference-cyclic": (got_tau - want).to_records()})

        tp = tilde_point(mu)
        hp = hat_point(mu)
        for j in range(2, d + 1):
            # standard basis is diagonal for the plain sums
            lam = n * (n + tbeta[j - 1]) - w_value(tp, tbeta, j - 1)
            got = make_M(ctx, j).apply(p)
            want = p.scaled(lam)
            ok = got == want
            ok_spectral = lam == spectral_eigenvalue(ctx, mu, j)
            report.add(f"standard-diagonal[{list(mu)},j={j}]", ok and ok_spectral,
                       params={**params, "j": j, "eigenvalue": str(Fraction(lam))},
                       witness={"difference": (got - want).to_records(),
                                "profile-eigenvalue": str(Fraction(lam)),
                                "spectral-eigenvalue":
                                    str(Fraction(spectral_eigenvalue(ctx, mu, j)))})

            # image basis is diagonal for the relabeled sums
            lam = -w_value(hp, hbeta, d + 1 - j)
            got = make_M_sigma(ctx, j, tau).apply(pt)
            want = pt.scaled(lam)
            ok = got == want
            ok_spectral = lam == spectral_eigenvalue(tctx, mu, j)
            report.add(f"image-diagonal[{list(mu)},j={j}]", ok and ok_spectral,
                       params={**params, "j": j, "eigenvalue": str(Fraction(lam))},
                       witness={"difference": (got - want).to_records(),
                                "profile-eigenvalue": str(Fraction(lam)),
                                "spectral-eigenvalue":
                                    str(Fraction(spectral_eigenvalue(tctx, mu, j)))})

            # plain sums act on the image basis as the hat-side operator
            got_c = expand_in_basis(ctx, make_M(ctx, j).apply(pt), n, use_tau=True)
            want_c = index_operator_apply(ctx, "hat", j, {mu: 1}, n)
            report.add(f"image-offdiagonal[{list(mu)},j={j}]", got_c == want_c,
                       params={**params, "j": j},
                       witness=_diff_witness(got_c, want_c))

            # relabeled sums act on the standard basis as the gauge-conjugated
            # tilde-side operator plus a scalar
            got_c = expand_in_basis(ctx, make_M_sigma(ctx, j, tau).apply(p), n)
            raw = index_operator_apply(ctx, "tilde", j, {mu: 1}, n)
            gmu = g_factor(ctx, mu)
            want_c = {}
            for target, value in raw.items():
                scaledv = value * g_factor(ctx, target) / gmu
                if scaledv != 0:
                    want_c[target] = scaledv
            scalar = n * (n + tbeta[j] - tbeta[0] - 1)
            acc = want_c.get(mu, 0) + scalar
            if acc != 0:
                want_c[mu] = acc
            else:
                want_c.pop(mu, None)
            report.add(f"standard-offdiagonal[{list(mu)},j={j}]", got_c == want_c,
                       params={**params, "j": j},
                       witness=_diff_witness(got_c, want_c))
    report.note("head-profile shifts raise one head sum (increment an entry, "
                "decrement its right neighbor); tail-profile shifts raise one "
                "tail sum (increment an entry, decrement its left neighbor)")
    return report


def check_duality(ctx: SymmetryContext, n: int) -> VerificationReport:
    """Symmetry of both commuting families across the two bases.

    For every generator of either family, the unnormalized pairing of its
    action against the other basis is symmetric; with the diagonal actions
    this is exactly the bispectral pair of difference equations for the
    transition coefficients.
    """
    report = VerificationReport(suite="duality")
    d = ctx.dim
    params = {"d": d, "n": n, "gamma": encode_rationals(ctx.gamma)}
    tau = tau_cycle(d)
    rows = list(indices_of_degree(d, n))
    tpolys = {nu: tau_basis(ctx, nu) for nu in rows}
    spolys = {mu: jacobi_basis(ctx, mu) for mu in rows}
    for label, ops in (("plain", [make_M(ctx, j) for j in range(1, d + 1)]),
                       ("cyclic", [make_M_sigma(ctx, j, tau)
                                   for j in range(1, d + 1)])):
        for j, op in enumerate(ops, start=1):
            bad = None
            applied_rows = {nu: op.apply(tpolys[nu]) for nu in rows}
            applied_cols = {mu: op.apply(spolys[mu]) for mu in rows}
            for nu in rows:
                for mu in rows:
                    lhs = inner_product(ctx, applied_rows[nu], spolys[mu])
                    rhs = inner_product(ctx, tpolys[nu], applied_cols[mu])
                    if lhs != rhs:
                        bad = {"nu": list(nu), "mu": list(mu),
                               "lhs": str(lhs), "rhs": str(rhs)}
                        break
                if bad:
                    break
            report.add(f"symmetric[{label},j={j}]", bad is None,
                       params=params, witness=bad)
    return report
