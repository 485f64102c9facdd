"""Sparse multivariate polynomial arithmetic over exact rationals.

A polynomial in x1..xd maps exponent tuples (length d, one nonnegative int
per variable) to nonzero rational coefficients.  Instances are immutable by
convention: no method mutates ``terms`` after construction, so values can be
shared, cached and compared structurally.  Equality is exact equality of
canonical forms; zero coefficients are never stored.

The canonical term order, used for printing and serialization, is graded
lexicographic with the highest term first.

Variable indices in the public API are 1-based (x1..xd), matching the rest
of the package; exponent tuples are positional (slot p holds the exponent
of x_{p+1}).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import Rational, format_rational, parse_rational

Exponent = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """Operands live in different ambient dimensions."""


def _grlex_key(exps: Exponent) -> tuple[int, Exponent]:
    return (sum(exps), exps)


class MultiPoly:
    """A sparse exact polynomial in a fixed number of variables."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Exponent, Rational] | None = None):
        if dim < 0:
            raise ValueError(f"dimension must be nonnegative, got {dim}")
        clean: dict[Exponent, Rational] = {}
        if terms:
            for exps, coeff in terms.items():
                key = tuple(exps)
                if len(key) != dim or any(e < 0 or not isinstance(e, int) for e in key):
                    raise ValueError(f"bad exponent tuple {key!r} for dimension {dim}")
                if coeff != 0:
                    acc = clean.get(key, 0) + coeff
                    if acc != 0:
                        clean[key] = acc
                    else:
                        clean.pop(key, None)
        self.dim = dim
        self.terms = clean

    @classmethod
    def _make(cls, dim: int, terms: dict[Exponent, Rational]) -> "MultiPoly":
        """Trusted constructor: ``terms`` must already be canonical."""
        self = object.__new__(cls)
        self.dim = dim
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "MultiPoly":
        return cls._make(dim, {})

    @classmethod
    def const(cls, dim: int, value: Rational) -> "MultiPoly":
        if value == 0:
            return cls._make(dim, {})
        return cls._make(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, dim: int, i: int) -> "MultiPoly":
        """The polynomial x_i (1-based)."""
        if not 1 <= i <= dim:
            raise IndexError(f"variable index {i} out of range 1..{dim}")
        exps = [0] * dim
        exps[i - 1] = 1
        return cls._make(dim, {tuple(exps): 1})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self) -> Rational:
        return self.terms.get((0,) * self.dim, 0)

    def sorted_terms(self) -> list[tuple[Exponent, Rational]]:
        """Terms in graded-lex order, highest first."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_grlex_key, reverse=True)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    __hash__ = None  # mutable dict inside; rely on structural equality only

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, 0) + coeff
            if acc != 0:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return MultiPoly._make(self.dim, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, 0) - coeff
            if acc != 0:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return MultiPoly._make(self.dim, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._make(self.dim, {e: -c for e, c in self.terms.items()})

    def scaled(self, factor: Rational) -> "MultiPoly":
        if factor == 0:
            return MultiPoly._make(self.dim, {})
        return MultiPoly._make(self.dim, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            if self.dim != other.dim:
                raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
            a, b = self.terms, other.terms
            if len(a) > len(b):
                a, b = b, a
            out: dict[Exponent, Rational] = {}
            for ea, ca in a.items():
                for eb, cb in b.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    acc = out.get(key, 0) + ca * cb
                    if acc != 0:
                        out[key] = acc
                    else:
                        out.pop(key, None)
            return MultiPoly._make(self.dim, out)
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.dim, 1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and substitution ------------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        """Exact partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.dim:
            raise IndexError(f"variable index {i} out of range 1..{self.dim}")
        p = i - 1
        out: dict[Exponent, Rational] = {}
        for exps, coeff in self.terms.items():
            k = exps[p]
            if k == 0:
                continue
            key = exps[:p] + (k - 1,) + exps[p + 1:]
            acc = out.get(key, 0) + coeff * k
            if acc != 0:
                out[key] = acc
            else:
                out.pop(key, None)
        return MultiPoly._make(self.dim, out)

    def eval_at(self, point: Sequence[Rational]) -> Rational:
        """Exact value at a rational point (length must equal the dimension)."""
        if len(point) != self.dim:
            raise DimensionMismatchError(
                f"point length {len(point)} != dimension {self.dim}")
        # per-variable power cache keeps high-degree evaluation cheap
        powers: list[list[Rational]] = [[1] for _ in range(self.dim)]
        total: Rational = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for p, e in enumerate(exps):
                if e == 0:
                    continue
                cache = powers[p]
                while len(cache) <= e:
                    cache.append(cache[-1] * point[p])
                term *= cache[e]
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace x_i by images[i-1] and expand exactly.

        The images must share a common dimension, which becomes the dimension
        of the result (it may differ from the dimension of ``self``).
        """
        if len(images) != self.dim:
            raise DimensionMismatchError(
                f"need {self.dim} images, got {len(images)}")
        if self.dim == 0:
            return MultiPoly._make(0, dict(self.terms))
        tdim = images[0].dim
        for im in images:
            if im.dim != tdim:
                raise DimensionMismatchError("images have inconsistent dimensions")
        powers: list[list[MultiPoly]] = [[MultiPoly.const(tdim, 1)] for _ in range(self.dim)]
        out = MultiPoly.zero(tdim)
        for exps, coeff in self.terms.items():
            term = MultiPoly.const(tdim, coeff)
            for p, e in enumerate(exps):
                if e == 0:
                    continue
                cache = powers[p]
                while len(cache) <= e:
                    cache.append(cache[-1] * images[p])
                term = term * cache[e]
            out = out + term
        return out

    # -- serialization and printing ----------------------------------------

    def to_records(self) -> list[dict]:
        """Graded-lex (highest first) list of {exponents, coeff} records."""
        return [{"exponents": list(e), "coeff": format_rational(c)}
                for e, c in self.sorted_terms()]

    @classmethod
    def from_records(cls, dim: int, records: Iterable[Mapping]) -> "MultiPoly":
        terms = {tuple(rec["exponents"]): parse_rational(rec["coeff"]) for rec in records}
        return cls(dim, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"x{p + 1}^{e}" if e > 1 else f"x{p + 1}"
                for p, e in enumerate(exps) if e > 0)
            mag = abs(coeff)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if coeff < 0 else "+"
            chunks.append(f"{sign} {body}")
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"MultiPoly(dim={self.dim}, {str(self)})"


def one_minus_sum(dim: int) -> MultiPoly:
    """The affine polynomial 1 - x1 - ... - xd (the last simplex coordinate)."""
    terms: dict[Exponent, Rational] = {(0,) * dim: 1}
    for p in range(dim):
        exps = [0] * dim
        exps[p] = 1
        terms[tuple(exps)] = -1
    return MultiPoly._make(dim, terms)


def compose_projective(coeffs: Sequence[Rational], num: MultiPoly,
                       den: MultiPoly, m: int) -> MultiPoly:
    """Homogenized composition den^m * q(num/den) for a univariate q.

    ``coeffs`` lists q's coefficients by ascending power; deg(q) <= m is
    required so the denominators cancel and the result is a polynomial.
    """
    if len(coeffs) - 1 > m:
        raise ValueError(f"degree {len(coeffs) - 1} exceeds homogenization bound {m}")
    if num.dim != den.dim:
        raise DimensionMismatchError(f"dimension mismatch: {num.dim} vs {den.dim}")
    dim = num.dim
    out = MultiPoly.zero(dim)
    num_pow = MultiPoly.const(dim, 1)
    den_pows = [MultiPoly.const(dim, 1)]
    for _ in range(m):
        den_pows.append(den_pows[-1] * den)
    for k, c in enumerate(coeffs):
        if c != 0:
            out = out + (num_pow * den_pows[m - k]).scaled(c)
        if k + 1 < len(coeffs):
            num_pow = num_pow * num
    return out
