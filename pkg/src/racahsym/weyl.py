"""Differential operators with polynomial coefficients (a Weyl-algebra layer).

An operator is a finite sum sum_a c_a(x) D^a, where a is a derivative
multi-index and c_a a :class:`MultiPoly`.  Operators are always held in
normal form (all coefficients to the left of all derivatives, no zero
coefficients), so operator equality is literal equality of normal forms:
two operators compare equal iff they are the same element of the Weyl
algebra, not merely equal on some finite test set.

Composition applies the Leibniz rule term by term::

    D^a (q D^b)  =  sum_{k <= a}  C(a, k) (D^k q) D^{a - k + b}

which keeps results in normal form exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping

from .multipoly import DimensionMismatchError, MultiPoly
from .rational import Rational

DerivIndex = tuple[int, ...]


class WeylOp:
    """A normal-form differential operator with polynomial coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[DerivIndex, MultiPoly] | None = None):
        if dim < 0:
            raise ValueError(f"dimension must be nonnegative, got {dim}")
        clean: dict[DerivIndex, MultiPoly] = {}
        if terms:
            for alpha, coeff in terms.items():
                key = tuple(alpha)
                if len(key) != dim or any(a < 0 for a in key):
                    raise ValueError(f"bad derivative multi-index {key!r}")
                if coeff.dim != dim:
                    raise DimensionMismatchError(
                        f"coefficient dimension {coeff.dim} != operator dimension {dim}")
                if not coeff.is_zero:
                    prev = clean.get(key)
                    acc = coeff if prev is None else prev + coeff
                    if acc.is_zero:
                        clean.pop(key, None)
                    else:
                        clean[key] = acc
        self.dim = dim
        self.terms = clean

    @classmethod
    def _make(cls, dim: int, terms: dict[DerivIndex, MultiPoly]) -> "WeylOp":
        self = object.__new__(cls)
        self.dim = dim
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "WeylOp":
        return cls._make(dim, {})

    @classmethod
    def identity(cls, dim: int) -> "WeylOp":
        return cls._make(dim, {(0,) * dim: MultiPoly.const(dim, 1)})

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "WeylOp":
        """The multiplication operator f |-> p*f."""
        if p.is_zero:
            return cls._make(p.dim, {})
        return cls._make(p.dim, {(0,) * p.dim: p})

    @classmethod
    def partial(cls, dim: int, i: int) -> "WeylOp":
        """The derivative operator d/dx_i (1-based)."""
        if not 1 <= i <= dim:
            raise IndexError(f"variable index {i} out of range 1..{dim}")
        alpha = [0] * dim
        alpha[i - 1] = 1
        return cls._make(dim, {tuple(alpha): MultiPoly.const(dim, 1)})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Highest derivative order; -1 for the zero operator."""
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- linear arithmetic ---------------------------------------------------

    def _combine(self, other: "WeylOp", subtract: bool) -> "WeylOp":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out = dict(self.terms)
        for alpha, coeff in other.terms.items():
            prev = out.get(alpha)
            acc = (prev - coeff if subtract else prev + coeff) if prev is not None \
                else (-coeff if subtract else coeff)
            if acc.is_zero:
                out.pop(alpha, None)
            else:
                out[alpha] = acc
        return WeylOp._make(self.dim, out)

    def __add__(self, other: "WeylOp") -> "WeylOp":
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self._combine(other, subtract=False)

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self._combine(other, subtract=True)

    def __neg__(self) -> "WeylOp":
        return WeylOp._make(self.dim, {a: -c for a, c in self.terms.items()})

    def scaled(self, factor: Rational) -> "WeylOp":
        if factor == 0:
            return WeylOp._make(self.dim, {})
        return WeylOp._make(self.dim, {a: c.scaled(factor) for a, c in self.terms.items()})

    # -- composition ---------------------------------------------------------

    def __mul__(self, other):
        """Operator composition (or scaling by an exact scalar)."""
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        dim = self.dim
        box = _component_max(self.terms)
        out: dict[DerivIndex, dict] = {}
        for beta, q in other.terms.items():
            partials = _partials_box(q, box)
            for alpha, c in self.terms.items():
                for kappa in product(*(range(a + 1) for a in alpha)):
                    dq = partials.get(kappa)
                    if dq is None or dq.is_zero:
                        continue
                    weight = 1
                    for a, k in zip(alpha, kappa):
                        if k:
                            weight *= comb(a, k)
                    new_alpha = tuple(a - k + b for a, k, b in zip(alpha, kappa, beta))
                    bucket = out.setdefault(new_alpha, {})
                    for exps, pc in (c * dq).terms.items():
                        acc = bucket.get(exps, 0) + pc * weight
                        if acc != 0:
                            bucket[exps] = acc
                        else:
                            bucket.pop(exps, None)
        return _from_buckets(dim, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    # -- action on polynomials ------------------------------------------------

    def apply(self, p: MultiPoly) -> MultiPoly:
        """Apply the operator to a polynomial: sum_a c_a * D^a p."""
        if p.dim != self.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {p.dim}")
        out = MultiPoly.zero(self.dim)
        for alpha, coeff in self.terms.items():
            dp = p
            for pos, k in enumerate(alpha):
                for _ in range(k):
                    if dp.is_zero:
                        break
                    dp = dp.partial(pos + 1)
            if not dp.is_zero:
                out = out + coeff * dp
        return out

    # -- serialization and printing ----------------------------------------

    def sorted_terms(self) -> list[tuple[DerivIndex, MultiPoly]]:
        order = sorted(self.terms, key=lambda a: (sum(a), a), reverse=True)
        return [(a, self.terms[a]) for a in order]

    def to_records(self) -> list[dict]:
        return [{"derivative": list(alpha), "coeff": coeff.to_records()}
                for alpha, coeff in self.sorted_terms()]

    @classmethod
    def from_records(cls, dim: int, records: Iterable[Mapping]) -> "WeylOp":
        terms = {tuple(rec["derivative"]): MultiPoly.from_records(dim, rec["coeff"])
                 for rec in records}
        return cls(dim, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for alpha, coeff in self.sorted_terms():
            dpart = "*".join(
                f"D{p + 1}^{k}" if k > 1 else f"D{p + 1}"
                for p, k in enumerate(alpha) if k > 0)
            cpart = str(coeff)
            if " " in cpart or dpart and cpart != "1":
                cpart = f"({cpart})"
            if not dpart:
                chunks.append(cpart)
            elif cpart == "1":
                chunks.append(dpart)
            else:
                chunks.append(f"{cpart}*{dpart}")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"WeylOp(dim={self.dim}, {str(self)})"


def _component_max(terms: Mapping[DerivIndex, MultiPoly]) -> DerivIndex:
    dims = None
    for alpha in terms:
        if dims is None:
            dims = list(alpha)
        else:
            dims = [max(a, b) for a, b in zip(dims, alpha)]
    return tuple(dims) if dims is not None else ()


def _partials_box(q: MultiPoly, box: DerivIndex) -> dict[DerivIndex, MultiPoly]:
    """All partial derivatives D^k q for k componentwise below ``box``."""
    if not box:
        return {}
    cache: dict[DerivIndex, MultiPoly] = {(0,) * len(box): q}
    for kappa in product(*(range(b + 1) for b in box)):
        if kappa in cache:
            continue
        pos = next(p for p, k in enumerate(kappa) if k > 0)
        prev = kappa[:pos] + (kappa[pos] - 1,) + kappa[pos + 1:]
        base = cache[prev]
        cache[kappa] = base.partial(pos + 1) if not base.is_zero else base
    return cache


def _from_buckets(dim: int, buckets: dict[DerivIndex, dict]) -> WeylOp:
    terms = {}
    for alpha, bucket in buckets.items():
        if bucket:
            terms[alpha] = MultiPoly._make(dim, bucket)
    return WeylOp._make(dim, terms)


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    """[a, b] = ab - ba in normal form."""
    return a * b - b * a


def anticommutator(a: WeylOp, b: WeylOp) -> WeylOp:
    """{a, b} = ab + ba in normal form."""
    return a * b + b * a
