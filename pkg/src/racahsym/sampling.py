"""Seed-reproducible rational parameter sampling.

Rationals are drawn with numerators bounded by 32 and denominators bounded
by 16, then rejected against the preconditions of the consuming suite
(parameters above -1 for inner products, never exactly +-1, noninteger
ascending Racah parameters so no shift denominator can vanish on a lattice).
Rejections are recorded so reports can show why a draw was discarded.

Seeding with a string keeps draws deterministic across processes.
"""

from __future__ import annotations

import random
from fractions import Fraction


class ParameterSampler:
    def __init__(self, seed: int | str):
        self.rng = random.Random(str(seed))
        self.rejections: list[str] = []

    def rational(self, num_lo: int = -32, num_hi: int = 32,
                 max_den: int = 16) -> Fraction:
        den = self.rng.randint(1, max_den)
        return Fraction(self.rng.randint(num_lo, num_hi), den)

    def gamma_orthogonal(self, d: int) -> tuple[Fraction, ...]:
        """d+1 parameters in (-1/2, 3], never +-1.

        Staying above -1/2 keeps the derived ascending Racah parameters
        positive, hence the hat-side weights positive; the suites check the
        positivity rather than assume it.
        """
        out: list[Fraction] = []
        while len(out) < d + 1:
            den = self.rng.randint(1, 16)
            num = self.rng.randint(-((den - 1) // 2), 3 * den)
            val = Fraction(num, den)
            if val == 1:
                self.rejections.append(f"gamma draw {val} rejected: unit value")
                continue
            out.append(val)
        return tuple(out)

    def gamma_generic(self, d: int) -> tuple[Fraction, ...]:
        """d+1 parameters in [-2, 4] avoiding +-1; integers allowed.

        Used by the purely operator-algebraic suites, which are valid outside
        the inner-product regime.
        """
        out: list[Fraction] = []
        while len(out) < d + 1:
            den = self.rng.randint(1, 8)
            val = Fraction(self.rng.randint(-2 * den, 4 * den), den)
            if val in (1, -1):
                self.rejections.append(f"gamma draw {val} rejected: unit value")
                continue
            out.append(val)
        return tuple(out)

    def beta_ascending(self, k: int) -> tuple[Fraction, ...]:
        """k+2 noninteger parameters ascending with gaps in (1, 2).

        Nonintegrality makes every shift denominator nonzero at integer
        lattice points, so the difference operators never need limit
        evaluation for these draws.
        """
        den = self.rng.randint(3, 16)
        vals = [Fraction(self.rng.randint(1, den - 1), den)]
        for _ in range(k + 1):
            while True:
                nxt = vals[-1] + 1 + Fraction(self.rng.randint(1, den - 1), den)
                if nxt.denominator > 1:
                    break
                self.rejections.append(
                    f"beta draw {nxt} rejected: integer partial sum")
            vals.append(nxt)
        return tuple(vals)
