"""Truncated formal Dirichlet series and their finite-level measures.

A series is a coefficient table a_1..a_Nmax.  Partial series keep only the
coefficients in one residue class mod p^r; convolution is the Dirichlet
product on the truncation; the level-r measure collects the partial series
over the units of Z/p^r.

Only finite identities are testable on truncations: analytic continuation
and convergence statements are outside what this module verifies.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import SupportViolation
from .measures import LevelElement, Ring, unit_residues


class FormalDirichletSeries:
    """Coefficient table a_1..a_Nmax of sum a_n n^(-z), truncated.

    When prime_to_p is set every coefficient at a multiple of p vanishes
    (enforced on construction).
    """

    def __init__(self, p, coeffs, prime_to_p=False, nmax=None):
        self.p = p
        if isinstance(coeffs, dict):
            items = list(coeffs.items())
            default_nmax = max(coeffs, default=1)
        else:
            lst = list(coeffs)
            items = list(enumerate(lst, start=1))
            default_nmax = max(len(lst), 1)
        self.coeffs = {n: c for n, c in items if c}
        self.nmax = default_nmax if nmax is None else nmax
        self.prime_to_p = prime_to_p
        if prime_to_p:
            bad = [n for n in self.coeffs if n % p == 0]
            if bad:
                raise SupportViolation(f"coefficients at multiples of {p}: {bad[:5]}")

    @classmethod
    def from_table(cls, p, table, nmax=None, prime_to_p=False):
        """table: mapping n -> a_n or list [a_1, a_2, ...]."""
        return cls(p, table, prime_to_p=prime_to_p, nmax=nmax)

    @classmethod
    def point(cls, p, b, nmax=None):
        """The series b^(1-z): single coefficient a_b = b."""
        if math.gcd(b, p) != 1:
            raise SupportViolation(f"{b} is not prime to {p}")
        return cls(p, {b: Fraction(b)}, prime_to_p=True, nmax=nmax)

    def coeff(self, n):
        return self.coeffs.get(n, 0)

    def partial(self, r, a):
        """Keep the coefficients with n = a mod p^r."""
        m = self.p**r
        if not 1 <= a <= m:
            raise ValueError(f"residue {a} outside 1..{m}")
        kept = {n: c for n, c in self.coeffs.items() if n % m == a % m}
        out = FormalDirichletSeries(self.p, kept, prime_to_p=False)
        out.nmax = self.nmax
        out.prime_to_p = self.prime_to_p
        return out

    def convolve(self, other):
        """Dirichlet product truncated at the shared Nmax."""
        if other.p != self.p:
            raise ValueError("mixed primes")
        nmax = min(self.nmax, other.nmax)
        out = {}
        for d, a in self.coeffs.items():
            if d > nmax:
                continue
            for e, b in other.coeffs.items():
                n = d * e
                if n > nmax:
                    continue
                out[n] = out.get(n, 0) + a * b
        res = FormalDirichletSeries(self.p, out,
                                    prime_to_p=self.prime_to_p and other.prime_to_p)
        res.nmax = nmax
        return res

    def value_at_one(self):
        """Truncated value at z = 1: sum a_n / n (exact when coefficients are
        exact)."""
        total = Fraction(0) if all(isinstance(c, (int, Fraction))
                                   for c in self.coeffs.values()) else 0
        for n, c in self.coeffs.items():
            total = total + Fraction(c, n) if isinstance(c, (int, Fraction)) else total + c / n
        return total

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        res = FormalDirichletSeries(self.p, out,
                                    prime_to_p=self.prime_to_p and other.prime_to_p)
        res.nmax = min(self.nmax, other.nmax)
        return res

    def __eq__(self, other):
        if not isinstance(other, FormalDirichletSeries):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        head = sorted(self.coeffs.items())[:6]
        return f"DirichletSeries(p={self.p}, nmax={self.nmax}, {head}...)"


def to_level_element(series: FormalDirichletSeries, r: int, evaluate,
                     ring: Ring) -> LevelElement:
    """Level-r measure of a prime-to-p series: the unit-support element whose
    coefficient at a is evaluate(partial series at a).

    evaluate maps a FormalDirichletSeries to a ring element; the identity map
    (for the formal/symbolic instantiation) and value_at_one are typical.
    """
    p = series.p
    if any(n % p == 0 for n in series.coeffs):
        raise SupportViolation("series has mass at multiples of p")
    coeffs = {}
    for a in unit_residues(p, r):
        coeffs[a] = evaluate(series.partial(r, a))
    return LevelElement(ring, r, coeffs, support="units")
