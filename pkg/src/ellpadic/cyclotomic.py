"""Exact arithmetic in Q(zeta_m) with Fraction coefficients.

Elements live in the power basis 1, zeta, ..., zeta^(deg-1) modulo the m-th
cyclotomic polynomial.  Only desk-scale m is intended (the reduction is dense
polynomial division).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficient tuple of Phi_m, constant term first."""
    if m == 1:
        return (-1, 1)
    # (x^m - 1) / prod_{d | m, d < m} Phi_d, computed by exact division
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divide_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    if any(num[: len(den) - 1][len(out):]):
        raise ArithmeticError("nonzero remainder")
    return out


class ExactCyclotomic:
    """Element of Q(zeta_m) in the power basis mod Phi_m."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs):
        deg = len(cyclotomic_polynomial(m)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod_phi(m, cs)
        self.m = m
        self.coeffs = cs + [Fraction(0)] * (deg - len(cs))

    @classmethod
    def zero(cls, m):
        return cls(m, [])

    @classmethod
    def from_rational(cls, m, x):
        return cls(m, [Fraction(x)])

    @classmethod
    def root_power(cls, m, e):
        """zeta_m^e."""
        e %= m
        vec = [Fraction(0)] * (e + 1)
        vec[e] = Fraction(1)
        return cls(m, vec)

    def __add__(self, other):
        other = self._coerce(other)
        return ExactCyclotomic(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExactCyclotomic(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactCyclotomic(self.m, [a * other for a in self.coeffs])
        other = self._coerce(other)
        m = self.m
        # zeta^m = 1, so convolve exponents mod m, then reduce mod Phi_m
        vec = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                vec[(i + j) % m] += a * b
        return ExactCyclotomic(m, vec)

    __rmul__ = __mul__

    def galois(self, t):
        """zeta -> zeta^t for t coprime to m."""
        if math.gcd(t, self.m) != 1:
            raise ValueError("Galois exponent must be coprime to m")
        vec = [Fraction(0)] * self.m
        for e, c in enumerate(self.coeffs):
            if c != 0:
                vec[(e * t) % self.m] += c
        return ExactCyclotomic(self.m, vec)

    def conjugate(self):
        return self.galois(-1 % self.m) if self.m > 1 else self

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, tuple(self.coeffs)))

    def _coerce(self, other):
        if isinstance(other, ExactCyclotomic):
            if other.m != self.m:
                raise ValueError("mixed cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactCyclotomic.from_rational(self.m, other)
        raise TypeError(f"cannot coerce {type(other)}")

    def complex_value(self, ctx=None):
        """Numerical image under zeta_m -> exp(2 pi i / m)."""
        import mpmath

        ctx = ctx or mpmath.mp
        z = ctx.e ** (2j * ctx.pi / self.m)
        return sum((ctx.mpf(c.numerator) / c.denominator) * z**e
                   for e, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = [f"({c})*z^{e}" for e, c in enumerate(self.coeffs) if c != 0]
        return f"Cyclo({self.m}; {' + '.join(terms) if terms else '0'})"


def _reduce_mod_phi(m, coeffs):
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    cs = list(coeffs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if c == 0:
            continue
        # phi is monic: subtract c * x^(i-deg) * phi
        for j, pj in enumerate(phi):
            cs[i - deg + j] -= c * pj
    return cs[:deg]
