"""Finite-level group rings over 1+pZ_p, measure towers, and the moment
transform into truncated power series.

A level-r element over the coordinate convention gamma = 1+p stores a
coefficient for every class gamma^c, c in Z/p^r.  Towers are projection
compatible sequences of such elements; the moment transform sends a tower to
the series sum_k (-s)^k/k! * sum_c mu(c) log(lift(c))^k, with a per
coefficient error ledger in the p-adic case.

Three coefficient rings are supported: p-adic (PadicNumber), complex (any
python/mpmath complex scalar, compared at a tolerance) and exact rational
(Fraction).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from .cyclotomic import ExactCyclotomic
from .errors import (
    BadSupport,
    DegreeOverflow,
    LevelMismatch,
    PrecisionExhausted,
    SingularMatrix,
)
from .padics import (
    CyclotomicPadic,
    PadicNumber,
    gamma_coordinate,
    int_valuation,
    padic_log_exact,
)

MAX_MOMENT_DEGREE = 24


class Ring:
    """Coefficient ring tag: 'padic' (with prime and digit count), 'complex'
    (with tolerance) or 'rational'."""

    def __init__(self, kind, p, prec=None, tol=1e-9):
        if kind not in ("padic", "complex", "rational"):
            raise ValueError(kind)
        if kind == "padic" and prec is None:
            raise ValueError("p-adic ring needs a digit count")
        self.kind = kind
        self.p = p
        self.prec = prec
        self.tol = tol

    def zero(self):
        if self.kind == "padic":
            return PadicNumber.exact_zero(self.p)
        return Fraction(0) if self.kind == "rational" else mpmath.mpf(0)

    def one(self):
        if self.kind == "padic":
            return PadicNumber.from_int(1, self.p, self.prec)
        return Fraction(1) if self.kind == "rational" else mpmath.mpf(1)

    def coerce(self, x):
        if self.kind == "padic":
            if isinstance(x, PadicNumber):
                return x
            return PadicNumber.from_fraction(Fraction(x), self.p, self.prec)
        if self.kind == "rational":
            return Fraction(x) if not isinstance(x, Fraction) else x
        return x

    def is_zero(self, x):
        if self.kind == "padic":
            return x.is_zero_at_precision
        if self.kind == "rational":
            return x == 0
        return abs(x) <= self.tol

    def eq(self, x, y):
        if self.kind == "padic":
            return x.agrees_with(y)
        if self.kind == "rational":
            return x == y
        return abs(x - y) <= self.tol

    def __repr__(self):
        extra = f", prec={self.prec}" if self.kind == "padic" else ""
        return f"Ring({self.kind}, p={self.p}{extra})"


class LevelElement:
    """Group-ring element at a finite level.

    support 'gamma': dense vector of length p^r indexed by the coordinate c
    (the class of gamma^c in Gamma_r).
    support 'units': mapping on (Z/p^r)^x, used for measures living on Z_p^x
    before the (p-1)-power map into Gamma.
    """

    def __init__(self, ring, level, coeffs, support="gamma"):
        self.ring = ring
        self.level = level
        self.support = support
        p = ring.p
        if support == "gamma":
            if len(coeffs) != p**level:
                raise ValueError(f"need {p**level} coefficients at level {level}")
            self.coeffs = list(coeffs)
        elif support == "units":
            self.coeffs = dict(coeffs)
            for a in self.coeffs:
                if level >= 1 and math.gcd(a, p) != 1:
                    raise ValueError(f"index {a} is not a unit mod {p}^{level}")
        else:
            raise ValueError(support)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring, level, support="gamma"):
        if support == "gamma":
            return cls(ring, level, [ring.zero()] * ring.p**level)
        return cls(ring, level, {a: ring.zero() for a in unit_residues(ring.p, level)},
                   support="units")

    @classmethod
    def one(cls, ring, level, support="gamma"):
        out = cls.zero(ring, level, support)
        if support == "gamma":
            out.coeffs[0] = ring.one()
        else:
            out.coeffs[1 % ring.p**level] = ring.one()
        return out

    def copy(self):
        cs = list(self.coeffs) if self.support == "gamma" else dict(self.coeffs)
        return LevelElement(self.ring, self.level, cs, self.support)

    # -- iteration helpers ------------------------------------------------

    def items(self):
        if self.support == "gamma":
            return enumerate(self.coeffs)
        return self.coeffs.items()

    def get(self, idx):
        if self.support == "gamma":
            return self.coeffs[idx % self.ring.p**self.level]
        return self.coeffs.get(idx % self.ring.p**self.level, self.ring.zero())

    # -- linear structure -------------------------------------------------

    def _check_compatible(self, other):
        if (self.ring.kind, self.level, self.support) != \
                (other.ring.kind, other.level, other.support):
            raise ValueError("incompatible level elements")

    def __add__(self, other):
        if not isinstance(other, LevelElement):
            return NotImplemented
        self._check_compatible(other)
        if self.support == "gamma":
            cs = [a + b for a, b in zip(self.coeffs, other.coeffs)]
        else:
            cs = {a: self.coeffs[a] + other.coeffs[a] for a in self.coeffs}
        return LevelElement(self.ring, self.level, cs, self.support)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, scalar):
        scalar = self.ring.coerce(scalar)
        if self.support == "gamma":
            cs = [c * scalar for c in self.coeffs]
        else:
            cs = {a: c * scalar for a, c in self.coeffs.items()}
        return LevelElement(self.ring, self.level, cs, self.support)

    def __mul__(self, other):
        """Group-ring product (index addition for gamma support, index
        multiplication for unit support); scalars scale."""
        if not isinstance(other, LevelElement):
            return self.scale(other)
        self._check_compatible(other)
        p, r = self.ring.p, self.level
        m = p**r
        out = LevelElement.zero(self.ring, r, self.support)
        if self.support == "gamma":
            for i, a in enumerate(self.coeffs):
                if getattr(a, "is_exact_zero", False) or (not isinstance(a, PadicNumber) and a == 0):
                    continue
                for j, b in enumerate(other.coeffs):
                    out.coeffs[(i + j) % m] = out.coeffs[(i + j) % m] + a * b
        else:
            for i, a in self.coeffs.items():
                for j, b in other.coeffs.items():
                    k = (i * j) % m
                    out.coeffs[k] = out.coeffs[k] + a * b
        return out

    __rmul__ = scale

    def augmentation(self):
        total = self.ring.zero()
        for _, c in self.items():
            total = total + c
        return total

    # -- structure maps -----------------------------------------------------

    def project(self):
        """Sum coefficients over the fibers of level r -> level r-1."""
        if self.level == 0:
            raise ValueError("level 0 has no coarser level")
        p, r = self.ring.p, self.level
        out = LevelElement.zero(self.ring, r - 1, self.support)
        m = p**(r - 1)
        if self.support == "gamma":
            for c, val in enumerate(self.coeffs):
                out.coeffs[c % m] = out.coeffs[c % m] + val
        else:
            for a, val in self.coeffs.items():
                k = a % m
                out.coeffs[k] = out.coeffs[k] + val
        return out

    def pushforward_power(self, k):
        """Pushforward along x -> x^k on the group (gamma support: the
        coordinate map c -> k c mod p^r).  k = p-1 realizes the map into the
        principal units; k = -1 is inversion."""
        if self.support != "gamma":
            raise ValueError("use phi_to_gamma for unit-support elements")
        p, r = self.ring.p, self.level
        m = p**r
        out = LevelElement.zero(self.ring, r, "gamma")
        for c, val in enumerate(self.coeffs):
            cc = (k * c) % m
            out.coeffs[cc] = out.coeffs[cc] + val
        return out

    def phi_to_gamma(self):
        """Pushforward of a unit-support element along x -> x^(p-1), landing
        in gamma coordinates one level down."""
        if self.support != "units":
            raise ValueError("phi_to_gamma needs unit support")
        p, r = self.ring.p, self.level
        if r == 0:
            return LevelElement(self.ring, 0, list(self.coeffs.values()) or [self.ring.zero()])
        out = LevelElement.zero(self.ring, r - 1, "gamma")
        for a, val in self.coeffs.items():
            x = pow(a, p - 1, p**r)
            c = gamma_coordinate(x, p, r - 1, lift_prec=r)
            out.coeffs[c] = out.coeffs[c] + val
        return out

    # -- characters ------------------------------------------------------

    def evaluate_character(self, k, e=1):
        """Evaluate the character with chi(gamma) = zeta_{p^k}^e (gamma
        support) at this element: sum_c mu(c) zeta^{e c}.

        k = 0 is the trivial character (the augmentation).  Values land in
        CyclotomicPadic / mpc / ExactCyclotomic according to the ring.
        """
        if self.support != "gamma":
            raise ValueError("use evaluate_unit_character for unit support")
        if k > self.level:
            raise LevelMismatch(f"character level {k} exceeds element level {self.level}")
        if k == 0:
            return self.augmentation()
        p = self.ring.p
        pk = p**k
        if self.ring.kind == "complex":
            z = mpmath.e ** (2j * mpmath.pi / pk)
            return sum(val * z**((e * c) % pk) for c, val in enumerate(self.coeffs))
        if self.ring.kind == "rational":
            out = ExactCyclotomic.zero(pk)
            for c, val in enumerate(self.coeffs):
                if val:
                    out = out + ExactCyclotomic.root_power(pk, e * c) * val
            return out
        prec = self.ring.prec
        out = CyclotomicPadic.zero(p, k)
        for c, val in enumerate(self.coeffs):
            if val.is_exact_zero:
                continue
            out = out + CyclotomicPadic.root_power(p, k, (e * c) % pk, prec) * val
        return out

    def evaluate_unit_character(self, chi_values):
        """Evaluate a character of (Z/p^r)^x given as a mapping a -> value."""
        if self.support != "units":
            raise ValueError("unit-support element required")
        total = None
        for a, val in self.coeffs.items():
            term = val * chi_values[a]
            total = term if total is None else total + term
        return total if total is not None else self.ring.zero()

    def __repr__(self):
        return (f"LevelElement({self.ring.kind}, level={self.level}, "
                f"support={self.support}, {len(list(self.items()))} coeffs)")


def unit_residues(p, r):
    m = p**r
    if r == 0:
        return [0]
    return [a for a in range(1, m) if a % p != 0]


class MeasureTower:
    """Projection-compatible sequence of level elements (levels 0..n)."""

    def __init__(self, levels):
        if not levels:
            raise ValueError("empty tower")
        self.levels = list(levels)
        self.ring = levels[0].ring

    @property
    def depth(self):
        return len(self.levels) - 1

    def top(self):
        return self.levels[-1]

    def level(self, r):
        return self.levels[r]

    def is_compatible(self):
        """Distribution relation: each level projects onto the previous."""
        for r in range(1, len(self.levels)):
            proj = self.levels[r].project()
            prev = self.levels[r - 1]
            for (i, a), (_, b) in zip(sorted(proj.items()), sorted(prev.items())):
                if not self.ring.eq(a, b):
                    return False
        return True

    def __add__(self, other):
        return MeasureTower([a + b for a, b in zip(self.levels, other.levels)])

    def __sub__(self, other):
        return MeasureTower([a - b for a, b in zip(self.levels, other.levels)])

    def scale(self, scalar):
        return MeasureTower([lv.scale(scalar) for lv in self.levels])

    def pushforward_power(self, k):
        return MeasureTower([lv.pushforward_power(k) for lv in self.levels])

    def evaluate_character(self, k, e=1):
        return self.top().evaluate_character(k, e)

    def augmentation(self):
        return self.top().augmentation()


def point_mass(a: int, depth: int, ring: Ring) -> MeasureTower:
    """Dirac tower supported at the 1-unit a: the indicator of the coordinate
    c(a) = log(a)/log(1+p) at every level."""
    p = ring.p
    if a % p != 1 % p or a == 0:
        raise BadSupport(f"{a} is not a 1-unit mod {p}")
    c = gamma_coordinate(a, p, depth) if depth > 0 else 0
    levels = []
    for r in range(depth + 1):
        lv = LevelElement.zero(ring, r)
        lv.coeffs[c % p**r] = ring.one()
        levels.append(lv)
    return MeasureTower(levels)


# -- moment transform ---------------------------------------------------


@lru_cache(maxsize=None)
def _padic_class_logs(p, n, guard):
    """log of the canonical lift (1+p)^c mod p^(n+1+guard) for all c mod p^n."""
    mod = p**(n + 1 + guard)
    target = n + 1 + guard
    out = []
    for c in range(p**n):
        lift = pow(1 + p, c, mod)
        out.append(padic_log_exact(lift, p, target) if lift != 1
                   else PadicNumber.inexact_zero(p, target))
    return tuple(out)


@lru_cache(maxsize=None)
def _complex_class_logs(p, n, guard):
    mod = p**(n + 1 + guard)
    return tuple(math.log(pow(1 + p, c, mod)) for c in range(p**n))


def factorial_valuation(k, p):
    v, q = 0, p
    while q <= k:
        v += k // q
        q *= p
    return v


class PowerSeries:
    """Truncated series in s with per-coefficient error ledger.

    For the p-adic ring err_vals[k] is the absolute p-adic precision of
    coefficient k (model error and arithmetic precision combined); complex
    and rational series carry None there.
    """

    def __init__(self, ring, coeffs, err_vals=None):
        self.ring = ring
        self.coeffs = list(coeffs)
        if err_vals is None:
            if ring.kind == "padic":
                err_vals = [c.abs_prec for c in self.coeffs]
            else:
                err_vals = [None] * len(self.coeffs)
        self.err_vals = list(err_vals)

    @property
    def degree(self):
        return len(self.coeffs)

    def __add__(self, other):
        if self.ring.kind != other.ring.kind:
            raise ValueError("mixed rings")
        n = min(self.degree, other.degree)
        cs = [self.coeffs[k] + other.coeffs[k] for k in range(n)]
        if self.ring.kind == "padic":
            ev = [min(self.err_vals[k], other.err_vals[k]) for k in range(n)]
        else:
            ev = [None] * n
        return PowerSeries(self.ring, cs, ev)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, scalar):
        scalar = self.ring.coerce(scalar)
        cs = [c * scalar for c in self.coeffs]
        if self.ring.kind == "padic":
            sv = scalar.valuation()
            if sv is None:
                sv = 0
            ev = [e + sv for e in self.err_vals]
        else:
            ev = self.err_vals
        return PowerSeries(self.ring, cs, ev)

    def rescale_variable(self, lam):
        """s -> lam * s: multiply coefficient k by lam^k."""
        lam = self.ring.coerce(lam)
        cs, ev = [], []
        acc = self.ring.one()
        for k, c in enumerate(self.coeffs):
            cs.append(c * acc)
            if self.ring.kind == "padic":
                lv = lam.valuation() or 0
                ev.append(self.err_vals[k] + k * lv)
            else:
                ev.append(None)
            acc = acc * lam
        return PowerSeries(self.ring, cs, ev)

    def agrees_with(self, other):
        """Coefficientwise agreement within the combined error ledgers
        (p-adic) or the ring tolerance (complex/rational)."""
        n = min(self.degree, other.degree)
        for k in range(n):
            d = self.coeffs[k] - other.coeffs[k]
            if self.ring.kind == "padic":
                bound = min(self.err_vals[k], other.err_vals[k], d.abs_prec)
                if d.unit != 0 and d.v < bound:
                    return False
            elif not self.ring.eq(self.coeffs[k], other.coeffs[k]):
                return False
        return True

    def constant(self):
        return self.coeffs[0]

    def __repr__(self):
        return f"PowerSeries({self.ring.kind}, deg={self.degree}, {self.coeffs!r})"


def moment_series(tower: MeasureTower, degree: int, guard: int = 2) -> PowerSeries:
    """Moment transform of a tower: coefficient of s^k is
    (-1)^k/k! sum_c mu_n(c) log(lift c)^k evaluated at the top level n.

    p-adic ledger: the model (Riemann sum) error of coefficient k has
    valuation at least n+k for k >= 1 (exact for k = 0), on top of the
    arithmetic precision; both are recorded.  Complex towers use float logs
    of the canonical integer lifts and are only meaningful while the lifted
    classes do not wrap modulo p^(n+1+guard).
    """
    if degree > MAX_MOMENT_DEGREE:
        raise DegreeOverflow(f"degree {degree} > {MAX_MOMENT_DEGREE}")
    ring = tower.ring
    n = tower.depth
    if n < 1:
        raise ValueError("tower must have level >= 1")
    top = tower.top()
    p = ring.p
    if ring.kind == "rational":
        raise ValueError("moment transform needs a log: use p-adic or complex ring")

    if ring.kind == "complex":
        logs = _complex_class_logs(p, n, guard)
        coeffs = []
        powers = [mpmath.mpf(1)] * len(top.coeffs)
        fact = 1
        for k in range(degree):
            if k > 0:
                fact *= k
                powers = [pw * lg for pw, lg in zip(powers, logs)]
            total = sum(val * pw for val, pw in zip(top.coeffs, powers))
            coeffs.append(total * (-1) ** k / fact)
        return PowerSeries(ring, coeffs)

    logs = _padic_class_logs(p, n, guard)
    coeffs, errs = [], []
    powers = [PadicNumber.from_int(1, p, ring.prec + n + guard) for _ in top.coeffs]
    fact = 1
    for k in range(degree):
        if k > 0:
            fact *= k
            powers = [pw * lg for pw, lg in zip(powers, logs)]
        total = PadicNumber.exact_zero(p)
        for val, pw in zip(top.coeffs, powers):
            if not val.is_exact_zero:
                total = total + val * pw
        coeff = total / PadicNumber.from_int(fact * (-1) ** k, p, ring.prec + n + guard)
        model = math.inf if k == 0 else n + k - factorial_valuation(k, p)
        errs.append(min(coeff.abs_prec, model))
        coeffs.append(coeff)
    return PowerSeries(ring, coeffs, errs)


def exp_series(minus_log, degree, ring: Ring) -> PowerSeries:
    """Series of exp(s * minus_log) = sum (minus_log)^k s^k / k!  (used as
    the closed form a^{-s} with minus_log = -log a)."""
    coeffs = []
    acc = ring.one()
    fact = 1
    for k in range(degree):
        if k > 0:
            fact *= k
            acc = acc * minus_log
        if ring.kind == "padic":
            coeffs.append(acc / PadicNumber.from_int(fact, ring.p, ring.prec + degree))
        else:
            coeffs.append(acc / fact)
    return PowerSeries(ring, coeffs)


def vanishing_order(series: PowerSeries):
    """Smallest k whose coefficient is certified nonzero under the ring's
    zero-test policy; None means indeterminate at this precision."""
    for k, c in enumerate(series.coeffs):
        if series.ring.kind == "padic":
            if c.unit != 0 and c.v < series.err_vals[k]:
                return k
        elif series.ring.kind == "rational":
            if c != 0:
                return k
        else:
            if abs(c) > series.ring.tol:
                return k
    return None


# -- basis change between powers of X_a = delta_a - 1 and s ----------------


@lru_cache(maxsize=None)
def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def _stirling1_signed(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _stirling1_signed(n - 1, k - 1) - (n - 1) * _stirling1_signed(n - 1, k)


class BasisChange:
    """Change of basis between X_a-powers and s-powers at truncation r.

    X_a maps to exp(-s log a) - 1, so X_a^k = sum_i k! S(i,k)/i! (-log a)^i s^i.
    The matrix factors as (rational Stirling part) x diag((-log a)^i); the
    Stirling part and its inverse (signed first kind) are exact, and the
    diagonal cancels identically in the round trip.
    """

    def __init__(self, a, r, ring: Ring):
        if a == 1:
            raise SingularMatrix("a = 1 gives log a = 0")
        self.a = a
        self.r = r
        self.ring = ring
        if ring.kind == "padic":
            if a % ring.p != 1 % ring.p:
                raise BadSupport(f"{a} is not a 1-unit")
            la = padic_log_exact(a, ring.p, ring.prec + r)
            self.minus_log = -la
        elif ring.kind == "complex":
            if a <= 1:
                raise ValueError("complex instantiation needs an integer a > 1")
            self.minus_log = -mpmath.log(a)
        else:
            raise ValueError("basis change is defined over the p-adic or complex ring")
        self.forward_rat = [[Fraction(math.factorial(k) * _stirling2(i, k),
                                      math.factorial(i))
                             for i in range(r)] for k in range(r)]
        self.inverse_rat = [[Fraction(math.factorial(i) * _stirling1_signed(k, i),
                                      math.factorial(k))
                             for k in range(r)] for i in range(r)]

    def _diag(self):
        w = [self.ring.one()]
        for _ in range(1, self.r):
            w.append(w[-1] * self.minus_log)
        return w

    def matrix(self):
        """Materialized matrix sending X_a^k coordinates to s coordinates."""
        w = self._diag()
        return [[self.ring.coerce(self.forward_rat[k][i]) * w[i] for i in range(self.r)]
                for k in range(self.r)]

    def inverse(self):
        w = self._diag()
        return [[self.ring.coerce(self.inverse_rat[i][k]) / w[i] for k in range(self.r)]
                for i in range(self.r)]

    def roundtrip(self):
        """Exact composition matrix x inverse with the diagonal cancelled
        symbolically: rational Stirling inversion, identically the identity."""
        r = self.r
        out = [[Fraction(0)] * r for _ in range(r)]
        for k in range(r):
            for kk in range(r):
                out[k][kk] = sum(self.forward_rat[k][i] * self.inverse_rat[i][kk]
                                 for i in range(r))
        return out

    def to_s_series(self, x_coeffs) -> PowerSeries:
        """Image of sum_k x_k X_a^k as a truncated series in s."""
        w = self._diag()
        cs = []
        for i in range(self.r):
            total = self.ring.zero()
            for k in range(self.r):
                b = self.forward_rat[k][i]
                if b:
                    total = total + self.ring.coerce(x_coeffs[k]) * self.ring.coerce(b)
            cs.append(total * w[i])
        return PowerSeries(self.ring, cs)

    def from_s_series(self, series: PowerSeries):
        w = self._diag()
        out = []
        for k in range(self.r):
            total = self.ring.zero()
            for i in range(self.r):
                b = self.inverse_rat[i][k]
                if b:
                    total = total + (series.coeffs[i] / w[i]) * self.ring.coerce(b)
            out.append(total)
        return out
