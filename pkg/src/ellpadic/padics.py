"""Exact p-adic arithmetic at explicit finite precision.

Elements of Q_p are stored as p^v * u with the unit u known modulo p^prec,
so the value is known modulo p^(v+prec).  Zero values come in two flavours:
exact zero, and "zero at precision" O(p^N).  No operation ever increases the
claimed precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    Ambiguous,
    NoCandidate,
    NotMultiplicative,
    NotOneUnit,
    PrecisionExhausted,
    SupersingularInput,
)


def int_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNumber:
    """Element of Q_p known to an explicit absolute precision.

    Nonzero: value p^v * unit, unit coprime to p, 0 < unit < p^prec.
    Inexact zero: unit == 0, prec == 0, v = absolute precision, i.e. O(p^v).
    Exact zero: unit == 0 and v is None.
    """

    __slots__ = ("p", "v", "unit", "prec")

    def __init__(self, p, v, unit, prec):
        self.p = p
        self.v = v
        self.unit = unit
        self.prec = prec

    # -- constructors --------------------------------------------------

    @classmethod
    def exact_zero(cls, p):
        return cls(p, None, 0, 0)

    @classmethod
    def inexact_zero(cls, p, absprec):
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_int(cls, n, p, prec):
        if n == 0:
            return cls.exact_zero(p)
        v = int_valuation(n, p)
        unit = (n // p**v) % p**prec
        return cls(p, v, unit, prec)

    @classmethod
    def from_fraction(cls, fr, p, prec):
        fr = Fraction(fr)
        if fr == 0:
            return cls.exact_zero(p)
        num, den = fr.numerator, fr.denominator
        vn = int_valuation(num, p)
        vd = int_valuation(den, p)
        pk = p**prec
        unit = ((num // p**vn) * pow(den // p**vd, -1, pk)) % pk
        return cls(p, vn - vd, unit, prec)

    # -- predicates and accessors ---------------------------------------

    @property
    def is_exact_zero(self):
        return self.unit == 0 and self.v is None

    @property
    def is_zero_at_precision(self):
        return self.unit == 0

    @property
    def abs_prec(self):
        """Absolute precision: the value is known modulo p^abs_prec."""
        if self.is_exact_zero:
            return math.inf
        if self.unit == 0:
            return self.v
        return self.v + self.prec

    def valuation(self):
        """v_p of the value, or None when indistinguishable from zero."""
        return None if self.unit == 0 else self.v

    def is_unit(self):
        return self.unit != 0 and self.v == 0

    def lift(self):
        """Integer representative in [0, p^abs_prec); requires v >= 0."""
        if self.unit == 0:
            return 0
        if self.v < 0:
            raise ValueError("negative valuation has no integer lift")
        return self.unit * self.p**self.v

    def residue(self, k):
        """Value modulo p^k as an integer; requires abs_prec >= k and v >= 0."""
        if self.abs_prec < k:
            raise PrecisionExhausted(f"known only mod p^{self.abs_prec}, need p^{k}")
        return self.lift() % self.p**k

    def unit_part(self):
        if self.unit == 0:
            raise ValueError("unit part of zero")
        return PadicNumber(self.p, 0, self.unit, self.prec)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            prec = self.prec if self.unit else 1
            return PadicNumber.from_fraction(other, self.p, max(prec, 1) + max(abs(self.v or 0), 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        n = min(self.abs_prec, other.abs_prec)
        if self.unit == 0 or other.unit == 0:
            nz = other if self.unit == 0 else self
            if nz.unit == 0 or nz.v >= n:
                return PadicNumber.inexact_zero(p, n)
            return PadicNumber(p, nz.v, nz.unit % p**(n - nz.v), n - nz.v)
        vm = min(self.v, other.v)
        if vm >= n:
            return PadicNumber.inexact_zero(p, n)
        w = (self.unit * p**(self.v - vm) + other.unit * p**(other.v - vm)) % p**(n - vm)
        if w == 0:
            return PadicNumber.inexact_zero(p, n)
        t = int_valuation(w, p)
        v = vm + t
        if v >= n:
            return PadicNumber.inexact_zero(p, n)
        return PadicNumber(p, v, (w // p**t) % p**(n - v), n - v)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNumber(self.p, self.v, (-self.unit) % self.p**self.prec, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNumber.exact_zero(p)
        if self.unit == 0 or other.unit == 0:
            # O(p^a) * (p^v u + O(...)) = O(p^(a+v)); O * O adds the bounds
            return PadicNumber.inexact_zero(p, self.v + other.v)
        prec = min(self.prec, other.prec)
        return PadicNumber(p, self.v + other.v, (self.unit * other.unit) % p**prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.unit == 0:
            raise ZeroDivisionError("division by (p-adic) zero at precision")
        p = self.p
        if self.is_exact_zero:
            return self
        if self.unit == 0:
            return PadicNumber.inexact_zero(p, self.v - other.v)
        prec = min(self.prec, other.prec)
        pk = p**prec
        return PadicNumber(p, self.v - other.v, (self.unit * pow(other.unit, -1, pk)) % pk, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return PadicNumber(self.p, 0, 1, self.prec if self.unit else 1)
        base = self
        if n < 0:
            base = PadicNumber(self.p, 0, 1, self.prec) / self
            n = -n
        out = None
        acc = base
        while n:
            if n & 1:
                out = acc if out is None else out * acc
            acc = acc * acc
            n >>= 1
        return out

    # -- comparison -----------------------------------------------------

    def agrees_with(self, other, absprec=None):
        """True when self - other vanishes modulo p^absprec (default: the
        shared precision of the two operands)."""
        other = self._coerce(other)
        d = self - other
        if absprec is None:
            return d.unit == 0
        if d.is_exact_zero:
            return True
        if d.abs_prec < absprec:
            raise PrecisionExhausted(
                f"cannot compare at p^{absprec}: difference known mod p^{d.abs_prec}")
        return d.unit == 0 or d.v >= absprec

    def __eq__(self, other):
        try:
            return self.agrees_with(other)
        except (ValueError, TypeError):
            return NotImplemented

    __hash__ = None

    def __repr__(self):
        p = self.p
        if self.is_exact_zero:
            return f"0 (exact, p={p})"
        if self.unit == 0:
            return f"O({p}^{self.v})"
        if self.v >= 0:
            return f"{self.lift()} + O({p}^{self.abs_prec})"
        return f"{self.unit}*{p}^{self.v} + O({p}^{self.abs_prec})"


# -- logarithms ---------------------------------------------------------


def padic_log(x: PadicNumber, prec=None) -> PadicNumber:
    """log of a 1-unit via the alternating series, summed exactly in Q and
    reduced once.  Precision defaults to the input's absolute precision."""
    p = x.p
    target = x.abs_prec if prec is None else min(prec, x.abs_prec)
    if x.unit == 0 or x.v != 0 or (x.unit - 1) % p != 0:
        raise NotOneUnit("p-adic log needs x = 1 mod p")
    return padic_log_exact(Fraction(x.lift()), p, target)


def padic_log_exact(a, p, target):
    """log(a) mod p^target for a rational a = 1 mod p (as a Fraction/int)."""
    a = Fraction(a)
    t = a - 1
    if t == 0:
        return PadicNumber.exact_zero(p)
    num, den = t.numerator, t.denominator
    if den % p == 0 or num % p != 0:
        raise NotOneUnit("p-adic log needs x = 1 mod p")
    if target < 2:
        raise PrecisionExhausted("need at least 2 significant digits")
    vt = int_valuation(num, p)
    # terms t^n/n have valuation >= n*vt - log_p(n); stop once that clears target
    nmax = 1
    while nmax * vt - int(math.log(nmax, p)) < target + 1:
        nmax += 1
    total = Fraction(0)
    tn = Fraction(1)
    for n in range(1, nmax + 1):
        tn *= t
        total += tn / n if n % 2 else -tn / n
    result = PadicNumber.from_fraction(total, p, target + 2)
    # reduce to the honest absolute precision
    v = result.valuation()
    if v is None:
        return PadicNumber.inexact_zero(p, target)
    rel = target - v
    if rel <= 0:
        return PadicNumber.inexact_zero(p, target)
    return PadicNumber(p, v, result.unit % p**rel, rel)


def iwasawa_log(x: PadicNumber):
    """Branch of log with log(p) = 0, defined on all of Q_p^x.

    For a general unit u the value is log(u^(p-1)) / (p-1).
    """
    if x.unit == 0:
        raise ValueError("log of zero")
    p = x.p
    u = x.unit_part()
    target = u.abs_prec
    upow = u ** (p - 1)
    return padic_log_exact(Fraction(upow.lift()), p, target) / (p - 1)


# -- Hensel lifting -----------------------------------------------------


def hensel_unit_root(a_p: int, p: int, prec: int) -> PadicNumber:
    """Unit root of x^2 - a_p x + p, lifted by Newton iteration.

    Only the good ordinary case; multiplicative reduction bypasses this
    (the unit root is +-1 there).
    """
    if a_p % p == 0:
        raise SupersingularInput(f"a_p = {a_p} vanishes mod {p}")
    mod = p**prec
    x = a_p % p
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        m = p**k
        fx = (x * x - a_p * x + p) % m
        dfx = (2 * x - a_p) % m
        x = (x - fx * pow(dfx, -1, m)) % m
    assert (x * x - a_p * x + p) % mod == 0
    return PadicNumber(p, 0, x % mod, prec)


def teichmuller(a: int, p: int, prec: int) -> PadicNumber:
    """Teichmuller lift: the (p-1)-th root of unity congruent to a mod p."""
    if a % p == 0:
        raise ValueError("Teichmuller lift of a non-unit")
    mod = p**prec
    x = a % mod
    for _ in range(prec + 1):
        x = pow(x, p, mod)
    return PadicNumber(p, 0, x, prec)


def gamma_coordinate(a: int, p: int, r: int, lift_prec=None) -> int:
    """Coordinate c in Z/p^r of a 1-unit a with respect to gamma = 1 + p,
    i.e. the exponent with gamma^c = a in Gamma_r.  Computed as
    log(a)/log(1+p) mod p^r.

    When a is only defined modulo p^lift_prec, pass that bound; the
    coordinate mod p^r is well defined as long as lift_prec >= r + 1.
    """
    if a % p != 1 % p or a == 0:
        raise NotOneUnit(f"{a} is not 1 mod {p}")
    if r == 0:
        return 0
    target = r + 2 if lift_prec is None else lift_prec
    if target < r + 1:
        raise PrecisionExhausted(f"need a mod p^{r + 1} for a level-{r} coordinate")
    rep = a % p**target
    if rep == 1:
        return 0
    la = padic_log_exact(rep, p, target)
    lg = padic_log_exact(1 + p, p, target)
    c = la / lg
    if c.unit == 0:
        return 0
    return c.residue(r)


# -- rational reconstruction ---------------------------------------------


def rational_reconstruct(x, denom_bound: int, error_bound) -> Fraction:
    """The unique rational a/b with |b| <= denom_bound within error_bound
    of the real number x.

    Preconditions: error_bound < 1/(2*denom_bound^2), else Ambiguous.
    Raises NoCandidate when no such rational exists.
    """
    xf = _to_fraction(x)
    eb = _to_fraction(error_bound)
    if eb * 2 * denom_bound * denom_bound >= 1:
        raise Ambiguous(f"error bound {error_bound} too loose for B={denom_bound}")
    cand = xf.limit_denominator(denom_bound)
    if abs(cand - xf) <= eb:
        return cand
    raise NoCandidate(f"no rational with denominator <= {denom_bound} within {error_bound}")


def _to_fraction(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    # mpmath mpf: exact binary value sign*man*2^exp
    tup = getattr(x, "_mpf_", None)
    if tup is not None:
        sign, man, exp, _ = tup
        fr = Fraction(man) * Fraction(2)**exp
        return -fr if sign else fr
    raise TypeError(f"cannot convert {type(x)} to an exact fraction")


# -- Tate parameter -------------------------------------------------------

# q-expansion of j: 1/q + 744 + sum c_k q^k, hard-coded to six terms
J_COEFFS = [744, 196884, 21493760, 864299970, 20245856256, 333202640600]


def j_series_eval(q: PadicNumber) -> PadicNumber:
    """Evaluate the truncated j-expansion at a parameter with v(q) > 0."""
    out = 1 / q + J_COEFFS[0]
    qk = None
    for c in J_COEFFS[1:]:
        qk = q if qk is None else qk * q
        out = out + qk * c
    return out


def tate_period_from_j(j: PadicNumber, iterations=None) -> PadicNumber:
    """Tate parameter q with j(q) = j, for v_p(j) < 0.

    Fixed-point iteration q <- (1 + 744 q + 196884 q^2 + ...)/j, which
    contracts by at least v(q) digits per step; v_p(q) = -v_p(j).
    """
    vj = j.valuation()
    if vj is None or vj >= 0:
        raise NotMultiplicative(f"v_p(j) = {vj} is not negative")
    q = 1 / j
    steps = iterations if iterations is not None else int(j.abs_prec - vj) // (-vj) + 3
    for _ in range(max(steps, 3)):
        acc = q * J_COEFFS[0]
        qk = q
        for c in J_COEFFS[1:]:
            qk = qk * q
            acc = acc + qk * c
        q = (1 + acc) / j
    assert q.valuation() == -vj
    return q


# -- cyclotomic extension --------------------------------------------------


class CyclotomicPadic:
    """Element of Z_p[zeta] for zeta a primitive p^k-th root of unity,
    in the power basis 1, zeta, ..., zeta^(d-1), d = (p-1)p^(k-1).

    Coefficients are PadicNumber; reduction modulo the p^k-th cyclotomic
    polynomial is canonical.
    """

    __slots__ = ("p", "k", "coeffs")

    def __init__(self, p, k, coeffs):
        d = (p - 1) * p**(k - 1)
        if len(coeffs) != d:
            raise ValueError(f"need {d} coefficients, got {len(coeffs)}")
        self.p = p
        self.k = k
        self.coeffs = list(coeffs)

    @property
    def degree(self):
        return (self.p - 1) * self.p**(self.k - 1)

    @classmethod
    def zero(cls, p, k):
        d = (p - 1) * p**(k - 1)
        return cls(p, k, [PadicNumber.exact_zero(p)] * d)

    @classmethod
    def from_scalar(cls, x: PadicNumber, k):
        out = cls.zero(x.p, k)
        out.coeffs[0] = x
        return out

    @classmethod
    def root_power(cls, p, k, e, prec):
        """zeta^e as a basis element (folded when e >= d)."""
        vec = [PadicNumber.exact_zero(p)] * p**k
        vec[e % p**k] = PadicNumber(p, 0, 1, prec)
        return cls._fold(p, k, vec)

    @classmethod
    def _fold(cls, p, k, vec):
        # zeta^(d+i) = -sum_j zeta^(j p^(k-1) + i), 0 <= i < p^(k-1)
        d = (p - 1) * p**(k - 1)
        step = p**(k - 1)
        for i in range(step):
            x = vec[d + i]
            if isinstance(x, PadicNumber) and x.is_exact_zero:
                continue
            for jj in range(p - 1):
                vec[jj * step + i] = vec[jj * step + i] - x
        return cls(p, k, vec[:d])

    def _binop(self, other, op):
        if isinstance(other, PadicNumber):
            other = CyclotomicPadic.from_scalar(other, self.k)
        if not isinstance(other, CyclotomicPadic):
            return NotImplemented
        if (other.p, other.k) != (self.p, self.k):
            raise ValueError("mixed cyclotomic levels")
        return CyclotomicPadic(self.p, self.k,
                               [op(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return CyclotomicPadic(self.p, self.k, [c * other for c in self.coeffs])
        if not isinstance(other, CyclotomicPadic):
            return NotImplemented
        p, k = self.p, self.k
        pk = p**k
        vec = [PadicNumber.exact_zero(p) for _ in range(pk)]
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_exact_zero:
                    continue
                e = (i + j) % pk
                vec[e] = vec[e] + a * b
        return CyclotomicPadic._fold(p, k, vec)

    __rmul__ = __mul__

    def galois(self, t):
        """Apply zeta -> zeta^t for t coprime to p."""
        p, k = self.p, self.k
        pk = p**k
        if math.gcd(t, p) != 1:
            raise ValueError("Galois twist exponent must be coprime to p")
        vec = [PadicNumber.exact_zero(p) for _ in range(pk)]
        for e, c in enumerate(self.coeffs):
            if c.is_exact_zero:
                continue
            ee = (e * t) % pk
            vec[ee] = vec[ee] + c
        return CyclotomicPadic._fold(p, k, vec)

    def conjugate(self):
        return self.galois(-1 % self.p**self.k)

    def agrees_with(self, other, absprec=None):
        if isinstance(other, PadicNumber):
            other = CyclotomicPadic.from_scalar(other, self.k)
        return all(a.agrees_with(b, absprec)
                   for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        terms = [f"({c})*z^{e}" for e, c in enumerate(self.coeffs)
                 if not c.is_zero_at_precision]
        body = " + ".join(terms) if terms else "0"
        return f"Cyc(p={self.p}, k={self.k}: {body})"
