"""Elliptic curve models over Q: invariants, global minimal models, Tate
reduction data, Fourier coefficients, quadratic twists, discriminant
searches and real periods.

Point counting is naive O(q) Legendre summation, adequate below q ~ 10^6.
Conductor exponents come from Tate's algorithm: the valuation table for
q >= 5 and the full algorithm (with brute-force residue searches) at q = 2, 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import NotOrdinary, SingularCurve, ZeroD
from .padics import PadicNumber, hensel_unit_root, int_valuation


# -- small number theory helpers -------------------------------------------

@lru_cache(maxsize=8)
def primes_up_to(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(2, n + 1) if sieve[i]]


def factorize(n, bound=10**6):
    """Prime factorization by trial division; raises beyond desk scale."""
    n = abs(n)
    if n == 0:
        raise ValueError("factoring zero")
    out = {}
    for q in (2, 3, 5):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 7
    while q * q <= n and q <= bound:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 2
    if n > 1:
        if n > bound * bound:
            raise ValueError(f"cofactor {n} too large for trial division")
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n):
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n).values())


def squarefree_core(n):
    core = 1
    for q, e in factorize(abs(n)).items():
        if e % 2:
            core *= q
    return core if n > 0 else -core


def legendre(d, q):
    """Legendre symbol (d/q) for an odd prime q, via Euler's criterion."""
    d %= q
    if d == 0:
        return 0
    r = pow(d, (q - 1) // 2, q)
    return 1 if r == 1 else -1


# -- curve model --------------------------------------------------------------


@dataclass(frozen=True)
class CurveModel:
    """Weierstrass model [a1, a2, a3, a4, a6] with exact rational entries."""

    label: str
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    @classmethod
    def from_ainvs(cls, label, ainvs):
        a = [Fraction(x) for x in ainvs]
        E = cls(label, *a)
        if E.discriminant == 0:
            raise SingularCurve(f"{label}: discriminant vanishes")
        return E

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self):
        c4, _ = self.c_invariants
        return c4**3 / self.discriminant

    def is_integral(self):
        return all(x.denominator == 1 for x in self.ainvs)

    def transformed(self, u, r, s, t, label=None):
        """Standard change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        a1, a2, a3, a4, a6 = self.ainvs
        u, r, s, t = Fraction(u), Fraction(r), Fraction(s), Fraction(t)
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
        na3 = (a3 + r * a1 + 2 * t) / u**3
        na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
        na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
        return CurveModel(label or self.label, na1, na2, na3, na4, na6)

    def __repr__(self):
        return f"CurveModel({self.label}: {[str(x) for x in self.ainvs]})"


def integral_model(E: CurveModel) -> CurveModel:
    """Clear denominators by a u-scaling with u = 1/lcm of the denominators."""
    den = 1
    for x in E.ainvs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    if den == 1:
        return E
    return E.transformed(Fraction(1, den), 0, 0, 0)


def _kraus_ok(c4, c6):
    """Kraus admissibility of an integral (c4, c6) pair: at 3, v_3(c6) != 2;
    at 2, c6 = -1 mod 4, or 16 | c4 with c6 = 0 or 8 mod 32."""
    ok3 = not (c6 % 9 == 0 and c6 % 27 != 0)
    ok2 = (c6 % 4 == 3) or (c4 % 16 == 0 and c6 % 32 in (0, 8))
    return ok2 and ok3


def minimal_model(E: CurveModel) -> CurveModel:
    """Global minimal model (Laska-Kraus-Connell) with the same label."""
    E = integral_model(E)
    c4, c6 = (int(x) for x in E.c_invariants)
    disc = int(E.discriminant)
    if c4 == 0:
        cands = factorize(c6)
    elif c6 == 0:
        cands = factorize(c4)
    else:
        cands = factorize(math.gcd(c4, c6))
    u = 1
    for q in sorted(cands):
        e = min(int_valuation(c4, q) // 4 if c4 else 10**9,
                int_valuation(c6, q) // 6 if c6 else 10**9,
                int_valuation(disc, q) // 12)
        if q in (2, 3):
            while e > 0 and not _kraus_ok(c4 // q**(4 * e), c6 // q**(6 * e)):
                e -= 1
        u *= q**e
    c4m, c6m = c4 // u**4, c6 // u**6
    return _model_from_c_invariants(E.label, c4m, c6m)


def _model_from_c_invariants(label, c4, c6):
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2**3 + 36 * b2 * b4 - c6) // 216
    if (b2 * b2 - c4) % 24 or (-b2**3 + 36 * b2 * b4 - c6) % 216:
        raise SingularCurve(f"{label}: (c4, c6) not Kraus-admissible")
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    model = CurveModel.from_ainvs(label, [a1, a2, a3, a4, a6])
    assert model.c_invariants == (c4, c6)
    return model


_MINIMAL_CACHE = {}


def minimal(E: CurveModel) -> CurveModel:
    key = (E.label, E.ainvs)
    if key not in _MINIMAL_CACHE:
        _MINIMAL_CACHE[key] = minimal_model(E)
    return _MINIMAL_CACHE[key]


# -- reduction data ------------------------------------------------------------


@dataclass(frozen=True)
class ReductionData:
    prime: int
    kind: str  # good-ordinary | good-supersingular | split-multiplicative |
    #            nonsplit-multiplicative | additive
    a_p: int
    conductor_exponent: int
    kodaira: str

    @property
    def is_good(self):
        return self.kind.startswith("good")

    @property
    def is_multiplicative(self):
        return self.kind.endswith("multiplicative")

    def unit_root(self, prec) -> PadicNumber:
        """Unit root of Frobenius: Hensel lift for good ordinary, +-1 for
        multiplicative reduction."""
        p = self.prime
        if self.kind == "split-multiplicative":
            return PadicNumber.from_int(1, p, prec)
        if self.kind == "nonsplit-multiplicative":
            return PadicNumber.from_int(-1, p, prec)
        if self.kind == "good-ordinary":
            return hensel_unit_root(self.a_p, p, prec)
        raise NotOrdinary(f"no unit root at {p}: {self.kind}")


def count_points(E: CurveModel, q: int) -> int:
    """|E(F_q)| for a model with good reduction at q (naive count)."""
    a1, a2, a3, a4, a6 = (int(x) for x in E.ainvs)
    if q <= 3:
        cnt = 1
        for x in range(q):
            for y in range(q):
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % q == 0:
                    cnt += 1
        return cnt
    b2, b4, b6, _ = (int(x) for x in E.b_invariants)
    total = 0
    half = (q - 1) // 2
    for x in range(q):
        f = (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % q
        if f == 0:
            continue
        total += 1 if pow(f, half, q) == 1 else -1
    return q + 1 + total


def _tate_small_prime(ainvs, q):
    """Full Tate algorithm at q = 2 or 3 with brute-force residue searches.

    Returns (kind, a_q, conductor exponent, kodaira symbol).
    """
    a = [int(x) for x in ainvs]

    def invariants(a):
        a1, a2, a3, a4, a6 = a
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        c4 = b2 * b2 - 24 * b4
        return b2, b4, b6, b8, c4, disc

    def translate(a, r, s, t):
        a1, a2, a3, a4, a6 = a
        return [a1 + 2 * s,
                a2 - s * a1 + 3 * r - s * s,
                a3 + r * a1 + 2 * t,
                a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
                a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1]

    def v(n):
        return 10**9 if n == 0 else int_valuation(n, q)

    while True:
        b2, b4, b6, b8, c4, disc = invariants(a)
        n = v(disc)
        if n == 0:
            return None  # good reduction; caller counts points
        # move the singular point to the origin
        a1, a2, a3, a4, a6 = a

        def singular_point():
            for x0 in range(q):
                for y0 in range(q):
                    F = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0**3 - a2 * x0 * x0 - a4 * x0 - a6
                    Fx = a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4
                    Fy = 2 * y0 + a1 * x0 + a3
                    if F % q == 0 and Fx % q == 0 and Fy % q == 0:
                        return x0, y0
            raise AssertionError("no singular point found")

        x0, y0 = singular_point()
        a = translate(a, x0, 0, y0)
        b2, b4, b6, b8, c4, disc = invariants(a)
        a1, a2, a3, a4, a6 = a
        if c4 % q != 0:
            # multiplicative: tangent directions from T^2 + a1 T - a2
            split = any((T * T + a1 * T - a2) % q == 0 for T in range(q))
            kind = "split-multiplicative" if split else "nonsplit-multiplicative"
            return kind, (1 if split else -1), 1, f"I{n}"
        if v(a6) < 2:
            return "additive", 0, n + 1 - 1, "II"
        if v(b8) < 3:
            return "additive", 0, n + 1 - 2, "III"
        if v(b6) < 3:
            return "additive", 0, n + 1 - 3, "IV"
        # normalize to q|a1,a2, q^2|a3,a4, q^3|a6
        found = False
        for s in range(q):
            for r1 in range(q):
                for t1 in range(q):
                    cand = translate(a, q * r1, s, q * t1)
                    if (cand[0] % q == 0 and cand[1] % q == 0 and cand[2] % q**2 == 0
                            and cand[3] % q**2 == 0 and cand[4] % q**3 == 0):
                        a = cand
                        found = True
                        break
                if found:
                    break
            if found:
                break
        assert found, "step-6 normalization failed"
        a1, a2, a3, a4, a6 = a
        # cubic P(T) = T^3 + (a2/q) T^2 + (a4/q^2) T + (a6/q^3) mod q
        P = lambda T: (T**3 + (a2 // q) * T * T + (a4 // q**2) * T + a6 // q**3) % q
        roots = [T for T in range(q) if P(T) == 0]
        dP = lambda T: (3 * T * T + 2 * (a2 // q) * T + a4 // q**2) % q
        multiple = [T for T in roots if dP(T) == 0]
        if not multiple:
            # separable cubic: roots may live in an extension, type I0*
            assert _cubic_discriminant(a2 // q, a4 // q**2, a6 // q**3) % q != 0
            return "additive", 0, n + 1 - 5, "I0*"
        # multiple root in F_q (a rational multiple root always exists here)
        t0 = multiple[0]
        a = translate(a, q * t0, 0, 0)
        a1, a2, a3, a4, a6 = a
        if v(a2) == 1:
            # double root: the I_nu* chain
            m = 1
            while True:
                # odd step: Y^2 + a_{3,m+1} Y - a_{6,2m+2}
                bq = a3 // q**(m + 1)
                cq = a6 // q**(2 * m + 2)
                if _quadratic_separable(1, bq, -cq, q):
                    nu = 2 * m - 1
                    return "additive", 0, n + 1 - (5 + nu), f"I{nu}*"
                y0 = _quadratic_double_root(1, bq, -cq, q)
                a = translate(a, 0, 0, q**(m + 1) * y0)
                a1, a2, a3, a4, a6 = a
                # even step: a_{2,1} X^2 + a_{4,m+2} X + a_{6,2m+3}
                aq = a2 // q
                bq = a4 // q**(m + 2)
                cq = a6 // q**(2 * m + 3)
                if _quadratic_separable(aq, bq, cq, q):
                    nu = 2 * m
                    return "additive", 0, n + 1 - (5 + nu), f"I{nu}*"
                x1 = _quadratic_double_root(aq, bq, cq, q)
                a = translate(a, q**(m + 1) * x1, 0, 0)
                a1, a2, a3, a4, a6 = a
                m += 1
        # triple root translated to zero already
        bq = a3 // q**2
        cq = a6 // q**4
        if _quadratic_separable(1, bq, -cq, q):
            return "additive", 0, n + 1 - 7, "IV*"
        y0 = _quadratic_double_root(1, bq, -cq, q)
        a = translate(a, 0, 0, q**2 * y0)
        a1, a2, a3, a4, a6 = a
        if v(a4) < 4:
            return "additive", 0, n + 1 - 8, "III*"
        if v(a6) < 6:
            return "additive", 0, n + 1 - 9, "II*"
        # non-minimal at q: rescale and restart
        a = [a1 // q, a2 // q**2, a3 // q**3, a4 // q**4, a6 // q**6]


def _cubic_discriminant(A, B, C):
    # disc of T^3 + A T^2 + B T + C
    return 18 * A * B * C - 4 * A**3 * C + A * A * B * B - 4 * B**3 - 27 * C * C


def _quadratic_separable(aq, bq, cq, q):
    """Is aq X^2 + bq X + cq separable mod q (distinct roots in the closure)?"""
    if q == 2:
        return bq % 2 != 0
    return (bq * bq - 4 * aq * cq) % q != 0


def _quadratic_double_root(aq, bq, cq, q):
    if q == 2:
        # inseparable: X^2 + c has root c; a X^2 + c likewise (a odd)
        for x in range(2):
            if (aq * x * x + bq * x + cq) % 2 == 0:
                return x
        raise AssertionError("no double root mod 2")
    x = (-bq * pow(2 * aq, -1, q)) % q
    return x


def _tate_large_prime(E: CurveModel, q):
    """Kodaira type and conductor exponent at q >= 5 from the valuation table
    (on a possibly non-minimal integral model)."""
    c4, c6 = (int(x) for x in E.c_invariants)
    disc = int(E.discriminant)
    v4 = int_valuation(c4, q) if c4 else 10**9
    v6 = int_valuation(c6, q) if c6 else 10**9
    vd = int_valuation(disc, q) if disc % q == 0 else 0
    while v4 >= 4 and v6 >= 6 and vd >= 12:
        v4, v6, vd = v4 - 4, v6 - 6, vd - 12
    if vd == 0:
        return None
    if v4 == 0:
        # split iff -c6 is a square mod q (tangent slopes at the node)
        split = legendre((-c6) % q, q) == 1
        kind = "split-multiplicative" if split else "nonsplit-multiplicative"
        return kind, (1 if split else -1), 1, f"I{vd}"
    if vd == 6:
        kodaira = "I0*"
    elif v4 == 2 and vd >= 7:
        kodaira = f"I{vd - 6}*"
    else:
        kodaira = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}.get(vd, "additive")
    return "additive", 0, 2, kodaira


_REDUCTION_CACHE = {}


def reduce_at(E: CurveModel, q: int) -> ReductionData:
    """Reduction data at q, computed on the global minimal model."""
    Em = minimal(E)
    key = (Em.ainvs, q)
    if key in _REDUCTION_CACHE:
        return _REDUCTION_CACHE[key]
    disc = int(Em.discriminant)
    if disc % q != 0:
        ap = q + 1 - count_points(Em, q)
        kind = "good-ordinary" if ap % q != 0 else "good-supersingular"
        out = ReductionData(q, kind, ap, 0, "I0")
    else:
        res = _tate_small_prime(Em.ainvs, q) if q in (2, 3) else _tate_large_prime(Em, q)
        if res is None:
            ap = q + 1 - count_points(Em, q)
            kind = "good-ordinary" if ap % q != 0 else "good-supersingular"
            out = ReductionData(q, kind, ap, 0, "I0")
        else:
            kind, ap, f, kod = res
            out = ReductionData(q, kind, ap, f, kod)
    _REDUCTION_CACHE[key] = out
    return out


def conductor(E: CurveModel) -> int:
    Em = minimal(E)
    N = 1
    for q in sorted(factorize(int(Em.discriminant))):
        N *= q ** reduce_at(Em, q).conductor_exponent
    return N


# -- Fourier coefficients -------------------------------------------------------

_AN_CACHE = {}


def an_table(E: CurveModel, nmax: int):
    """a_1..a_nmax by multiplicativity and the prime power recurrences;
    returns a list indexed 0..nmax with slot 0 unused."""
    Em = minimal(E)
    key = Em.ainvs
    cached = _AN_CACHE.get(key)
    if cached is not None and len(cached) > nmax:
        return cached[: nmax + 1]
    a = [0] * (nmax + 1)
    a[1] = 1
    disc = int(Em.discriminant)
    good = {}
    for q in primes_up_to(nmax):
        red = reduce_at(Em, q)
        a[q] = red.a_p
        good[q] = red.is_good
    # least prime factor sieve for the recurrences
    lpf = list(range(nmax + 1))
    for q in primes_up_to(math.isqrt(nmax) + 1)[::-1]:
        lpf[q * q:: q] = [q] * len(range(q * q, nmax + 1, q))
    for n in range(2, nmax + 1):
        q = lpf[n]
        if q == n:
            continue
        m = n // q
        if m % q != 0:
            a[n] = a[q] * a[m]
        elif good[q]:
            a[n] = a[q] * a[m] - q * a[m // q]
        else:
            a[n] = a[q] * a[m]
    _AN_CACHE[key] = a
    return a


# -- twists and discriminants -----------------------------------------------------


def quadratic_twist(E: CurveModel, D: int) -> CurveModel:
    """Minimal model of the quadratic twist by (the squarefree core of) D;
    the label records D."""
    if D == 0:
        raise ZeroD("twist by zero")
    d = squarefree_core(D)
    c4, c6 = minimal(E).c_invariants
    label = f"{E.label}_tw{D}"
    if d == 1:
        return CurveModel.from_ainvs(label, minimal(E).ainvs)
    twisted = CurveModel(label,
                         Fraction(0), Fraction(0), Fraction(0),
                         -27 * c4 * d * d, -54 * c6 * d**3)
    return minimal(twisted)


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants(primes, signs, bound):
    """All fundamental discriminants |D| < bound with (D/p_i) = eps_i for the
    given condition lists, ordered by |D| (positive first at ties)."""
    if len(primes) != len(set(primes)):
        raise ValueError("condition primes must be distinct")
    if len(primes) != len(signs):
        raise ValueError("need one sign per prime")
    out = []
    for absd in range(2, bound):
        for D in (absd, -absd):
            if not is_fundamental_discriminant(D):
                continue
            if all(legendre(D, q) == e for q, e in zip(primes, signs)):
                out.append(D)
    return out


def same_type(E: CurveModel, F: CurveModel, p: int) -> bool:
    """Ordinary reduction of the same type at p: equal a_p good ordinary, or
    both split, or both non-split multiplicative."""
    re_, rf = reduce_at(E, p), reduce_at(F, p)
    for r in (re_, rf):
        if r.kind not in ("good-ordinary", "split-multiplicative",
                          "nonsplit-multiplicative"):
            raise NotOrdinary(f"{r.kind} at {p}")
    if re_.kind == "good-ordinary" and rf.kind == "good-ordinary":
        return re_.a_p == rf.a_p
    return re_.kind == rf.kind


def ordinary_primes(E: CurveModel, bound: int, minimum: int = 5):
    """Primes p in [minimum, bound] of good ordinary reduction."""
    return [q for q in primes_up_to(bound)
            if q >= minimum and reduce_at(E, q).kind == "good-ordinary"]


# -- real period -------------------------------------------------------------------


def real_period(E: CurveModel, dps: int = 30):
    """Fundamental real period of the minimal model by the AGM, doubled when
    the real locus has two components."""
    Em = minimal(E)
    b2, b4, b6, _ = Em.b_invariants
    with mpmath.workdps(dps + 10):
        # y^2 = g(x) after completing the square; dx/(2y+a1x+a3) = dx/(2Y)
        coeffs = [mpmath.mpf(1),
                  mpmath.mpf(b2.numerator) / b2.denominator / 4,
                  mpmath.mpf(b4.numerator) / b4.denominator / 2,
                  mpmath.mpf(b6.numerator) / b6.denominator / 4]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=60)
        disc = Em.discriminant
        if disc > 0:
            es = sorted((r.real for r in roots), reverse=True)
            e1, e2, e3 = es
            agm = mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e1 - e2))
            omega = 2 * mpmath.pi / agm
            return +(2 * omega)
        real_roots = [r for r in roots if abs(r.imag) < mpmath.mpf(10) ** (-dps)]
        e1 = max(r.real for r in real_roots)
        others = [r for r in roots if abs(r.real - e1) + abs(r.imag) > mpmath.mpf(10) ** (-dps)]
        w = mpmath.sqrt(mpmath.mpc(e1) - others[0])
        agm = mpmath.agm(abs(w), w.real)
        return +(2 * mpmath.pi / agm)


def real_period_quadrature(E: CurveModel, dps: int = 25):
    """Independent oracle: integrate dx/y over the real locus directly."""
    Em = minimal(E)
    b2, b4, b6, _ = Em.b_invariants
    with mpmath.workdps(dps + 10):
        g = lambda x: x**3 + mpmath.mpf(b2.numerator) / b2.denominator / 4 * x * x \
            + mpmath.mpf(b4.numerator) / b4.denominator / 2 * x \
            + mpmath.mpf(b6.numerator) / b6.denominator / 4
        coeffs = [mpmath.mpf(1),
                  mpmath.mpf(b2.numerator) / b2.denominator / 4,
                  mpmath.mpf(b4.numerator) / b4.denominator / 2,
                  mpmath.mpf(b6.numerator) / b6.denominator / 4]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=60)
        disc = Em.discriminant
        total = mpmath.mpf(0)
        if disc > 0:
            e1, e2, e3 = sorted((r.real for r in roots), reverse=True)
            total += 2 * mpmath.quad(lambda x: 1 / mpmath.sqrt(g(x)), [e1, mpmath.inf])
            total += 2 * mpmath.quad(lambda x: 1 / mpmath.sqrt(g(x)), [e3, e2])
        else:
            real_roots = [r.real for r in roots if abs(r.imag) < mpmath.mpf(10) ** (-dps)]
            e1 = max(real_roots)
            total += 2 * mpmath.quad(lambda x: 1 / mpmath.sqrt(g(x)), [e1, mpmath.inf])
        return +total
