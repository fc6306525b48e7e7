"""Tests for curve models: invariants, minimal models, Tate reduction,
Fourier coefficients, twists, discriminant searches and periods."""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from ellpadic.curves import (
    CurveModel,
    an_table,
    conductor,
    count_points,
    fundamental_discriminants,
    is_fundamental_discriminant,
    legendre,
    minimal,
    ordinary_primes,
    primes_up_to,
    quadratic_twist,
    real_period,
    real_period_quadrature,
    reduce_at,
    same_type,
    squarefree_core,
)
from ellpadic.errors import NotOrdinary, SingularCurve, ZeroD
from ellpadic.padics import PadicNumber

E11 = CurveModel.from_ainvs("11a1", [0, -1, 1, -10, -20])
E14 = CurveModel.from_ainvs("14a1", [1, 0, 1, 4, -6])
E15 = CurveModel.from_ainvs("15a1", [1, 1, 1, -10, -10])
E37 = CurveModel.from_ainvs("37a1", [0, 0, 1, -1, 0])
E389 = CurveModel.from_ainvs("389a1", [0, 1, 1, -2, 0])
E5077 = CurveModel.from_ainvs("5077a1", [0, 0, 1, -7, 6])
E27 = CurveModel.from_ainvs("27a1", [0, 0, 1, 0, -7])
E49 = CurveModel.from_ainvs("49a1", [1, -1, 0, -2, -1])
E32 = CurveModel.from_ainvs("32a", [0, 0, 0, -1, 0])


# -- invariants and minimal models ---------------------------------------------

def test_11a1_invariants():
    assert E11.discriminant == -(11**5)
    assert E11.c_invariants == (496, 20008)
    assert E11.j_invariant == Fraction(-(2**12) * 31**3, 11**5)


def test_singular_curve_rejected():
    with pytest.raises(SingularCurve):
        CurveModel.from_ainvs("x", [0, 0, 0, 0, 0])


def test_minimal_model_recovers_scaled_curve():
    # scale 11a1 by u = 2 and by u = 6, then minimize back
    for u in (2, 6):
        scaled = E11.transformed(Fraction(1, u), 0, 0, 0)
        back = minimal(CurveModel.from_ainvs("scaled", scaled.ainvs))
        assert back.c_invariants == E11.c_invariants
        assert back.discriminant == E11.discriminant


def test_minimal_model_clears_denominators():
    frac = CurveModel.from_ainvs("frac", [0, 0, 0, Fraction(-1, 16), 0])
    m = minimal(frac)
    assert m.is_integral()
    # x -> x/4, y -> y/8 rescales y^2 = x^3 - x/16 to y^2 = x^3 - x
    assert m.c_invariants == E32.c_invariants


# -- reduction types --------------------------------------------------------------

def test_11a1_at_11_split_multiplicative():
    red = reduce_at(E11, 11)
    assert red.kind == "split-multiplicative"
    assert red.a_p == 1
    assert red.conductor_exponent == 1
    assert red.kodaira == "I5"


def test_11a1_at_5_good_ordinary():
    red = reduce_at(E11, 5)
    assert red.kind == "good-ordinary"
    assert red.a_p == 1
    assert red.conductor_exponent == 0


def test_additive_example():
    E = CurveModel.from_ainvs("j0", [0, 0, 0, 0, 5])
    red = reduce_at(E, 5)
    assert red.kind == "additive"
    assert red.a_p == 0
    assert red.conductor_exponent == 2


def test_37a1_reduction():
    # oracle: the nonsingular point count mod 37 gives a_37 = 37 - #E_ns = -1
    red = reduce_at(E37, 37)
    assert red.kind == "nonsplit-multiplicative"
    assert red.a_p == -1
    red5 = reduce_at(E37, 5)
    assert red5.kind == "good-ordinary"
    assert red5.a_p == -2


def test_multiplicative_sign_matches_nonsingular_count():
    # independent oracle: a_q = q - #E_ns(F_q) at multiplicative primes
    def ns_count(E, q):
        a1, a2, a3, a4, a6 = (int(x) for x in minimal(E).ainvs)
        cnt = 1
        for x in range(q):
            for y in range(q):
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % q:
                    continue
                fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % q
                fy = (2 * y + a1 * x + a3) % q
                if fx or fy:
                    cnt += 1
        return cnt

    for E, q in [(E11, 11), (E37, 37), (E14, 2), (E14, 7), (E15, 3), (E15, 5)]:
        red = reduce_at(E, q)
        assert red.is_multiplicative
        assert red.a_p == q - ns_count(E, q), (E.label, q)


def test_known_conductors():
    assert conductor(E11) == 11
    assert conductor(E14) == 14
    assert conductor(E15) == 15
    assert conductor(E37) == 37
    assert conductor(E389) == 389
    assert conductor(E5077) == 5077
    assert conductor(E27) == 27
    assert conductor(E49) == 49
    assert conductor(E32) == 32


def test_unit_root_from_reduction():
    red = reduce_at(E11, 5)
    alpha = red.unit_root(6)
    val = alpha * alpha - alpha * red.a_p + 5
    assert val.is_zero_at_precision
    assert reduce_at(E11, 11).unit_root(4).agrees_with(1)
    with pytest.raises(NotOrdinary):
        reduce_at(E27, 3).unit_root(4)


# -- point counts and a_n -----------------------------------------------------------

def test_hasse_bound_sweep():
    for E in (E11, E14, E37, E389, E5077):
        Em = minimal(E)
        disc = int(Em.discriminant)
        for q in primes_up_to(1000):
            if disc % q == 0:
                continue
            aq = q + 1 - count_points(Em, q)
            assert aq * aq <= 4 * q, (E.label, q, aq)


def test_an_recurrence_at_prime_squares():
    a = an_table(E11, 30)
    assert a[1] == 1
    assert a[25] == a[5] ** 2 - 5  # == -4
    assert a[25] == -4


def test_an_multiplicativity():
    a = an_table(E11, 10**4)
    rng = random.Random(0)
    for _ in range(300):
        m = rng.randint(2, 99)
        n = rng.randint(2, 10**4 // m)
        if math.gcd(m, n) == 1:
            assert a[m * n] == a[m] * a[n]


def test_an_against_fresh_point_counts():
    a = an_table(E37, 500)
    Em = minimal(E37)
    for q in primes_up_to(500):
        if int(Em.discriminant) % q:
            assert a[q] == q + 1 - count_points(Em, q)


def test_an_multiplicative_prime_powers():
    # at a multiplicative prime a_{q^k} = a_q^k
    a = an_table(E11, 11**3 + 1)
    assert a[11] == 1 and a[121] == 1 and a[11**3] == 1


# -- twists ---------------------------------------------------------------------------

def test_twist_preserves_j():
    for D in (5, -4, 29):
        ED = quadratic_twist(E11, D)
        assert ED.j_invariant == E11.j_invariant


def test_twist_is_involution_up_to_iso():
    ED = quadratic_twist(E11, 21)
    back = quadratic_twist(ED, 21)
    assert back.j_invariant == E11.j_invariant
    assert back.c_invariants == minimal(E11).c_invariants


def test_twist_conductors_match_theory():
    # for gcd(D, N) = 1, N(E_D) = N * cond(chi_D)^2
    assert conductor(quadratic_twist(E11, -4)) == 11 * 16      # 176
    assert conductor(quadratic_twist(E11, 8)) == 11 * 64       # 704
    assert conductor(quadratic_twist(E11, 21)) == 11 * 441
    assert conductor(quadratic_twist(E37, -3)) == 37 * 9
    assert conductor(quadratic_twist(E37, -4)) == 37 * 16
    # ramified twist at the multiplicative prime: Steinberg becomes additive
    assert conductor(quadratic_twist(E11, -11)) == 121


def test_twist_preserves_type_at_split_primes():
    # (D/p) = 1 keeps the reduction type at p
    for D in (29, 21, -19):
        if legendre(D, 5) == 1:
            red = reduce_at(quadratic_twist(E11, D), 5)
            assert red.kind == "good-ordinary" and red.a_p == 1
    redns = reduce_at(quadratic_twist(E11, -4), 11)
    assert redns.kind == "nonsplit-multiplicative"  # (-4/11) = -1


def test_twist_by_zero_rejected():
    with pytest.raises(ZeroD):
        quadratic_twist(E11, 0)


# -- legendre and discriminants ------------------------------------------------------

def test_legendre_basic():
    assert legendre(1, 11) == 1
    assert legendre(5, 11) == 1  # squares mod 11: {1,3,4,5,9}
    assert legendre(2, 11) == -1
    assert legendre(22, 11) == 0


def test_squarefree_core():
    assert squarefree_core(4) == 1
    assert squarefree_core(-4) == -1
    assert squarefree_core(12) == 3
    assert squarefree_core(30) == 30


def test_fundamental_discriminant_predicate():
    assert is_fundamental_discriminant(5)
    assert not is_fundamental_discriminant(15)  # 15 = 3 mod 4
    assert is_fundamental_discriminant(-4)
    assert is_fundamental_discriminant(8)
    assert not is_fundamental_discriminant(1)
    assert not is_fundamental_discriminant(25)


def brute_force_fundamental(bound):
    """Oracle: discriminants of Q(sqrt(d)) for squarefree d != 1."""
    out = set()
    for d in range(-bound * 2, bound * 2):
        if d in (0, 1):
            continue
        core = squarefree_core(d)
        if core != d:
            continue
        D = d if d % 4 == 1 else 4 * d
        if abs(D) < bound:
            out.add(D)
    return out


def test_fundamental_discriminants_exhaustive():
    got = set(fundamental_discriminants([], [], 500))
    assert got == brute_force_fundamental(500)


def test_fundamental_discriminants_with_conditions():
    out = fundamental_discriminants([5], [1], 30)
    assert all(legendre(D, 5) == 1 for D in out)
    want = [D for D in sorted(brute_force_fundamental(30), key=abs)
            if legendre(D, 5) == 1]
    assert sorted(out) == sorted(want)


# -- same type -----------------------------------------------------------------------

def test_same_type_good_twist():
    ED = quadratic_twist(E11, 29)  # (29/5) = 1
    assert same_type(E11, ED, 5)


def test_same_type_split_vs_nonsplit():
    ED = quadratic_twist(E11, -4)
    assert not same_type(E11, ED, 11)  # split vs nonsplit


def test_same_type_rejects_supersingular():
    # 11a1 has a_19 = 0: supersingular at 19
    a = an_table(E11, 20)
    assert a[19] == 0
    with pytest.raises(NotOrdinary):
        same_type(E11, E11, 19)


def test_ordinary_primes():
    ops = ordinary_primes(E11, 30)
    assert 5 in ops and 7 in ops and 19 not in ops and 11 not in ops


# -- periods --------------------------------------------------------------------------

def test_real_period_positive_and_matches_quadrature():
    for E in (E11, E37, E389):
        om = real_period(E)
        oracle = real_period_quadrature(E)
        assert om > 0
        assert abs(om - oracle) < 1e-9 * om, E.label


def test_real_period_two_components():
    # 32a: y^2 = x^3 - x has positive discriminant (two components)
    om = real_period(E32)
    oracle = real_period_quadrature(E32)
    assert abs(om - oracle) < 1e-9 * om


def test_twisted_period_scaling():
    # for D > 0 the twisted period is Omega / sqrt(D) times a rational
    from ellpadic.padics import rational_reconstruct
    om = real_period(E11)
    omD = real_period(quadratic_twist(E11, 5))
    ratio = om / (omD * mpmath.sqrt(5))
    r = rational_reconstruct(float(ratio), 50, 1e-8)
    assert r > 0
