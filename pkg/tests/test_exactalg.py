import cmath
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cheblab.exactalg import (
    Cyclotomic,
    complex_embed,
    cyc_add,
    cyc_conj,
    cyc_dot,
    cyc_mul,
    cyclotomic_poly,
    euler_phi,
)


def brute_cyclotomic(m):
    # x^m - 1 divided by Phi_d for every proper divisor d, by long division
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            den = list(brute_cyclotomic(d))
            q = [0] * (len(num) - len(den) + 1)
            r = num[:]
            for i in range(len(q) - 1, -1, -1):
                q[i] = r[i + len(den) - 1] // den[-1]
                for j, c in enumerate(den):
                    r[i + j] -= q[i] * c
            assert not any(r)
            num = q
    return tuple(num)


def test_cyclotomic_poly_small_cases():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_poly(12) == brute_cyclotomic(12)


@pytest.mark.parametrize("m", [1, 2, 6, 15, 30, 36, 60, 105, 210, 997, 1000])
def test_cyclotomic_poly_matches_sympy(m):
    x = sympy.Symbol("x")
    expect = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert cyclotomic_poly(m) == tuple(int(c) for c in expect)
    assert len(cyclotomic_poly(m)) - 1 == euler_phi(m)


@pytest.mark.parametrize("m", [0, -3, 1001])
def test_cyclotomic_poly_rejects_out_of_range(m):
    with pytest.raises(ValueError):
        cyclotomic_poly(m)


def test_ring_examples():
    z4 = Cyclotomic.zeta(4)
    assert cyc_mul(z4, z4) == -1
    assert cyc_conj(Cyclotomic.zeta(3)) == Cyclotomic(3, [-1, -1])
    a = Cyclotomic(5, [1, Fraction(2, 3), 0, -4])
    assert cyc_add(a, Cyclotomic(5)) == a


def test_canonical_equality():
    # x^2 reduces to -1 in Q(i); longer coefficient lists are reduced on input
    assert Cyclotomic(4, [0, 0, 1]) == Cyclotomic.rational(4, -1)
    assert Cyclotomic(3, [1, 1, 1]).is_zero()
    assert hash(Cyclotomic(4, [0, 0, 1])) == hash(Cyclotomic.rational(4, -1))


def test_order_mismatch_is_usage_error():
    with pytest.raises(ValueError):
        cyc_add(Cyclotomic.zeta(3), Cyclotomic.zeta(4))
    with pytest.raises(ValueError):
        cyc_mul(Cyclotomic.zeta(5), Cyclotomic.zeta(10))


def test_complex_embed_examples():
    assert complex_embed(Cyclotomic.rational(7, 1)) == pytest.approx(1 + 0j, abs=1e-15)
    assert complex_embed(Cyclotomic.zeta(4)) == pytest.approx(1j, abs=1e-15)
    z = Cyclotomic.zeta(5)
    val = complex_embed(1 + z + z * z * z * z)
    assert abs(val - 1.6180339887498949) < 1e-12


@pytest.mark.parametrize("m", range(1, 61))
def test_phi_vanishes_at_primitive_root(m):
    z = cmath.exp(2j * math.pi / m)
    assert abs(sum(c * z**k for k, c in enumerate(cyclotomic_poly(m)))) < 1e-10


def test_lift_and_galois():
    z3 = Cyclotomic.zeta(3)
    assert z3.lift(12) == Cyclotomic.zeta(12, 4)
    assert z3.galois(2) == z3.conj()
    with pytest.raises(ValueError):
        z3.lift(10)


def test_certified_sign():
    z5 = Cyclotomic.zeta(5)
    golden_minus_one = z5 + z5.conj()  # 2 cos(2 pi / 5) = 0.618...
    assert (golden_minus_one - Fraction(1, 2)).sign() == 1
    assert (golden_minus_one - Fraction(5, 8)).sign() == -1
    assert (golden_minus_one - golden_minus_one).sign() == 0
    # Fibonacci ratios bracket (sqrt5 - 1)/2 to within ~1e-13
    assert (golden_minus_one - Fraction(832040, 1346269)).sign() == 1
    assert (golden_minus_one - Fraction(1346269, 2178309)).sign() == -1


def test_cyc_dot_against_direct_sum():
    rng = random.Random(3)
    xs = [Cyclotomic(12, [rng.randint(-3, 3) for _ in range(4)]) for _ in range(5)]
    ys = [Cyclotomic(12, [rng.randint(-3, 3) for _ in range(4)]) for _ in range(5)]
    w = [1, 2, 3, 4, 5]
    direct = Cyclotomic(12)
    for a, b, k in zip(xs, ys, w):
        direct = direct + a * b.conj() * k
    assert cyc_dot(xs, ys, w) == direct
    assert cyc_dot(xs, ys, w, conjugate=False) == sum((a * b * k for a, b, k in zip(xs, ys, w)), Cyclotomic(12))


orders = st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 24, 60])


@st.composite
def pairs(draw):
    m = draw(orders)
    n = euler_phi(m)
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    a = Cyclotomic(m, draw(st.lists(coef, min_size=n, max_size=n)))
    b = Cyclotomic(m, draw(st.lists(coef, min_size=n, max_size=n)))
    return a, b


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_ring_properties(ab):
    a, b = ab
    assert cyc_mul(a, b) == cyc_mul(b, a)
    norm = complex_embed(cyc_mul(a, cyc_conj(a)))
    assert abs(norm.imag) < 1e-12
    assert norm.real > -1e-12
    assert abs(complex_embed(a * b) - complex_embed(a) * complex_embed(b)) < 1e-10 * (1 + abs(complex_embed(a * b)))
    assert abs(complex_embed(a + b) - complex_embed(a) - complex_embed(b)) < 1e-10
    assert abs(complex_embed(cyc_conj(a)) - complex_embed(a).conjugate()) < 1e-12 * (1 + abs(complex_embed(a)))
    assert (a - b) + b == a


def test_str_forms():
    assert str(Cyclotomic.rational(6, Fraction(-3, 2))) == "-3/2"
    assert str(Cyclotomic.zeta(3)) == "z"
    assert str(Cyclotomic(5, [1, -1, 0, 2])) == "1 - z + 2*z^3"
    assert str(-Cyclotomic.zeta(4)) == "-z"
    assert str(Cyclotomic.zeta(3, 2)) == "-1 - z"
