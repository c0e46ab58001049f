import cmath
import math

import mpmath
import numpy as np
import pytest

from cheblab.errors import VerificationError
from cheblab.frobenius import make_scenario
from cheblab.lfun import (
    ZeroCollisionError,
    class_weights,
    contour_residue_H,
    dirichlet_character,
    dirichlet_L,
    find_zero,
    hurwitz_zeta,
    parse_complex,
    prime_power_tail,
    tail_check,
    truncated_F,
    truncated_H,
    truncated_neg_logderiv,
    winding_number,
)

CHI4 = [0, 1, 0, -1]


def mp_L(q, chi, s):
    vals = [complex(v) for v in dirichlet_character(q, chi)]
    return complex(mpmath.dirichlet(mpmath.mpc(s.real, s.imag), vals))


def test_parse_complex():
    assert parse_complex("0.5+6i") == complex(0.5, 6)
    assert parse_complex("2") == 2
    assert parse_complex(1.5) == 1.5
    with pytest.raises(ValueError):
        parse_complex("nonsense")


@pytest.mark.parametrize("s,a,expected", [
    (2, 1, math.pi**2 / 6),
    (2, 0.5, math.pi**2 / 2),
    (4, 1, math.pi**4 / 90),
])
def test_hurwitz_closed_forms(s, a, expected):
    assert abs(hurwitz_zeta(s, a) - expected) < 1e-13


@pytest.mark.parametrize("s", [0.5 + 6j, 0.5 + 60j, 0.2 - 3j, 3.0, 1.5 + 0.1j, 9 + 99j])
@pytest.mark.parametrize("a", [0.25, 1 / 3, 0.9, 1.0])
def test_hurwitz_against_mpmath(s, a):
    got, err = hurwitz_zeta(s, a, with_error=True)
    ref = complex(mpmath.zeta(s, a))
    assert abs(got - ref) <= max(1e-12 * abs(ref), 1e-13)
    assert err < 1e-12 * max(1.0, abs(ref))


def test_hurwitz_rejects():
    with pytest.raises(ValueError):
        hurwitz_zeta(1, 0.5)
    with pytest.raises(ValueError):
        hurwitz_zeta(2, 0)


def test_character_values():
    np.testing.assert_allclose(dirichlet_character(4, 1), CHI4, atol=1e-15)
    v = dirichlet_character(7, 2)
    assert v[0] == 0
    for a in range(1, 7):
        for b in range(1, 7):
            assert abs(v[a * b % 7] - v[a] * v[b]) < 1e-12


def test_catalan():
    alt = mpmath.nsum(lambda n: (-1) ** n / (2 * n + 1) ** 2, [0, mpmath.inf])
    got = dirichlet_L(4, 1, 2)
    assert abs(got.value - float(alt)) < 1e-10
    assert abs(got.value - float(mpmath.catalan)) < 1e-14


@pytest.mark.parametrize("q,chi", [(4, 1), (5, 1), (5, 2), (7, 3), (12, 2), (60, 5)])
def test_methods_agree_at_3(q, chi):
    h = dirichlet_L(q, chi, 3).value
    d = dirichlet_L(q, chi, 3, method="dirichlet-series").value
    assert abs(h - d) < 1e-10
    e = dirichlet_L(q, chi, 3, method="euler-product")
    assert abs(h - e.value) < 1e-6 and abs(h - e.value) <= e.error + 1e-14
    assert abs(h - mp_L(q, chi, 3)) < 1e-12


@pytest.mark.parametrize("s", [0.5 + 14j, 0.3 + 2j, 2 - 40j, 0.75])
def test_hurwitz_route_against_mpmath(s):
    for q, chi in [(4, 1), (5, 1), (8, 2)]:
        assert abs(dirichlet_L(q, chi, s).value - mp_L(q, chi, s)) < 1e-11


def test_conjugate_symmetry():
    for chi in range(1, 4):
        conj = [c for c in range(4) if np.allclose(dirichlet_character(5, c), np.conj(dirichlet_character(5, chi)))][0]
        a = dirichlet_L(5, chi, 0.5 + 3j).value
        b = dirichlet_L(5, conj, 0.5 - 3j).value
        assert abs(a - b.conjugate()) < 1e-12


def test_L_rejects():
    with pytest.raises(ValueError):
        dirichlet_L(4, 0, 2)
    with pytest.raises(ValueError):
        dirichlet_L(2, 1, 2)
    with pytest.raises(ValueError):
        dirichlet_L(4, 1, 0.05)
    with pytest.raises(ValueError):
        dirichlet_L(4, 1, 0.5 + 200j)
    with pytest.raises(ValueError):
        dirichlet_L(4, 7, 2)


def test_find_zero_chi4():
    z = find_zero(4, 1, (5, 7))
    assert z.found
    assert abs(z.s0 - complex(0.5, 6.020948904697597)) < 1e-9
    assert abs(mp_L(4, 1, z.s0)) < 1e-9
    assert abs(z.winding - 1) < 0.1
    assert abs(z.window_winding - 1) < 0.1


def test_find_zero_chi3():
    z = find_zero(3, 1, (7, 9))
    assert z.found and abs(z.s0.imag - 8.039737155681) < 1e-8


def test_no_zero_in_window():
    z = find_zero(4, 1, (0.1, 0.2))
    assert not z.found
    assert abs(z.window_winding) < 0.1
    with pytest.raises(ValueError):
        find_zero(4, 1, (1, 9))


def test_winding_counts_two_zeros():
    # chi_4 zeros near t = 6.02 and 10.24
    w = winding_number(4, 1, complex(0.25, 5), complex(0.75, 11), 800)
    assert abs(w - 2) < 0.1


@pytest.mark.parametrize("cls,expected", [(0, -0.5), (1, 0.5)])
def test_contour_residue_at_zero(cls, expected):
    z = find_zero(4, 1, (5, 7))
    res = contour_residue_H(make_scenario("cyclo:4"), cls, z.s0)
    assert res.ords == (1,)
    assert abs(res.prediction - expected) < 1e-15
    assert res.error < 1e-3


def test_contour_residue_zero_free_point():
    res = contour_residue_H(make_scenario("cyclo:5"), "all", complex(0.5, 3.3))
    assert res.ords == (0, 0, 0)
    assert abs(res.contour) < 1e-9 and res.prediction == 0


def test_contour_collision():
    with pytest.raises(ZeroCollisionError):
        contour_residue_H(make_scenario("cyclo:4"), 0, complex(0.5, 6.020948904697597 + 0.07))


def test_contour_rejects():
    with pytest.raises(ValueError):
        contour_residue_H(make_scenario("cubic:2"), 0, 0.5 + 6j)
    with pytest.raises(ValueError):
        contour_residue_H(make_scenario("cyclo:4"), 0, 0.5 + 6j, r=0.5)


def test_class_weights_exact():
    sc = make_scenario("cubic:2")
    assert class_weights(sc, "all").tolist() == [0.0, 0.0, 0.0]
    np.testing.assert_allclose(class_weights(sc, 1), [-0.5, 0.5, -0.5])


def naive_F(sc, cls, s, X):
    g = sc.group
    total = 0j
    for p in range(2, X + 1):
        if any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            continue
        c = sc.classify(p)
        if c is None:
            continue
        for d in range(g.num_classes):
            w = (1.0 if d == cls else 0.0) - g.class_sizes[cls] / g.n
            if d == c:
                total += w * math.log(p) * cmath.exp(-s * math.log(p))
    return total


@pytest.mark.parametrize("spec", ["cyclo:7", "cubic:2", "biquad:-1,2"])
def test_truncated_F(spec):
    sc = make_scenario(spec)
    for cls in range(sc.group.num_classes):
        got = truncated_F(sc, cls, 0.7 + 2j, 2000)
        assert abs(got - naive_F(sc, cls, 0.7 + 2j, 2000)) < 1e-12
        assert abs(truncated_F(sc, cls, 0.7 - 2j, 2000) - got.conjugate()) < 1e-13
    assert truncated_F(sc, "all", 1.5, 10**4) == 0
    assert truncated_F(sc, 0, 1.5, 1) == 0


def test_neg_logderiv_against_direct_sum():
    sc = make_scenario("cyclo:5")
    s = 1.2 + 1j
    for chi in range(1, 4):
        vals = dirichlet_character(5, chi)
        direct = 0j
        for p in range(2, 3001):
            if p == 5 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
                continue
            pk = p
            while pk <= 3000:
                direct += vals[pk % 5] * math.log(p) * pk ** (-s)
                pk *= p
        assert abs(truncated_neg_logderiv(sc, chi, s, 3000) - direct) < 1e-12


def test_truncated_H_naive():
    sc = make_scenario("cubic:2")
    g = sc.group
    s, X = 1.3, 5000
    for cls in range(g.num_classes):
        dens = g.class_sizes[cls] / g.n
        total = 0.0
        for p in range(5, X + 1):
            if any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
                continue
            rep = g.classes[sc.classify(p)].representative
            x, pk = rep, p
            while pk <= X:
                total += ((1.0 if g.class_of[x] == cls else 0.0) - dens) * math.log(p) * pk ** (-s)
                x, pk = g.mul[x][rep], pk * p
        assert abs(truncated_H(sc, cls, s, X) - total) < 1e-12


@pytest.mark.parametrize("spec", ["cyclo:3", "cyclo:4", "cyclo:5", "cyclo:8", "cyclo:12", "quad:5",
                                  "quad:-23", "biquad:-1,2", "cubic:2", "cubic:3"])
def test_tail_identity(spec):
    sc = make_scenario(spec)
    rows = tail_check(sc, 1.5, 10**5)
    assert len(rows) == sc.group.num_classes
    assert max(r.error for r in rows) < 1e-12
    assert any(abs(r.tail) > 1e-3 for r in rows)


def test_tail_tamper_raises(monkeypatch):
    import cheblab.lfun as lf
    real = lf.prime_power_tail
    monkeypatch.setattr(lf, "prime_power_tail", lambda *a: real(*a) + 1e-9)
    with pytest.raises(VerificationError):
        tail_check(make_scenario("cyclo:3"), 1.5, 10**4)


def test_prime_power_tail_small():
    sc = make_scenario("cyclo:3")
    # prime powers up to 8 are 4 and 8; Frobenius at 2 has order 2
    t = prime_power_tail(sc, 0, 2.0, 8)
    expected = (1 - 0.5) * math.log(2) * 4 ** -2 + (0 - 0.5) * math.log(2) * 8 ** -2
    assert abs(t - expected) < 1e-16
