import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cheblab.errors import VerificationError
from cheblab.exactalg import Cyclotomic
from cheblab.groups import BUILTIN_GROUPS, build_group
from cheblab.heilbronn import (
    OrdVector,
    chebotarev_degenerate,
    check_cyclic_nonneg,
    euler_column_identity,
    euler_columns,
    eq4_trials,
    foote_murty_trials,
    heilbronn_theta,
    residues_from_ords,
    verify_eq4_equality,
    verify_foote_murty,
    zeta_quotient_order,
)


def table(desc):
    return build_group(desc).character_table


def test_zero_ords_give_zero_residues():
    t = table("S4")
    res = residues_from_ords(t, OrdVector(t.group, (0,) * 4))
    assert all(v.is_zero() for v in res.values)
    assert verify_eq4_equality(t, OrdVector(t.group, (0,) * 4)) == (0, 0)


def test_c2_residues_by_hand():
    t = table("C2")
    res = residues_from_ords(t, OrdVector(t.group, (1,)))
    assert [v.to_rational() for v in res.values] == [Fraction(-1, 2), Fraction(1, 2)]
    assert verify_eq4_equality(t, OrdVector(t.group, (1,))) == (1, 1)


def test_s3_sign_residue():
    t = table("S3")
    assert t.names[1] == "sign"
    res = residues_from_ords(t, OrdVector(t.group, (1, 0)))
    assert res[t.group.class_of[t.group.identity]].to_rational() == Fraction(-1, 6)
    assert res[0].is_rational()


def brute_force_norm(t, ords):
    # (1/|G|) sum over every element of |sum_chi ord_chi conj(chi(g))|^2
    g = t.group
    total = Cyclotomic.rational(g.exponent, 0)
    for x in range(g.n):
        c = g.class_of[x]
        s = Cyclotomic.rational(g.exponent, 0)
        for o, chi in zip(ords, t.nontrivial):
            s = s + chi.values[c].conj() * o
        total = total + s * s.conj()
    return Fraction(total.to_rational()) / g.n


@pytest.mark.parametrize("desc", ["S4", "Q8", "A4", "D5", "C2xC4"])
def test_residue_norm_against_elementwise_oracle(desc):
    t = table(desc)
    rng = random.Random(7)
    for _ in range(25):
        ords = tuple(rng.randint(-5, 5) for _ in range(len(t) - 1))
        lhs, rhs = verify_eq4_equality(t, OrdVector(t.group, ords))
        assert lhs == rhs == brute_force_norm(t, ords)


def test_ordvector_length_checked():
    with pytest.raises(ValueError):
        OrdVector(build_group("S3"), (1, 2, 3))


def test_theta_examples():
    t = table("S3")
    g = t.group
    reg = heilbronn_theta(t, OrdVector(g, tuple(t.degrees[1:]), ord0=1))
    assert reg == t.regular_character()
    assert reg.degree == g.n
    assert heilbronn_theta(t, OrdVector(g, (0, 0), ord0=1)) == t.trivial
    theta = heilbronn_theta(t, OrdVector(g, (2, 1), ord0=0))
    assert theta.degree == 4
    # at s0 = 1 the trivial term is dropped
    assert heilbronn_theta(t, OrdVector(g, (2, 1), ord0=5), at_one=True) == theta


def test_cyclic_nonneg_examples():
    t = table("C2")
    assert check_cyclic_nonneg(t.trivial)
    bad = t.trivial - t.irreducibles[1]
    chk = check_cyclic_nonneg(bad)
    assert not chk
    assert chk.multiplicities == (1, -1)
    assert check_cyclic_nonneg(table("Q8").regular_character())


@pytest.mark.parametrize("desc", ["S4", "D6", "Q8", "A4"])
def test_genuine_characters_pass(desc):
    t = table(desc)
    for chi in t.irreducibles:
        assert check_cyclic_nonneg(chi)


def test_foote_murty_examples():
    t = table("S3")
    rep = verify_foote_murty(t.trivial)
    assert rep.norm == rep.norm_bound == 1
    rep = verify_foote_murty(t.regular_character())
    assert (rep.norm, rep.norm_bound) == (6, 36)
    with pytest.raises(ValueError):
        verify_foote_murty(t.trivial - t.irreducibles[1])


def test_virtual_character_passing_cyclic_test():
    # -chi0 + sign + std restricts to (0, 1, 1) on <(1 2 3)> and (0, 2) on
    # <(2 3)>, so it passes without being a character
    t = table("S3")
    triv, sign, std = t.irreducibles
    theta = sign + std - triv
    assert check_cyclic_nonneg(theta)
    rep = verify_foote_murty(theta)
    assert (rep.theta_at_1, rep.norm, rep.norm_bound) == (2, 3, 4)
    g = t.group
    swap = next(c.index for c in g.classes if c.element_order == 2)
    assert rep.abs_sq[swap] == 4  # equality |theta(g)| = theta(1) is attained
    assert not check_cyclic_nonneg(std + std - triv - sign)


@st.composite
def genuine(draw):
    desc = draw(st.sampled_from(BUILTIN_GROUPS))
    t = table(desc)
    coeffs = draw(st.lists(st.integers(0, 4), min_size=len(t), max_size=len(t)))
    return t, coeffs


@settings(max_examples=80, deadline=None)
@given(genuine())
def test_foote_murty_property(tc):
    t, coeffs = tc
    theta = t.combination(coeffs)
    rep = verify_foote_murty(theta)
    assert rep.norm <= rep.norm_bound
    for v in rep.abs_sq:
        assert complex(v).real <= rep.norm_bound + 1e-9


def test_degenerate_case():
    t = table("S4")
    zero = t.combination([0] * len(t))
    assert chebotarev_degenerate(zero)
    assert not chebotarev_degenerate(t.trivial)
    assert not chebotarev_degenerate(t.trivial - t.irreducibles[1])


@pytest.mark.parametrize("desc", ["D4", "Q8", "C2xC2", "A4"])
def test_degenerate_exhaustive_small_box(desc):
    # every virtual character with coefficients in [-1, 1] that is nonnegative
    # on cyclic subgroups together with its negative must vanish
    import itertools

    t = table(desc)
    hits = 0
    for coeffs in itertools.product((-1, 0, 1), repeat=len(t)):
        theta = t.combination(coeffs)
        if chebotarev_degenerate(theta):
            hits += 1
            assert not any(coeffs)
    assert hits == 1


def test_euler_column_examples():
    t = table("S3")
    g = t.group
    ident = g.class_of[g.identity]
    three = next(c.index for c in g.classes if c.element_order == 3)
    assert euler_column_identity(t, ident, 5) == (6, 6)
    assert euler_column_identity(t, three, 1) == (0, 0)
    assert euler_column_identity(t, three, 3) == (6, 6)
    with pytest.raises(ValueError):
        euler_column_identity(t, three, 0)


@pytest.mark.parametrize("desc", ["S4", "Q8", "D6", "C12"])
def test_euler_columns_against_complex_oracle(desc):
    t = table(desc)
    g = t.group
    vals = t.complex_values
    for c in g.classes:
        x = g.identity
        for k in range(1, 13):
            x = g.mul[x][c.representative]
            s = sum(d * vals[i][g.class_of[x]] for i, d in enumerate(t.degrees))
            expect = g.n if x == g.identity else 0
            assert abs(s - expect) < 1e-9
            assert euler_column_identity(t, c.index, k) == (expect, expect)


@pytest.mark.parametrize("desc", ["S3", "S4", "Q8", "C5", "D4"])
def test_identity_residue_matches_zeta_quotient(desc):
    t = table(desc)
    g = t.group
    rng = random.Random(11)
    for _ in range(10):
        ords = OrdVector(g, tuple(rng.randint(-3, 3) for _ in range(len(t) - 1)))
        res1 = residues_from_ords(t, ords)[g.class_of[g.identity]]
        assert res1 * (-g.n) == zeta_quotient_order(t, ords)


def test_batch_drivers_small():
    for desc in ("S3", "Q8", "C2xC2"):
        g = build_group(desc)
        assert eq4_trials(g, 20, seed=3)["failures"] == 0
        fm = foote_murty_trials(g, 20, seed=3, virtual_samples=100)
        assert fm["failures"] == 0 and fm["degenerate_zero"] == 1
        assert euler_columns(g, 12)["failures"] == 0


def test_residue_norm_detects_tampering(monkeypatch):
    import cheblab.heilbronn as hb

    t = table("S3")
    real = hb._class_sums

    def skewed(tab, ords):
        out = real(tab, ords)
        out[0] = out[0] + 1
        return out

    monkeypatch.setattr(hb, "_class_sums", skewed)
    with pytest.raises(VerificationError):
        verify_eq4_equality(t, OrdVector(t.group, (1, 1)))
