import itertools
from fractions import Fraction

import numpy as np
import pytest

from cheblab.exactalg import Cyclotomic
from cheblab.groups import (
    BUILTIN_GROUPS,
    ClassFunction,
    GroupError,
    build_group,
    cyclic_group,
    inner_product,
    orthogonality_catalogue,
    restrict_to_cyclic,
    units_group,
)

EXTRA = ("C60", "C2xC2xC3", "U15", "U24", "D12")


def compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def perm_classes(n):
    elems = list(itertools.permutations(range(n)))
    inv = {p: tuple(sorted(range(n), key=lambda i: p[i])) for p in elems}
    seen, classes = set(), []
    for x in elems:
        if x in seen:
            continue
        cl = {compose(compose(g, x), inv[g]) for g in elems}
        seen |= cl
        classes.append(frozenset(cl))
    return classes


def test_trivial_group():
    g = build_group("C1")
    assert g.n == 1 and g.num_classes == 1


@pytest.mark.parametrize("k", [3, 4])
def test_symmetric_classes_match_brute_force(k):
    g = build_group(f"S{k}")
    ours = {frozenset(g.elements[i] for i in c.elements) for c in g.classes}
    assert ours == set(perm_classes(k))


def test_s3_class_sizes():
    assert build_group("S3").class_sizes == (1, 3, 2)


def test_q8_classes_from_matrices():
    one = np.eye(2, dtype=complex)
    i = np.array([[1j, 0], [0, -1j]])
    j = np.array([[0, 1], [-1, 0]], dtype=complex)
    k = i @ j
    mats = [s * m for s in (1, -1) for m in (one, i, j, k)]
    key = lambda m: tuple(np.round(m, 9).ravel())
    sizes = []
    seen = set()
    for x in mats:
        if key(x) in seen:
            continue
        cl = {key(g @ x @ np.linalg.inv(g)) for g in mats}
        seen |= cl
        sizes.append(len(cl))
    assert sorted(sizes) == sorted(build_group("Q8").class_sizes) == [1, 1, 2, 2, 2]
    assert build_group("Q8").class_sizes == (1, 1, 2, 2, 2)


@pytest.mark.parametrize("desc", BUILTIN_GROUPS + EXTRA)
def test_group_invariants(desc):
    g = build_group(desc)
    e = g.identity
    for a in range(g.n):
        assert g.mul[e][a] == a == g.mul[a][e]
        assert g.mul[a][g.inv[a]] == e
    assert sum(g.class_sizes) == g.n
    assert all(g.n % s == 0 for s in g.class_sizes)
    assert g.classes[g.class_of[e]].size == 1
    for c in g.classes:
        assert g.power_class[c.index][1 % g.exponent] == c.index
        x = e
        for k in range(g.exponent):
            assert g.class_of[x] == g.power_class[c.index][k]
            x = g.mul[x][c.representative]
    # every element generates a subgroup conjugate to a stored cyclic subgroup
    stored = {d for _, d in g.cyclic_subgroups}
    assert set(g.element_orders) <= stored


def test_power_class_on_nonabelian_example():
    g = build_group("S4")
    # a 4-cycle squared is a double transposition
    four = next(c for c in g.classes if c.element_order == 4)
    sq = g.classes[g.power_class[four.index][2]]
    assert sq.element_order == 2 and sq.size == 3


def test_character_table_examples():
    t = build_group("C2").character_table
    rows = [[v.to_rational() for v in chi.values] for chi in t.irreducibles]
    assert rows == [[1, 1], [1, -1]]
    s4 = build_group("S4").character_table
    assert sorted(s4.degrees) == [1, 1, 2, 3, 3]
    assert all(v.is_rational() for chi in s4.irreducibles for v in chi.values)
    a4 = build_group("A4").character_table
    assert sorted(a4.degrees) == [1, 1, 1, 3]
    assert any(not v.is_rational() for chi in a4.irreducibles for v in chi.values)
    assert a4.irreducibles[0] == a4.trivial


@pytest.mark.parametrize("desc", orthogonality_catalogue() + ("U15", "U24", "U60"))
def test_exact_orthogonality(desc):
    t = build_group(desc).character_table
    assert t.row_orthogonality()[0]
    assert t.column_orthogonality()[0]
    assert sum(d * d for d in t.degrees) == t.group.n


@pytest.mark.parametrize("desc", ("C12", "C2xC4", "D5", "A4", "Q8", "S4", "U21"))
def test_generic_and_vectorized_orthogonality_agree(desc):
    t = build_group(desc).character_table
    assert t.row_orthogonality(vectorized=False) == t.row_orthogonality(vectorized=True) == (True, "")
    assert t.column_orthogonality(vectorized=False) == t.column_orthogonality(vectorized=True) == (True, "")


def test_broken_table_is_detected():
    g = build_group("S3")
    t = g.character_table
    chis = list(t.irreducibles)
    chis[2] = chis[2] + chis[0]
    from cheblab.groups import CharacterTable

    with pytest.raises(Exception):
        CharacterTable(g, chis, t.names)


@pytest.mark.parametrize("desc", BUILTIN_GROUPS)
def test_values_bounded_by_degree(desc):
    t = build_group(desc).character_table
    vals = t.complex_values
    for i, d in enumerate(t.degrees):
        assert np.all(np.abs(vals[i]) <= d + 1e-10)


def test_inner_product_examples():
    g = build_group("S3")
    t = g.character_table
    assert inner_product(t.trivial, t.trivial) == 1
    for a, b in itertools.combinations(t.irreducibles, 2):
        assert inner_product(a, b) == 0
    # regular character from its definition on elements
    one = g.elements[g.identity]
    reg = ClassFunction.from_element_function(g, lambda x: g.n if x == one else 0)
    assert reg == t.regular_character() == t.combination(t.degrees)
    for chi, d in zip(t.irreducibles, t.degrees):
        assert inner_product(reg, chi) == d


def test_inner_product_group_mismatch():
    with pytest.raises(ValueError):
        inner_product(build_group("C3").character_table.trivial, build_group("S3").character_table.trivial)


def test_restriction_examples():
    g = build_group("S3")
    t = g.character_table
    three = next(c.representative for c in g.classes if c.element_order == 3)
    assert restrict_to_cyclic(t.trivial, three) == (1, 0, 0)
    std = t.irreducibles[t.degrees.index(2)]
    assert restrict_to_cyclic(std, three) == (0, 1, 1)
    c4 = cyclic_group(4)
    gen = next(i for i in range(4) if c4.element_orders[i] == 4)
    assert restrict_to_cyclic(c4.character_table.regular_character(), gen) == (1, 1, 1, 1)


def test_restriction_rejects_non_characters():
    g = build_group("C4")
    half = ClassFunction(g, [Cyclotomic.rational(4, Fraction(1, 2))] * 4)
    gen = next(i for i in range(4) if g.element_orders[i] == 4)
    with pytest.raises(ValueError):
        restrict_to_cyclic(half, gen)


@pytest.mark.parametrize("desc", ("S4", "A4", "Q8", "D6", "C2xC6", "U20"))
def test_restriction_dimension_count(desc):
    g = build_group(desc)
    t = g.character_table
    theta = t.combination([(3 * i + 1) % 5 - 1 for i in range(len(t))])
    for gen, d in g.cyclic_subgroups:
        mults = restrict_to_cyclic(theta, gen)
        assert len(mults) == d
        assert sum(mults) == theta.degree.to_rational()


@pytest.mark.parametrize("bad", ["X9", "C61", "D13", "S5", "", "C2xD4"])
def test_unsupported_descriptors(bad):
    with pytest.raises(GroupError):
        build_group(bad)


def test_descriptor_forms():
    assert build_group("c2xc4").n == 8
    assert build_group(("cyclic", 7)).n == 7
    assert build_group(("dihedral", 6)).n == 12
    assert build_group("U15") is units_group(15)


def test_class_index_resolution():
    g = build_group("U5")
    assert g.class_names[g.class_index("4")] == "4"
    assert g.class_index(0) == 0
    with pytest.raises(KeyError):
        g.class_index("nope")
