"""Finite groups as explicit multiplication tables, with exact character tables.

Supported groups (string descriptors in parentheses):

- cyclic groups C_n, n <= 60 (``"C7"``)
- finite abelian products of cyclic groups (``"C2xC4"``)
- unit groups (Z/q)^* used by the cyclotomic scenarios (``"U15"``)
- dihedral groups D_n of order 2n, 3 <= n <= 12 (``"D6"``)
- S3, S4, A4 and the quaternion group Q8

Class functions are stored one value per conjugacy class; every sum over
group elements is written as a sum over classes weighted by class size.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Sequence

import numpy as np

from .exactalg import Cyclotomic, cyc_dot, reduce_mod_phi

__all__ = [
    "ConjugacyClass",
    "GroupTable",
    "ClassFunction",
    "CharacterTable",
    "build_group",
    "character_table",
    "inner_product",
    "restrict_to_cyclic",
    "cyclic_group",
    "abelian_group",
    "units_group",
    "dihedral_group",
    "symmetric_group",
    "alternating_group",
    "quaternion_group",
    "GROUP_DESCRIPTORS",
    "BUILTIN_GROUPS",
    "orthogonality_catalogue",
    "orthogonality_report",
]

MAX_CYCLIC = 60
MAX_ABELIAN = 64
MAX_DIHEDRAL = 12
MAX_UNITS_MODULUS = 100
ASSOC_CHECK_LIMIT = 24

GROUP_DESCRIPTORS = ("C<n>", "C<n1>xC<n2>[x...]", "U<q>", "D<n>", "S3", "S4", "A4", "Q8")

#: The catalogue exercised by the exact identity checks.
BUILTIN_GROUPS = (
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12",
    "C2xC2", "C2xC4", "C3xC3", "C2xC6", "C2xC2xC2",
    "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12",
    "S3", "S4", "A4", "Q8",
)


class GroupError(ValueError):
    """Unsupported or malformed group descriptor."""


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: int
    size: int
    elements: tuple[int, ...]
    name: str
    element_order: int


class GroupTable:
    """A finite group given by its multiplication table on indices 0..n-1.

    ``kind`` and ``data`` record how the group was built; the character table
    construction dispatches on them.
    """

    def __init__(
        self,
        name: str,
        elements: Sequence[Hashable],
        op: Callable[[Hashable, Hashable], Hashable],
        labels: Sequence[str],
        kind: str,
        data=None,
    ):
        self.name = name
        self.kind = kind
        self.data = data
        self.elements = tuple(elements)
        self.labels = tuple(labels)
        n = len(self.elements)
        self.n = n
        index = {e: i for i, e in enumerate(self.elements)}
        if len(index) != n:
            raise GroupError(f"{name}: duplicate elements")
        try:
            self.mul = tuple(
                tuple(index[op(a, b)] for b in self.elements) for a in self.elements
            )
        except KeyError as exc:
            raise GroupError(f"{name}: not closed under the operation") from exc

        ids = [e for e in range(n) if all(self.mul[e][g] == g == self.mul[g][e] for g in range(n))]
        if len(ids) != 1:
            raise GroupError(f"{name}: no unique identity")
        self.identity = ids[0]
        inv = []
        for a in range(n):
            row = self.mul[a]
            b = row.index(self.identity)
            if self.mul[b][a] != self.identity:
                raise GroupError(f"{name}: element {a} has no two-sided inverse")
            inv.append(b)
        self.inv = tuple(inv)
        if n <= ASSOC_CHECK_LIMIT:
            self._check_associative()

        self.element_orders = tuple(self._order(g) for g in range(n))
        self.exponent = math.lcm(*self.element_orders)
        self.abelian = all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a))
        self._build_classes()
        self._build_power_classes()
        self._build_cyclic_subgroups()

    def _check_associative(self):
        mul = self.mul
        n = self.n
        for a in range(n):
            for b in range(n):
                ab = mul[a][b]
                rb = mul[b]
                for c in range(n):
                    if mul[ab][c] != mul[a][rb[c]]:
                        raise GroupError(f"{self.name}: multiplication is not associative")

    def _order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        k %= self.element_orders[g]
        x = self.identity
        for _ in range(k):
            x = self.mul[x][g]
        return x

    def _build_classes(self):
        n = self.n
        seen = [False] * n
        raw = []
        for g in range(n):
            if seen[g]:
                continue
            cls = sorted({self.mul[self.mul[h][g]][self.inv[h]] for h in range(n)})
            for x in cls:
                seen[x] = True
            raw.append(cls)
        raw.sort(key=lambda c: (self.element_orders[c[0]], c[0]))
        classes = []
        class_of = [0] * n
        for i, cls in enumerate(raw):
            rep = cls[0]
            classes.append(ConjugacyClass(i, rep, len(cls), tuple(cls), self.labels[rep],
                                          self.element_orders[rep]))
            for x in cls:
                class_of[x] = i
        self.classes = tuple(classes)
        self.class_of = tuple(class_of)

    def _build_power_classes(self):
        table = []
        for c in self.classes:
            g = c.representative
            row = []
            x = self.identity
            for _ in range(self.exponent):
                row.append(self.class_of[x])
                x = self.mul[x][g]
            table.append(tuple(row))
        self.power_class = tuple(table)

    def _build_cyclic_subgroups(self):
        # <g_C> for every class representative, deduplicated; every cyclic
        # subgroup (maximal ones included) is conjugate to one of these
        seen = {}
        for c in self.classes:
            g = c.representative
            sub = frozenset(self.power(g, k) for k in range(self.element_orders[g]))
            if sub not in seen:
                seen[sub] = g
        maximal = [s for s in seen if not any(s < t for t in seen)]
        subs = sorted(((seen[s], len(s), s in maximal) for s in seen),
                      key=lambda t: (not t[2], -t[1], t[0]))
        self.cyclic_subgroups = tuple((g, d) for g, d, _ in subs)
        self.maximal_cyclic = tuple(seen[s] for s in maximal)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.classes)

    def index_of(self, element: Hashable) -> int:
        return self.elements.index(element)

    def class_index(self, key) -> int:
        """Resolve a class by name, or by position when no name matches."""
        names = self.class_names
        if str(key) in names:
            return names.index(str(key))
        try:
            i = int(key)
        except (TypeError, ValueError):
            raise KeyError(f"no conjugacy class {key!r} in {self.name}; classes: {names}") from None
        if not 0 <= i < len(names):
            raise KeyError(f"class index {i} out of range for {self.name}")
        return i

    @cached_property
    def character_table(self) -> "CharacterTable":
        return _build_character_table(self)

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.n}, classes={self.num_classes})"


# ---------------------------------------------------------------------------
# class functions


class ClassFunction:
    """A Q(zeta_m)-valued class function, one value per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: GroupTable, values: Sequence[Cyclotomic]):
        if len(values) != group.num_classes:
            raise ValueError("class function length does not match the number of classes")
        m = group.exponent
        vals = []
        for v in values:
            if not isinstance(v, Cyclotomic):
                v = Cyclotomic.rational(m, v)
            elif v.order != m:
                v = v.lift(m)
            vals.append(v)
        self.group = group
        self.values = tuple(vals)

    @classmethod
    def zero(cls, group: GroupTable) -> "ClassFunction":
        return cls(group, [0] * group.num_classes)

    @classmethod
    def from_element_function(cls, group: GroupTable, f) -> "ClassFunction":
        return cls(group, [f(group.elements[c.representative]) for c in group.classes])

    def _check(self, other: "ClassFunction"):
        if other.group is not self.group:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction"):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction"):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return ClassFunction(self.group, [a * k for a in self.values])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    __hash__ = None

    def __getitem__(self, c: int) -> Cyclotomic:
        return self.values[c]

    def __len__(self):
        return len(self.values)

    def at_element(self, g: int) -> Cyclotomic:
        return self.values[self.group.class_of[g]]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[self.group.class_of[self.group.identity]]

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conj() for a in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def to_complex(self) -> np.ndarray:
        return np.array([complex(v) for v in self.values])

    def __repr__(self):
        return f"ClassFunction({self.group.name}, {list(self.values)})"


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """<a, b> = (1/|G|) sum_C |C| a(C) conj(b(C)), exactly."""
    if a.group is not b.group:
        raise ValueError("inner product of class functions on different groups")
    g = a.group
    return cyc_dot(a.values, b.values, g.class_sizes) / g.n


def restrict_to_cyclic(f: ClassFunction, generator: int) -> tuple[int, ...]:
    """Multiplicities of the d linear characters of H = <generator> in f|_H.

    The j-th linear character sends generator -> zeta_d^j.  Raises
    ValueError if a multiplicity is not a rational integer.
    """
    g = f.group
    d = g.element_orders[generator]
    m = g.exponent
    step = m // d
    powers = [g.power(generator, i) for i in range(d)]
    vals = [f.at_element(x) for x in powers]
    canon = _cyclic_dft_integral(vals, m, step)
    if canon is not None:
        if canon[:, 1:].any():
            raise ValueError(f"non-rational multiplicity restricting to <{g.labels[generator]}>")
        if (canon[:, 0] % d).any():
            raise ValueError(f"non-integral multiplicity restricting to <{g.labels[generator]}>")
        return tuple(int(x) for x in canon[:, 0] // d)
    totals = []
    for j in range(d):
        lam = [Cyclotomic.zeta(m, i * j * step) for i in range(d)]
        totals.append(cyc_dot(vals, lam))
    mults = []
    for total in totals:
        if not total.is_rational():
            raise ValueError(f"non-rational multiplicity {total!r} / {d} restricting to <{g.labels[generator]}>")
        q = Fraction(total.to_rational()) / d
        if q.denominator != 1:
            raise ValueError(f"non-integral multiplicity {q} restricting to <{g.labels[generator]}>")
        mults.append(int(q))
    return tuple(mults)


def _cyclic_dft_integral(vals: Sequence[Cyclotomic], m: int, step: int):
    """sum_i vals[i] * zeta_m^(-i j step) for every j, in exact int64 arithmetic.

    Row j of the result holds the canonical coefficients of the j-th sum.
    Returns None when a coefficient is not an integer or the int64 range
    could be exceeded; the caller then uses generic cyclotomic arithmetic.
    """
    d = len(vals)
    dense = np.zeros((d, m), dtype=np.int64)
    for i, v in enumerate(vals):
        for e, c in v._terms.items():
            if type(c) is not int or abs(c) >= 2**40:
                return None
            dense[i, e] = c
    red = _reduction_matrix(m)
    bound = int(np.abs(dense).sum()) * int(np.abs(red).max()) * m
    if bound >= 2**62:
        return None
    rows, src = _dft_index(d, m, step)
    acc = dense[rows, src].sum(axis=1)
    return acc @ red


@lru_cache(maxsize=None)
def _dft_index(d: int, m: int, step: int):
    # acc[j, e'] = sum_i dense[i, e] with e' = e - i j step  (mod m)
    i = np.arange(d)
    e = np.arange(m)
    j = np.arange(d)
    src = (e[None, None, :] + (i[None, :, None] * j[:, None, None] * step)) % m
    return i[None, :, None], src


# ---------------------------------------------------------------------------
# character tables


class CharacterTable:
    """Irreducible characters of a group, trivial character first.

    Both Schur orthogonality relations and sum chi(1)^2 = |G| are checked
    exactly at construction; a failure raises ArithmeticError.
    """

    def __init__(self, group: GroupTable, characters: Sequence[ClassFunction],
                 names: Sequence[str] | None = None, verify: bool = True):
        self.group = group
        self.irreducibles = tuple(characters)
        self.names = tuple(names) if names else tuple(f"chi{i}" for i in range(len(characters)))
        degs = []
        for chi in self.irreducibles:
            d = chi.degree.to_rational()
            degs.append(int(d))
        self.degrees = tuple(degs)
        if verify:
            self.verify()

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.irreducibles[i]

    @property
    def trivial(self) -> ClassFunction:
        return self.irreducibles[0]

    @property
    def nontrivial(self) -> tuple[ClassFunction, ...]:
        return self.irreducibles[1:]

    def verify(self):
        ok, msg = self.row_orthogonality()
        if not ok:
            raise ArithmeticError(f"{self.group.name}: {msg}")
        ok, msg = self.column_orthogonality()
        if not ok:
            raise ArithmeticError(f"{self.group.name}: {msg}")
        if sum(d * d for d in self.degrees) != self.group.n:
            raise ArithmeticError(f"{self.group.name}: sum of squared degrees != |G|")
        if any(not v == 1 for v in self.trivial.values):
            raise ArithmeticError(f"{self.group.name}: first character is not trivial")

    def _monomial_exponents(self) -> np.ndarray | None:
        # exponent matrix when every value is a bare root of unity zeta_m^e
        rows = []
        for chi in self.irreducibles:
            row = []
            for v in chi.values:
                t = v._terms
                if len(t) != 1:
                    return None
                ((e, c),) = t.items()
                if c != 1:
                    return None
                row.append(e)
            rows.append(row)
        return np.array(rows, dtype=np.int64)

    def _monomial_gram(self, exps: np.ndarray, weights: np.ndarray) -> np.ndarray:
        """Exact sum_c w_c zeta^(E[i,c] - E[j,c]) for all (i, j), reduced mod Phi_m.

        Integer arithmetic in Z[x]/(x^m - 1) followed by the exact reduction
        matrix; entries stay far below the int64 range (checked).
        """
        m = self.group.exponent
        k = exps.shape[0]
        red = _reduction_matrix(m)
        bound = int(np.abs(red).sum(axis=0).max()) * int(weights.sum()) * m
        if bound >= 2**62:
            raise OverflowError("monomial Gram matrix exceeds the int64 range")
        diff = (exps[:, None, :] - exps[None, :, :]) % m
        flat = (np.arange(k * k).reshape(k, k, 1) * m + diff).ravel()
        w = np.broadcast_to(weights, diff.shape).ravel()
        counts = np.bincount(flat, weights=w, minlength=k * k * m).astype(np.int64)
        counts = counts.reshape(k, k, m)
        return counts @ red

    def _monomial_check(self, exps, weights, diag) -> tuple[bool, str]:
        gram = self._monomial_gram(exps, weights)
        expect = np.zeros_like(gram)
        idx = np.arange(gram.shape[0])
        expect[idx, idx, 0] = diag
        bad = np.argwhere((gram != expect).any(axis=2))
        if len(bad):
            i, j = bad[0]
            return False, f"orthogonality fails at ({i}, {j}): {gram[i, j].tolist()}"
        return True, ""

    def row_orthogonality(self, vectorized: bool = True) -> tuple[bool, str]:
        g = self.group
        if len(self.irreducibles) != g.num_classes:
            return False, "number of irreducibles differs from number of classes"
        exps = self._monomial_exponents() if vectorized else None
        if exps is not None:
            return self._monomial_check(exps, np.array(g.class_sizes, dtype=np.int64), g.n)
        w = g.class_sizes
        for i, a in enumerate(self.irreducibles):
            for j in range(i, len(self.irreducibles)):
                s = cyc_dot(a.values, self.irreducibles[j].values, w)
                if not s == (g.n if i == j else 0):
                    return False, f"<{self.names[i]}, {self.names[j]}> = {s!r} / |G|"
        return True, ""

    def column_orthogonality(self, vectorized: bool = True) -> tuple[bool, str]:
        g = self.group
        exps = self._monomial_exponents() if vectorized else None
        if exps is not None:
            sizes = np.array(g.class_sizes, dtype=np.int64)
            ok, msg = self._monomial_check(exps.T.copy(), np.ones(len(exps), dtype=np.int64),
                                           g.n // sizes)
            return ok, msg
        cols = list(zip(*(chi.values for chi in self.irreducibles)))
        for c in range(g.num_classes):
            for d in range(c, g.num_classes):
                s = cyc_dot(cols[c], cols[d])
                expect = g.n // g.classes[c].size if c == d else 0
                if not s == expect:
                    return False, f"column sum ({c}, {d}) = {s!r}, expected {expect}"
        return True, ""

    def regular_character(self) -> ClassFunction:
        g = self.group
        return ClassFunction(g, [g.n if c.representative == g.identity else 0 for c in g.classes])

    def combination(self, coeffs: Sequence[int], include_trivial: bool = True) -> ClassFunction:
        """sum_i coeffs[i] * chi_i over all characters, or over the nontrivial ones."""
        chars = self.irreducibles if include_trivial else self.nontrivial
        if len(coeffs) != len(chars):
            raise ValueError("coefficient vector has the wrong length")
        g = self.group
        vals = []
        for c in range(g.num_classes):
            xs = [chi.values[c] for chi in chars]
            vals.append(cyc_dot(xs, [Cyclotomic.rational(g.exponent, 1)] * len(xs), coeffs))
        return ClassFunction(g, vals)

    @cached_property
    def complex_values(self) -> np.ndarray:
        """Numeric table, shape (characters, classes)."""
        return np.array([chi.to_complex() for chi in self.irreducibles])

    def __repr__(self):
        return f"CharacterTable({self.group.name}, degrees={self.degrees})"


@lru_cache(maxsize=None)
def _reduction_matrix(m: int) -> np.ndarray:
    # row e is zeta_m^e in the canonical basis
    return np.array([reduce_mod_phi(m, [0] * e + [1]) for e in range(m)], dtype=np.int64)


def character_table(g: GroupTable) -> CharacterTable:
    return g.character_table


def _build_character_table(g: GroupTable) -> CharacterTable:
    if g.kind == "abelian":
        return _abelian_table(g)
    builder = {
        "dihedral": _dihedral_table,
        "S3": _s3_table,
        "S4": _s4_table,
        "A4": _a4_table,
        "Q8": _q8_table,
    }.get(g.kind)
    if builder is None:
        raise GroupError(f"no character table available for {g.name}")
    return builder(g)


def _abelian_table(g: GroupTable) -> CharacterTable:
    # All homomorphisms G -> mu_m, found by extending along a generating set.
    m = g.exponent
    n = g.n
    order = sorted(range(n), key=lambda x: (-g.element_orders[x], x))
    gens = []
    span = {g.identity}
    for x in order:
        if x not in span:
            gens.append(x)
            new = set()
            for h in span:
                y = h
                for _ in range(g.element_orders[x]):
                    new.add(y)
                    y = g.mul[y][x]
            span = new
    partial = [{g.identity: 0}]
    for x in gens:
        d = g.element_orders[x]
        extended = []
        for chi in partial:
            for a in range(0, m, m // d):
                new = dict(chi)
                ok = True
                for h, vh in chi.items():
                    y = h
                    v = vh
                    for _ in range(d):
                        old = new.get(y)
                        if old is None:
                            new[y] = v
                        elif old != v:
                            ok = False
                            break
                        y = g.mul[y][x]
                        v = (v + a) % m
                    if not ok:
                        break
                if ok:
                    extended.append(new)
        partial = extended
    exps = sorted(tuple(chi[x] for x in range(n)) for chi in partial)
    if len(exps) != n:
        raise ArithmeticError(f"{g.name}: found {len(exps)} linear characters, expected {n}")
    chars = [ClassFunction(g, [Cyclotomic.zeta(m, e[c.representative]) for c in g.classes])
             for e in exps]
    return CharacterTable(g, chars, [f"chi{i}" for i in range(n)])


def _dihedral_table(g: GroupTable) -> CharacterTable:
    n = g.data
    m = g.exponent
    step = m // n
    one = Cyclotomic.rational(m, 1)
    chars, names = [], []
    eps_r = (1, -1) if n % 2 == 0 else (1,)
    for er in eps_r:
        for es in (1, -1):
            chars.append(ClassFunction.from_element_function(
                g, lambda e, er=er, es=es: one * (er ** e[0] * es ** e[1])))
            names.append(f"lin({er:+d},{es:+d})")
    for h in range(1, (n + 1) // 2):
        def psi(e, h=h):
            a, b = e
            if b:
                return Cyclotomic.rational(m, 0)
            return Cyclotomic.zeta(m, h * a * step) + Cyclotomic.zeta(m, -h * a * step)
        chars.append(ClassFunction.from_element_function(g, psi))
        names.append(f"psi{h}")
    return CharacterTable(g, chars, names)


def _cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = set()
    lengths = []
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def _perm_sign(p) -> int:
    return (-1) ** sum(k - 1 for k in _cycle_type(p))


def _s3_table(g: GroupTable) -> CharacterTable:
    std = {(1, 1, 1): 2, (2, 1): 0, (3,): -1}
    chars = [
        ClassFunction.from_element_function(g, lambda p: 1),
        ClassFunction.from_element_function(g, _perm_sign),
        ClassFunction.from_element_function(g, lambda p: std[_cycle_type(p)]),
    ]
    return CharacterTable(g, chars, ["trivial", "sign", "standard"])


def _s4_table(g: GroupTable) -> CharacterTable:
    # columns: e, (12), (12)(34), (123), (1234)
    rows = {
        "trivial": (1, 1, 1, 1, 1),
        "sign": (1, -1, 1, 1, -1),
        "two": (2, 0, 2, -1, 0),
        "standard": (3, 1, -1, 0, -1),
        "standard*sign": (3, -1, -1, 0, 1),
    }
    col = {(1, 1, 1, 1): 0, (2, 1, 1): 1, (2, 2): 2, (3, 1): 3, (4,): 4}
    chars = [ClassFunction.from_element_function(g, lambda p, r=r: r[col[_cycle_type(p)]])
             for r in rows.values()]
    return CharacterTable(g, chars, list(rows))


def _a4_table(g: GroupTable) -> CharacterTable:
    m = g.exponent  # 6
    klein = {p for p in g.elements if _cycle_type(p) in ((1, 1, 1, 1), (2, 2))}
    t_inv = (2, 0, 1, 3)

    def coset(p):
        # p = v t^j with v in the Klein subgroup
        x = p
        for j in range(3):
            if x in klein:
                return j
            x = _compose(x, t_inv)
        raise ArithmeticError("element outside A4")

    chars = [ClassFunction.from_element_function(
        g, lambda p, k=k: Cyclotomic.zeta(m, 2 * k * coset(p))) for k in range(3)]
    three = {(1, 1, 1, 1): 3, (2, 2): -1, (3, 1): 0}
    chars.append(ClassFunction.from_element_function(g, lambda p: three[_cycle_type(p)]))
    return CharacterTable(g, chars, ["trivial", "omega", "omega^2", "three"])


def _q8_table(g: GroupTable) -> CharacterTable:
    def linear(axis):
        return lambda q: 1 if q[1] in ("1", axis) else -1

    chars = [ClassFunction.from_element_function(g, lambda q: 1)]
    chars += [ClassFunction.from_element_function(g, linear(a)) for a in "ijk"]
    chars.append(ClassFunction.from_element_function(
        g, lambda q: 0 if q[1] != "1" else 2 * q[0]))
    return CharacterTable(g, chars, ["trivial", "ker<i>", "ker<j>", "ker<k>", "two"])


# ---------------------------------------------------------------------------
# constructors


def _compose(p, q):
    # (p o q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(q)))


def _cycle_label(p) -> str:
    seen = set()
    cycles = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


@lru_cache(maxsize=None)
def cyclic_group(n: int) -> GroupTable:
    if not 1 <= n <= MAX_CYCLIC:
        raise GroupError(f"cyclic group order must be in [1, {MAX_CYCLIC}]")
    labels = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return GroupTable(f"C{n}", range(n), lambda a, b: (a + b) % n, labels, "abelian", (n,))


@lru_cache(maxsize=None)
def abelian_group(factors: tuple[int, ...]) -> GroupTable:
    factors = tuple(factors)
    if not factors or any(f < 1 for f in factors):
        raise GroupError("abelian group needs positive cyclic factors")
    if math.prod(factors) > MAX_ABELIAN:
        raise GroupError(f"abelian group order capped at {MAX_ABELIAN}")
    if len(factors) == 1:
        return cyclic_group(factors[0])
    elements = list(itertools.product(*(range(f) for f in factors)))
    op = lambda a, b: tuple((x + y) % f for x, y, f in zip(a, b, factors))
    labels = ["(" + ",".join(map(str, e)) + ")" for e in elements]
    name = "x".join(f"C{f}" for f in factors)
    return GroupTable(name, elements, op, labels, "abelian", factors)


@lru_cache(maxsize=None)
def units_group(q: int) -> GroupTable:
    """(Z/q)^* with elements the residues 1 <= a < q coprime to q."""
    if not 1 <= q <= MAX_UNITS_MODULUS:
        raise GroupError(f"unit group modulus must be in [1, {MAX_UNITS_MODULUS}]")
    if q == 1:
        elements = [0]
    else:
        elements = [a for a in range(1, q) if math.gcd(a, q) == 1]
    return GroupTable(f"U{q}", elements, lambda a, b: (a * b) % q,
                      [str(a) for a in elements], "abelian", q)


@lru_cache(maxsize=None)
def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n; elements (a, b) stand for r^a s^b."""
    if not 3 <= n <= MAX_DIHEDRAL:
        raise GroupError(f"dihedral D_n needs 3 <= n <= {MAX_DIHEDRAL} (use C2 or C2xC2 below 3)")
    elements = [(a, b) for b in range(2) for a in range(n)]

    def op(x, y):
        a1, b1 = x
        a2, b2 = y
        return ((a1 + (-a2 if b1 else a2)) % n, (b1 + b2) % 2)

    def label(e):
        a, b = e
        r = "" if a == 0 else ("r" if a == 1 else f"r^{a}")
        s = "s" if b else ""
        return (r + s) or "1"

    return GroupTable(f"D{n}", elements, op, [label(e) for e in elements], "dihedral", n)


@lru_cache(maxsize=None)
def symmetric_group(k: int) -> GroupTable:
    if k not in (3, 4):
        raise GroupError("only S3 and S4 are built in")
    elements = sorted(itertools.permutations(range(k)))
    return GroupTable(f"S{k}", elements, _compose, [_cycle_label(p) for p in elements], f"S{k}")


@lru_cache(maxsize=None)
def alternating_group(k: int = 4) -> GroupTable:
    if k != 4:
        raise GroupError("only A4 is built in")
    elements = [p for p in sorted(itertools.permutations(range(4))) if _perm_sign(p) == 1]
    return GroupTable("A4", elements, _compose, [_cycle_label(p) for p in elements], "A4")


_QMUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


@lru_cache(maxsize=None)
def quaternion_group() -> GroupTable:
    elements = [(s, u) for u in "1ijk" for s in (1, -1)]

    def op(x, y):
        s, u = _QMUL[x[1], y[1]]
        return (x[0] * y[0] * s, u)

    labels = [("" if s == 1 else "-") + u for s, u in elements]
    return GroupTable("Q8", elements, op, labels, "Q8")


_DESCRIPTOR = re.compile(r"^(?:C(\d+)(?:XC(\d+))*|U(\d+)|D(\d+)|S3|S4|A4|Q8)$")


def build_group(spec) -> GroupTable:
    """Build a group from a descriptor string such as "C7", "C2xC4", "D6", "S4".

    Tuples ``("cyclic", n)``, ``("abelian", (n1, n2, ...))``,
    ``("dihedral", n)`` and ``("units", q)`` are accepted as well.
    """
    if isinstance(spec, tuple):
        kind, arg = spec
        ctor = {"cyclic": cyclic_group, "abelian": lambda f: abelian_group(tuple(f)),
                "dihedral": dihedral_group, "units": units_group}.get(kind)
        if ctor is None:
            raise GroupError(f"unsupported group descriptor {spec!r}")
        return ctor(arg)
    s = str(spec).strip().upper()
    if not _DESCRIPTOR.match(s):
        raise GroupError(
            f"unsupported group descriptor {spec!r}; expected one of {', '.join(GROUP_DESCRIPTORS)}"
        )
    if s == "S3":
        return symmetric_group(3)
    if s == "S4":
        return symmetric_group(4)
    if s == "A4":
        return alternating_group(4)
    if s == "Q8":
        return quaternion_group()
    if s[0] == "U":
        return units_group(int(s[1:]))
    if s[0] == "D":
        return dihedral_group(int(s[1:]))
    factors = tuple(int(f) for f in s[1:].split("XC"))
    if len(factors) == 1:
        return cyclic_group(factors[0])
    return abelian_group(factors)


def orthogonality_catalogue() -> tuple[str, ...]:
    """Every built-in table: C1..C60, the abelian products, D3..D12, S3, S4, A4, Q8."""
    cyclic = tuple(f"C{n}" for n in range(1, MAX_CYCLIC + 1))
    rest = tuple(d for d in BUILTIN_GROUPS if d not in cyclic)
    return cyclic + rest


def orthogonality_report(group: GroupTable) -> dict:
    """Exact row and column orthogonality plus the degree sum, as a JSON-ready dict."""
    t = group.character_table
    rows_ok, rows_msg = t.row_orthogonality()
    cols_ok, cols_msg = t.column_orthogonality()
    deg_ok = sum(d * d for d in t.degrees) == group.n
    failures = [m for ok, m in ((rows_ok, rows_msg), (cols_ok, cols_msg),
                                (deg_ok, "sum of squared degrees differs from |G|")) if not ok]
    return {"group": group.name, "order": group.n, "classes": group.num_classes,
            "rows": rows_ok, "columns": cols_ok, "degree_sum": deg_ok,
            "failures": len(failures), "failure_cases": failures}
