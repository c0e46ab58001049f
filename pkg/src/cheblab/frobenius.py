"""Frobenius classes of rational primes in explicit Galois extensions of Q.

A :class:`Scenario` bundles a Galois group, its character table, the finite
set of ramified primes and a rule sending every unramified prime p to the
conjugacy class of Frob_p.  Four families are available:

==============  =====================  ====================================
spec string     Galois group           Frobenius rule
==============  =====================  ====================================
``cyclo:q``     (Z/q)^*                p mod q
``quad:d``      C2                     Kronecker symbol (d/p)
``biquad:a,b``  C2 x C2                two Kronecker symbols
``cubic:a``     S3                     factor pattern of x^3 - a mod p
==============  =====================  ====================================

Polynomials over GF(p) are coefficient lists, lowest degree first, with no
trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .errors import ClassificationError
from .groups import CharacterTable, GroupTable, abelian_group, cyclic_group, symmetric_group, units_group

__all__ = [
    "Scenario",
    "RamifiedPrimeError",
    "make_scenario",
    "factor_pattern",
    "factor_patterns",
    "discriminant",
    "kronecker_symbol",
    "SCENARIO_FORMS",
]

SCENARIO_FORMS = ("cyclo:<q> (3 <= q <= 60)", "quad:<d> (fundamental discriminant)",
                  "biquad:<a>,<b>", "cubic:<a> (cube-free, |a| >= 2)")

FactorPattern = tuple  # ascending degrees of the irreducible factors


class RamifiedPrimeError(ValueError):
    """The prime divides the discriminant (or leading coefficient) of f."""


# ---------------------------------------------------------------------------
# GF(p)[x]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(a: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in a])


def _monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def _mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _divmod([c % p for c in prod], f, p)[1]


def _powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, p)
    return result


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p) if a else a


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _derivative(a: list[int], p: int) -> list[int]:
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def factor_pattern(f: Sequence[int], p: int) -> FactorPattern:
    """Degrees of the irreducible factors of f modulo p, ascending.

    Distinct-degree factorization: with h = x^(p^d) mod f, the product of
    the degree-d factors of what is left of f is gcd(f, h - x).

    >>> factor_pattern([-2, 0, 0, 1], 5)
    (1, 2)
    """
    if len(f) < 2 or f[-1] == 0:
        raise ValueError("factor_pattern needs a polynomial of degree >= 1")
    fp = _reduce(f, p)
    if len(fp) != len(f):
        raise RamifiedPrimeError(f"p={p} divides the leading coefficient of f")
    fp = _monic(fp, p)
    if len(_gcd(fp, _derivative(fp, p), p)) > 1:
        raise RamifiedPrimeError(f"f is not squarefree modulo p={p}")
    return _ddf_from(fp, _powmod([0, 1], p, fp, p), p)


def _ddf_from(fp: list[int], h: list[int], p: int) -> FactorPattern:
    """Distinct-degree factorization of monic squarefree fp, given h = x^p mod fp."""
    x = [0, 1]
    degrees: list[int] = []
    rest = fp
    d = 1
    while True:
        g = _gcd(rest, _sub(h, x, p), p)
        k = len(g) - 1
        if k:
            degrees += [d] * (k // d)
            rest = _divmod(rest, g, p)[0]
            h = _divmod(h, rest, p)[1]
        if len(rest) - 1 < 2 * (d + 1):
            break
        d += 1
        h = _powmod(h, p, rest, p)
    if len(rest) > 1:
        degrees.append(len(rest) - 1)
    return tuple(sorted(degrees))


def discriminant(f: Sequence[int]) -> int:
    """Discriminant of an integer polynomial (lowest degree first), exactly."""
    f = [int(c) for c in f]
    n = len(f) - 1
    if n < 1 or f[-1] == 0:
        raise ValueError("discriminant needs a polynomial of degree >= 1")
    if n == 1:
        return 1
    df = [i * c for i, c in enumerate(f)][1:]
    a, b = f[::-1], df[::-1]  # highest degree first
    size = 2 * n - 1
    rows = [[0] * i + a + [0] * (size - len(a) - i) for i in range(n - 1)]
    rows += [[0] * i + b + [0] * (size - len(b) - i) for i in range(n)]
    mat = [[Fraction(v) for v in r] for r in rows]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, size):
            if mat[r][col]:
                k = mat[r][col] / mat[col][col]
                mat[r] = [x - k * y for x, y in zip(mat[r], mat[col])]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * int(det) // f[-1]


def _x_to_p_mod_f(f: Sequence[int], primes: np.ndarray) -> np.ndarray:
    """x^p mod (f, p) for every prime at once, f monic; rows lowest degree first."""
    n = len(f) - 1
    P = primes.astype(np.int64)
    fc = np.array(f[:-1], dtype=np.int64)[None, :] % P[:, None]

    def mulmod(a, b):
        prod = np.zeros((len(P), 2 * n - 1), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                prod[:, i + j] = (prod[:, i + j] + a[:, i] * b[:, j] % P) % P
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[:, k]
            for j in range(n):
                prod[:, k - n + j] = (prod[:, k - n + j] - c * fc[:, j] % P) % P
        return prod[:, :n]

    result = np.zeros((len(P), n), dtype=np.int64)
    result[:, 0] = 1
    base = np.zeros((len(P), n), dtype=np.int64)
    if n == 1:
        base[:, 0] = (-fc[:, 0]) % P
    else:
        base[:, 1] = 1
    e = P.copy()
    while np.any(e):
        odd = (e & 1).astype(bool)
        if np.any(odd):
            result[odd] = mulmod(result, base)[odd]
        e >>= 1
        if np.any(e):
            base = mulmod(base, base)
    return result


def factor_patterns(f: Sequence[int], primes) -> list[Optional[FactorPattern]]:
    """factor_pattern over many primes; None where p divides disc(f) or lead(f).

    The costly step, x^p mod (f, p), runs vectorized over all primes when f
    is monic and every p < 3e9 (so products fit in int64); the remaining gcd
    steps run per prime.
    """
    primes = np.asarray(primes, dtype=np.int64)
    f = [int(c) for c in f]
    if f[-1] != 1 or len(primes) == 0 or int(primes.max()) >= 3 * 10**9:
        out = []
        for p in primes.tolist():
            try:
                out.append(factor_pattern(f, p))
            except RamifiedPrimeError:
                out.append(None)
        return out
    disc = discriminant(f)
    hs = _x_to_p_mod_f(f, primes)
    out = []
    for p, h in zip(primes.tolist(), hs.tolist()):
        if disc % p == 0:
            out.append(None)
        else:
            out.append(_ddf_from(_reduce(f, p), _trim(h), p))
    return out


# ---------------------------------------------------------------------------
# Kronecker symbol


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a/n), by the binary reciprocity loop."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -k
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # now n is odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


# ---------------------------------------------------------------------------
# scenarios


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _squarefree_part(a: int) -> int:
    sign = -1 if a < 0 else 1
    n = abs(a)
    s = 1
    for p in _prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            s *= p
    return sign * s


def _fundamental_discriminant(a: int) -> int:
    s = _squarefree_part(a)
    return s if s % 4 == 1 else 4 * s


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree_part(d) == d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree_part(m) == m
    return False


@dataclass(frozen=True, eq=False)
class Scenario:
    """An explicit Galois extension L/Q with a computable Frobenius map.

    ``classify(p)`` returns the class index of Frob_p, or ``None`` for a
    ramified prime; it never returns a class for a ramified prime.
    """

    name: str
    group: GroupTable
    ramified: frozenset
    _rule: Callable[[int], int] = field(repr=False)
    polynomial: Optional[tuple[int, ...]] = None
    legal_patterns: Optional[Mapping[tuple, int]] = field(default=None, repr=False)
    labels: Optional[tuple[str, ...]] = None
    _vector_rule: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    @property
    def table(self) -> CharacterTable:
        return self.group.character_table

    @property
    def class_names(self) -> tuple[str, ...]:
        return self.labels or self.group.class_names

    def classify(self, p: int) -> Optional[int]:
        if p in self.ramified:
            return None
        return self._rule(p)

    def classify_many(self, primes: np.ndarray) -> np.ndarray:
        """Class index per prime, -1 marking ramified primes."""
        primes = np.asarray(primes, dtype=np.int64)
        if self._vector_rule is not None:
            out = self._vector_rule(primes)
        else:
            out = np.fromiter((self._rule(int(p)) if int(p) not in self.ramified else -1
                               for p in primes), dtype=np.int64, count=len(primes))
        if self.ramified and len(primes):
            out[np.isin(primes, list(self.ramified))] = -1
        return out

    def class_index(self, key) -> int:
        if self.labels and str(key) in self.labels:
            return self.labels.index(str(key))
        return self.group.class_index(key)


def _cyclotomic_scenario(q: int) -> Scenario:
    if not 3 <= q <= 60:
        raise ValueError(f"cyclotomic scenario needs 3 <= q <= 60, got {q}")
    g = units_group(q)
    lookup = np.full(q, -1, dtype=np.int64)
    for idx, a in enumerate(g.elements):
        lookup[a] = g.class_of[idx]

    def rule(p):
        c = int(lookup[p % q])
        if c < 0:
            raise ClassificationError(p, f"residue {p % q} is not a unit mod {q}")
        return c

    from .exactalg import cyclotomic_poly

    return Scenario(f"cyclo:{q}", g, frozenset(_prime_factors(q)), rule,
                    polynomial=cyclotomic_poly(q),
                    _vector_rule=lambda ps: lookup[ps % q])


def _quadratic_scenario(d: int) -> Scenario:
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    g = cyclic_group(2)
    if d % 4 == 1:
        poly = ((1 - d) // 4, -1, 1)
    else:
        poly = (-(d // 4), 0, 1)

    def rule(p):
        k = kronecker_symbol(d, p)
        if k == 0:
            raise ClassificationError(p, "Kronecker symbol vanishes at an unramified prime")
        return 0 if k == 1 else 1

    return Scenario(f"quad:{d}", g, frozenset(_prime_factors(d)), rule, polynomial=poly,
                    labels=("split", "inert"))


def _biquadratic_scenario(a: int, b: int) -> Scenario:
    da, db, dab = (_fundamental_discriminant(x) for x in (a, b, a * b))
    if 1 in (_squarefree_part(a), _squarefree_part(b), _squarefree_part(a * b)):
        raise ValueError(f"Q(sqrt {a}, sqrt {b}) is not a biquadratic field")
    g = abelian_group((2, 2))
    index = {e: g.class_of[i] for i, e in enumerate(g.elements)}

    def rule(p):
        ka, kb = kronecker_symbol(da, p), kronecker_symbol(db, p)
        if 0 in (ka, kb):
            raise ClassificationError(p, "Kronecker symbol vanishes at an unramified prime")
        return index[(0 if ka == 1 else 1, 0 if kb == 1 else 1)]

    labels = tuple("".join("+" if x == 0 else "-" for x in g.elements[c.representative])
                   for c in g.classes)
    ram = frozenset(_prime_factors(da) + _prime_factors(db) + _prime_factors(dab))
    return Scenario(f"biquad:{a},{b}", g, ram, rule, labels=labels)


def _pure_cubic_scenario(a: int) -> Scenario:
    if abs(a) < 2 or any(a % (p**3) == 0 for p in _prime_factors(a)):
        raise ValueError(f"pure cubic scenario needs a cube-free integer with |a| >= 2, got {a}")
    g = symmetric_group(3)
    by_type = {}
    for c in g.classes:
        by_type[c.element_order] = c.index
    legal = {(1, 1, 1): by_type[1], (1, 2): by_type[2], (3,): by_type[3]}
    poly = (-a, 0, 0, 1)

    def rule(p):
        pat = factor_pattern(poly, p)
        try:
            return legal[pat]
        except KeyError:
            raise ClassificationError(p, f"illegal factor pattern {pat} for x^3 - {a}") from None

    ramified = frozenset(_prime_factors(3 * a))

    def vector_rule(primes):
        out = np.empty(len(primes), dtype=np.int64)
        for i, (p, pat) in enumerate(zip(primes.tolist(), factor_patterns(poly, primes))):
            if p in ramified:
                out[i] = -1
            elif pat not in legal:
                raise ClassificationError(p, f"illegal factor pattern {pat} for x^3 - {a}")
            else:
                out[i] = legal[pat]
        return out

    return Scenario(f"cubic:{a}", g, ramified, rule, polynomial=poly,
                    legal_patterns=legal, _vector_rule=vector_rule)


_SPEC = re.compile(r"^\s*(cyclo|quad|biquad|cubic)\s*:\s*(-?\d+)\s*(?:,\s*(-?\d+))?\s*$")


def make_scenario(spec) -> Scenario:
    """Build a scenario from "cyclo:7", "quad:-4", "biquad:2,3" or "cubic:2".

    Tuples ``("cyclotomic", q)``, ``("quadratic", d)``, ``("biquadratic", (a, b))``
    and ``("pure_cubic", a)`` work too.
    """
    if isinstance(spec, tuple):
        kind, arg = spec
        kind = {"cyclotomic": "cyclo", "quadratic": "quad", "biquadratic": "biquad",
                "pure_cubic": "cubic"}.get(kind, kind)
        spec = f"{kind}:{','.join(map(str, arg)) if isinstance(arg, (tuple, list)) else arg}"
    m = _SPEC.match(str(spec))
    if not m:
        raise ValueError(f"unknown scenario {spec!r}; expected one of {', '.join(SCENARIO_FORMS)}")
    return _make_scenario(m.group(1), int(m.group(2)), m.group(3))


@lru_cache(maxsize=None)
def _make_scenario(kind: str, x: int, y: Optional[str]) -> Scenario:
    if kind == "biquad":
        if y is None:
            raise ValueError("biquad needs two integers, e.g. biquad:2,3")
        return _biquadratic_scenario(x, int(y))
    if y is not None:
        raise ValueError(f"{kind} takes a single integer")
    return {"cyclo": _cyclotomic_scenario, "quad": _quadratic_scenario,
            "cubic": _pure_cubic_scenario}[kind](x)
