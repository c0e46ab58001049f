"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element of Q(zeta_m) is stored as a sparse map ``exponent -> coefficient``
over Q[x]/(x^m - 1).  That representative is not unique, so equality, hashing
and the public :attr:`Cyclotomic.coeffs` go through the canonical reduction
modulo the cyclotomic polynomial Phi_m, which is computed lazily and cached.
Working modulo x^m - 1 keeps products of roots of unity a single term, which
is what makes the character-table identities cheap to check exactly.

Coefficients are Python ``int`` or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import mpmath

__all__ = [
    "BigRational",
    "Cyclotomic",
    "cyclotomic_poly",
    "euler_phi",
    "cyc_add",
    "cyc_mul",
    "cyc_conj",
    "cyc_dot",
    "complex_embed",
    "reduce_mod_phi",
]

BigRational = Fraction
Rational = Union[int, Fraction]

MAX_ORDER = 1000


def _norm(c: Rational) -> Rational:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def euler_phi(m: int) -> int:
    result = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; coefficient lists are low -> high
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j, dj in enumerate(den):
                num[i - dn + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Return Phi_m as an integer coefficient tuple, lowest degree first.

    Computed by dividing x^m - 1 by Phi_d for every proper divisor d of m.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_ORDER:
        raise ValueError(f"cyclotomic order must be an integer in [1, {MAX_ORDER}], got {m!r}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi_sparse(m: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    # (deg Phi_m, nonzero lower coefficients of the monic Phi_m)
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    return deg, tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def reduce_mod_phi(m: int, vec: Sequence[Rational]) -> list[Rational]:
    """Reduce a polynomial in zeta_m (coefficient list, any length) modulo Phi_m."""
    deg, low = _phi_sparse(m)
    v = list(vec)
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for j, pj in low:
                v[base + j] -= c * pj
    v = v[:deg] + [0] * (deg - len(v))
    return v


@lru_cache(maxsize=None)
def _unit_roots(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * k / m) for k in range(m))


class Cyclotomic:
    """Immutable element of Q(zeta_m).

    Build one with :meth:`zeta`, :meth:`rational` or from canonical
    coefficients ``Cyclotomic(m, coeffs)``; ``coeffs`` may also be longer than
    phi(m), in which case it is read as a polynomial in zeta_m and reduced.
    """

    __slots__ = ("order", "_terms", "_canon")

    def __init__(self, order: int, coeffs: Sequence[Rational] = ()):
        if order < 1 or order > MAX_ORDER:
            raise ValueError(f"cyclotomic order out of range: {order}")
        terms: dict[int, Rational] = {}
        for k, c in enumerate(coeffs):
            if c:
                e = k % order
                terms[e] = terms.get(e, 0) + c
        self.order = order
        self._terms = {e: _norm(c) for e, c in terms.items() if c}
        self._canon = None

    @classmethod
    def _from_terms(cls, order: int, terms: Mapping[int, Rational]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.order = order
        obj._terms = {e: _norm(c) for e, c in terms.items() if c}
        obj._canon = None
        return obj

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order ** k."""
        return cls._from_terms(order, {k % order: 1})

    @classmethod
    def rational(cls, order: int, value: Rational) -> "Cyclotomic":
        return cls._from_terms(order, {0: value})

    # -- canonical form -------------------------------------------------

    @property
    def coeffs(self) -> tuple[Rational, ...]:
        """Canonical coefficients modulo Phi_m, length phi(m)."""
        if self._canon is None:
            m = self.order
            if self._terms:
                dense = [0] * (max(self._terms) + 1)
                for e, c in self._terms.items():
                    dense[e] = c
            else:
                dense = []
            self._canon = tuple(_norm(c) for c in reduce_mod_phi(m, dense))
        return self._canon

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Rational:
        """Return the value as int/Fraction; raise ValueError if irrational."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self == self.conj()

    # -- ring operations -----------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}; lift first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Cyclotomic._from_terms(self.order, terms)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._from_terms(self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._from_terms(self.order, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.order
        terms: dict[int, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1 + e2) % m
                terms[e] = terms.get(e, 0) + c1 * c2
        return Cyclotomic._from_terms(m, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._from_terms(
                self.order, {e: Fraction(c) / other for e, c in self._terms.items()}
            )
        return NotImplemented

    def mul_zeta(self, k: int) -> "Cyclotomic":
        """Multiply by zeta_m ** k (an exponent shift)."""
        m = self.order
        return Cyclotomic._from_terms(m, {(e + k) % m: c for e, c in self._terms.items()})

    def conj(self) -> "Cyclotomic":
        """Complex conjugate: x -> x^(m-1)."""
        m = self.order
        return Cyclotomic._from_terms(m, {(-e) % m: c for e, c in self._terms.items()})

    def galois(self, a: int) -> "Cyclotomic":
        """Image under zeta_m -> zeta_m ** a, for a coprime to m."""
        m = self.order
        if math.gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit modulo {m}")
        return Cyclotomic._from_terms(m, {(e * a) % m: c for e, c in self._terms.items()})

    def lift(self, new_order: int) -> "Cyclotomic":
        """Re-express in Q(zeta_new_order) via zeta_m = zeta_{km}^k."""
        if new_order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {new_order}")
        k = new_order // self.order
        return Cyclotomic._from_terms(new_order, {e * k: c for e, c in self._terms.items()})

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Certified sign of a real element under zeta_m -> exp(2 pi i / m).

        Rational values are compared exactly.  Otherwise the scaled value
        D*x is an algebraic integer, so |N(D*x)| >= 1 bounds |x| away from
        zero by the product of its other conjugates; the value is evaluated
        at a precision well beyond that bound.
        """
        if self.is_rational():
            v = self.coeffs[0]
            return (v > 0) - (v < 0)
        if not self.is_real():
            raise ValueError("sign of a non-real cyclotomic number")
        m = self.order
        coeffs = self.coeffs
        # double evaluation with a generous rounding bound settles most cases
        approx = complex(self).real
        scale = sum(abs(float(c)) for c in self._terms.values())
        if abs(approx) > 1e-12 * (1.0 + scale):
            return 1 if approx > 0 else -1
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        units = [a for a in range(1, m) if math.gcd(a, m) == 1]
        dps = 40
        while True:
            with mpmath.workdps(dps):
                def embed(a):
                    z = mpmath.expjpi(mpmath.mpf(2 * a) / m)
                    return mpmath.fsum(c * z**k for k, c in enumerate(ints) if c)

                value = embed(1)
                others = mpmath.fprod(abs(embed(a)) for a in units if a != 1)
                bound = 1 / others if others else mpmath.mpf(1)
                err = mpmath.mpf(10) ** (-(dps - 5)) * (1 + sum(abs(c) for c in ints))
                if bound > 10 * err:
                    return 1 if value.real > 0 else -1
            dps *= 2

    # -- embedding / display ------------------------------------------

    def __complex__(self):
        roots = _unit_roots(self.order)
        return complex(math.fsum(float(c) * roots[e].real for e, c in self._terms.items()),
                       math.fsum(float(c) * roots[e].imag for e, c in self._terms.items()))

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.order}, {self.coeffs[0]})"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*z^{k}" if k else f"{c}")
        return f"Cyclotomic({self.order}, {' + '.join(parts)})"

    def __str__(self):
        # rational values print bare; otherwise a polynomial in z = zeta_m
        if self.is_rational():
            return str(self.coeffs[0])
        out = ""
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def cyc_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def cyc_conj(a: Cyclotomic) -> Cyclotomic:
    return a.conj()


def complex_embed(a: Cyclotomic) -> complex:
    """Evaluate at zeta_m = exp(2 pi i / m)."""
    return complex(a)


def cyc_dot(
    xs: Sequence[Cyclotomic],
    ys: Sequence[Cyclotomic],
    weights: Iterable[Rational] | None = None,
    conjugate: bool = True,
) -> Cyclotomic:
    """Sum of w_i * x_i * conj(y_i) accumulated in one pass.

    Same result as chaining ``+`` and ``*``, without the intermediate objects.
    """
    if len(xs) != len(ys):
        raise ValueError("length mismatch")
    if not xs:
        raise ValueError("empty dot product")
    m = xs[0].order
    if weights is None:
        weights = [1] * len(xs)
    acc: dict[int, Rational] = {}
    sgn = -1 if conjugate else 1
    for x, y, w in zip(xs, ys, weights):
        if x.order != m or y.order != m:
            raise ValueError("cyclotomic order mismatch in dot product")
        if not w:
            continue
        yt = y._terms
        for e1, c1 in x._terms.items():
            c1w = c1 * w
            for e2, c2 in yt.items():
                e = (e1 + sgn * e2) % m
                acc[e] = acc.get(e, 0) + c1w * c2
    return Cyclotomic._from_terms(m, acc)
