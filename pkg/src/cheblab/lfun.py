"""Truncated prime sums F(s, C), H(s, C) and Dirichlet L-function numerics.

Truncations are taken over unramified primes p <= x_max:

    F(s, C) = sum_p ([Frob_p in C] - |C|/|G|) log p p^-s
    H(s, C) = (|C|/|G|) sum_{chi != 1} conj(chi(g_C)) sum_{p^k <= x_max} chi(Frob_p^k) log p p^-ks

so H - F is the k >= 2 part, which ``prime_power_tail`` computes directly.

Dirichlet L-functions use the Hurwitz decomposition
L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q) with Euler-Maclaurin for zeta(s, a).
Everything that feeds a contour integral is vectorized over arrays of s.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

import numpy as np

from .chebstats import classified_primes, sieve_primes
from .errors import VerificationError
from .frobenius import Scenario
from .groups import units_group
from .heilbronn import OrdVector, residues_from_ords

__all__ = [
    "ComplexPoint",
    "parse_complex",
    "class_weights",
    "truncated_F",
    "truncated_H",
    "truncated_neg_logderiv",
    "prime_power_tail",
    "tail_check",
    "hurwitz_zeta",
    "dirichlet_character",
    "dirichlet_L",
    "LEvaluation",
    "ZeroSearch",
    "find_zero",
    "winding_number",
    "ResidueResult",
    "ZeroCollisionError",
    "contour_residue_H",
]

ComplexPoint = complex

CENTRAL_STEP = 1e-6
CHECK_STEP = 1e-5
WINDING_SLACK = 0.1
ZERO_TOL = 1e-9
HURWITZ_TARGET = 1e-14

ClassSpec = Union[int, str, Iterable]


def parse_complex(text) -> complex:
    """Parse "0.5+6.02i", "2", "-1.5j" and the like."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    t = str(text).strip().replace(" ", "").replace("i", "j")
    if re.fullmatch(r"[+-]?j", t.replace(".", "")):
        raise ValueError(f"cannot parse complex number {text!r}")
    try:
        return complex(t)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def _check_point(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise ValueError(f"s must be finite, got {s}")
    return s


# ---------------------------------------------------------------------------
# truncated prime sums


def _one_class(scenario: Scenario, c) -> int:
    # integers are positions; strings are resolved by name first
    if isinstance(c, (int, np.integer)):
        if not 0 <= c < scenario.group.num_classes:
            raise KeyError(f"class index {c} out of range for {scenario.name}")
        return int(c)
    return scenario.class_index(c)


def _class_set(scenario: Scenario, cls: ClassSpec) -> list[int]:
    if isinstance(cls, str) and cls == "all":
        return list(range(scenario.group.num_classes))
    if isinstance(cls, (int, np.integer, str)):
        return [_one_class(scenario, cls)]
    out = sorted({_one_class(scenario, c) for c in cls})
    if not out:
        raise ValueError("empty class set")
    return out


def class_weights(scenario: Scenario, cls: ClassSpec) -> np.ndarray:
    """[D in S] - sum_{C in S} |C|/|G| for each class D, exact before rounding.

    For S the set of all classes every weight is exactly zero.
    """
    g = scenario.group
    chosen = _class_set(scenario, cls)
    dens = sum(Fraction(g.class_sizes[c], g.n) for c in chosen)
    return np.array([float((1 if d in chosen else 0) - dens) for d in range(g.num_classes)])


def _fsum_complex(z: np.ndarray) -> complex:
    return complex(math.fsum(z.real), math.fsum(z.imag))


def _log_primes(scenario: Scenario, x_max: int):
    primes, classes = classified_primes(scenario, int(x_max))
    keep = classes >= 0
    p = primes[keep]
    return p, classes[keep], np.log(p.astype(float))


def truncated_F(scenario: Scenario, cls: ClassSpec, s, x_max) -> complex:
    x_max = int(float(x_max))
    s = _check_point(s)
    if x_max < 2:
        return 0j
    p, c, logs = _log_primes(scenario, x_max)
    w = class_weights(scenario, cls)
    return _fsum_complex(w[c] * logs * np.exp(-s * logs))


@lru_cache(maxsize=8)
def _power_class_array(scenario: Scenario) -> np.ndarray:
    return np.array(scenario.group.power_class, dtype=np.int64)


def truncated_neg_logderiv(scenario: Scenario, chi: int, s, x_max) -> complex:
    """-L'/L(s, chi) truncated: sum over unramified p^k <= x_max of chi(Frob_p^k) log p p^-ks."""
    x_max = int(float(x_max))
    s = _check_point(s)
    if x_max < 2:
        return 0j
    p, c, logs = _log_primes(scenario, x_max)
    vals = scenario.table.complex_values[chi]
    pc = _power_class_array(scenario)
    e = pc.shape[1]
    parts = []
    k = 1
    while 2**k <= x_max:
        n = int(np.searchsorted(p, math.floor(x_max ** (1.0 / k)) + 1))
        while n > 0 and int(p[n - 1]) ** k > x_max:
            n -= 1
        while n < len(p) and int(p[n]) ** k <= x_max:
            n += 1
        ck = pc[c[:n], k % e]
        parts.append(vals[ck] * logs[:n] * np.exp(-k * s * logs[:n]))
        k += 1
    return _fsum_complex(np.concatenate(parts)) if parts else 0j


def truncated_H(scenario: Scenario, cls: ClassSpec, s, x_max) -> complex:
    g = scenario.group
    chosen = _class_set(scenario, cls)
    vals = scenario.table.complex_values
    sums = np.array([truncated_neg_logderiv(scenario, j, s, x_max) for j in range(1, len(vals))])
    total = 0j
    for c in chosen:
        total += g.class_sizes[c] / g.n * complex(np.sum(np.conj(vals[1:, c]) * sums))
    return total


def prime_power_tail(scenario: Scenario, cls: ClassSpec, s, x_max) -> complex:
    """sum over unramified p^k <= x_max, k >= 2, of ([Frob_p^k in C] - |C|/|G|) log p p^-ks.

    Powers of Frob_p are taken in the multiplication table, one prime at a
    time, independently of the character machinery.
    """
    x_max = int(float(x_max))
    s = _check_point(s)
    g = scenario.group
    chosen = set(_class_set(scenario, cls))
    dens = float(sum(Fraction(g.class_sizes[c], g.n) for c in chosen))
    re_terms, im_terms = [], []
    for p in sieve_primes(math.isqrt(max(x_max, 0))):
        p = int(p)
        c = scenario.classify(p)
        if c is None:
            continue
        rep = g.classes[c].representative
        x = rep
        pk = p
        k = 1
        while pk * p <= x_max:
            pk *= p
            k += 1
            x = g.mul[x][rep]
            coef = (1.0 if g.class_of[x] in chosen else 0.0) - dens
            t = coef * math.log(p) * cmath.exp(-s * k * math.log(p))
            re_terms.append(t.real)
            im_terms.append(t.imag)
    return complex(math.fsum(re_terms), math.fsum(im_terms))


@dataclass(frozen=True)
class TailRow:
    class_name: str
    h_minus_f: complex
    tail: complex

    @property
    def error(self) -> float:
        return abs(self.h_minus_f - self.tail)


def tail_check(scenario: Scenario, s=1.5, x_max=10**5, tol: float = 1e-12, strict: bool = True) -> list[TailRow]:
    """H - F against the independently summed prime-power tail, every class."""
    rows = []
    for c, name in enumerate(scenario.class_names):
        diff = truncated_H(scenario, c, s, x_max) - truncated_F(scenario, c, s, x_max)
        rows.append(TailRow(name, diff, prime_power_tail(scenario, c, s, x_max)))
    worst = max(r.error for r in rows)
    if strict and worst > tol:
        raise VerificationError(f"{scenario.name}: H - F differs from the prime-power tail by {worst:.3e}")
    return rows


# ---------------------------------------------------------------------------
# Hurwitz zeta

_B2K = (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66))
_EM_COEF = tuple(float(b / math.factorial(2 * (j + 1))) for j, b in enumerate(_B2K))
_M = len(_B2K)


def _hurwitz_em(s: np.ndarray, a: float, N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Euler-Maclaurin with N direct terms and Bernoulli terms through B10.

    Returns values, the remainder bound and a rounding estimate.
    """
    ln = np.log(np.arange(N, dtype=float) + a)
    head = np.empty(len(s), dtype=complex)
    absum = np.empty(len(s))
    rows = max(1, 2**22 // N)
    for i in range(0, len(s), rows):
        direct = np.exp(-np.outer(s[i : i + rows], ln))
        head[i : i + rows] = direct.sum(axis=1)
        absum[i : i + rows] = np.abs(direct).sum(axis=1)
    na = N + a
    lna = math.log(na)
    base = np.exp(-s * lna)  # (N+a)^-s
    val = head + na * base / (s - 1) + 0.5 * base
    poch = s.copy()  # s (s+1) ... (s+2j-2)
    power = base / na  # (N+a)^(-s-1)
    for j, coef in enumerate(_EM_COEF):
        val = val + coef * poch * power
        poch = poch * (s + 2 * j + 1) * (s + 2 * j + 2)
        power = power / (na * na)
    # remainder bound 4 |(s)_{2M}| / (2 pi)^{2M} (N+a)^{-sigma-2M+1} / (sigma+2M-1)
    poch2m = np.ones_like(s)
    for j in range(2 * _M):
        poch2m = poch2m * (s + j)
    sig = s.real
    rem = 4 * np.abs(poch2m) / (2 * math.pi) ** (2 * _M) * na ** (-sig - 2 * _M + 1) / (sig + 2 * _M - 1)
    rounding = 2 * np.finfo(float).eps * (absum + np.abs(val))
    return val, rem, rounding


def _hurwitz_array(s: np.ndarray, a: float, target: float = HURWITZ_TARGET):
    """Values and error estimates; N doubles until the remainder bound meets the target."""
    s = np.asarray(s, dtype=complex)
    if np.any(np.abs(s - 1) < 1e-15):
        raise ValueError("hurwitz_zeta has a pole at s = 1")
    N = int(math.ceil(2 * float(np.max(np.abs(s), initial=0.0)) + 20))
    for _ in range(8):
        val, rem, rounding = _hurwitz_em(s, a, N)
        if np.all(rem <= target * np.maximum(1.0, np.abs(val))):
            break
        N *= 2
    return val, rem + rounding


def hurwitz_zeta(s, a, with_error: bool = False):
    """zeta(s, a) = sum_{n >= 0} (n + a)^-s for 0 < a <= 1, s != 1.

    >>> abs(hurwitz_zeta(2, 1) - math.pi**2 / 6) < 1e-13
    True
    """
    s = _check_point(s)
    a = float(a)
    if not 0.0 < a <= 1.0:
        raise ValueError(f"a must lie in (0, 1], got {a}")
    if s == 1:
        raise ValueError("hurwitz_zeta has a pole at s = 1")
    if s.real + 2 * _M - 1 <= 0:
        raise ValueError(f"Re s too small for the Euler-Maclaurin bound: {s}")
    val, err = _hurwitz_array(np.array([s]), a)
    return (complex(val[0]), float(err[0])) if with_error else complex(val[0])


# ---------------------------------------------------------------------------
# Dirichlet L-functions


@lru_cache(maxsize=None)
def dirichlet_character(q: int, chi: int) -> np.ndarray:
    """Values chi(0), ..., chi(q-1); chi indexes the character table of (Z/q)^*."""
    g = units_group(q)
    table = g.character_table
    if not 0 <= chi < len(table):
        raise ValueError(f"character index {chi} out of range: (Z/{q})^* has {len(table)} characters")
    row = table.complex_values[chi]
    out = np.zeros(q, dtype=complex)
    for i, a in enumerate(g.elements):
        out[a % q] = row[g.class_of[i]]
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class LEvaluation:
    s: complex
    value: complex
    method: str
    error: float

    def to_dict(self) -> dict:
        return {"s": _cfmt(self.s), "value": _cfmt(self.value), "method": self.method,
                "error": float(f"{self.error:.15g}")}


def _cfmt(z: complex) -> dict:
    return {"re": float(f"{z.real:.15g}"), "im": float(f"{z.imag:.15g}")}


def _check_L_args(q: int, chi: int, s: complex, method: str):
    if q < 3:
        raise ValueError(f"modulus {q} has no non-principal character")
    if chi == 0:
        raise ValueError("the principal character is not supported (pole at s = 1)")
    dirichlet_character(q, chi)
    if method == "hurwitz" and not (0.1 <= s.real <= 10 and abs(s.imag) <= 100):
        raise ValueError(f"s = {s} outside 0.1 <= Re s <= 10, |Im s| <= 100")


def _L_hurwitz(q: int, chi: int, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vals = dirichlet_character(q, chi)
    total = np.zeros(len(s), dtype=complex)
    err = np.zeros(len(s))
    for a in range(1, q):
        if vals[a] != 0:
            z, e = _hurwitz_array(s, a / q)
            total += vals[a] * z
            err += e
    scale = np.exp(-s * math.log(q))
    return scale * total, np.abs(scale) * err + np.finfo(float).eps * np.abs(scale * total)


def _L_series(q: int, chi: int, s: complex, max_terms: int = 2 * 10**7):
    """Partial sums over whole periods; the tail is bounded by Abel summation."""
    vals = dirichlet_character(q, chi)
    partial = np.cumsum(vals)
    B = float(np.max(np.abs(partial)))
    sig = s.real
    if sig <= 0:
        raise ValueError("the Dirichlet series needs Re s > 0")
    need = (B * (1 + abs(s) / sig) / 1e-14) ** (1 / sig)
    N = min(int(math.ceil(need / q)) * q, max_terms // q * q)
    N = max(N, q)
    re_parts, im_parts, abs_parts = [], [], []
    chunk = q * max(1, 2**20 // q)
    for start in range(1, N + 1, chunk):
        n = np.arange(start, min(start + chunk, N + 1), dtype=float)
        t = vals[n.astype(np.int64) % q] * np.exp(-s * np.log(n))
        re_parts.append(math.fsum(t.real))
        im_parts.append(math.fsum(t.imag))
        abs_parts.append(float(np.abs(t).sum()))
    value = complex(math.fsum(re_parts), math.fsum(im_parts))
    # Abel-summation tail bound plus a few ulps per term for exp/log
    err = B * (1 + abs(s) / sig) * N ** (-sig) + 4 * np.finfo(float).eps * math.fsum(abs_parts)
    return value, err


def _L_euler(q: int, chi: int, s: complex, P: int = 10**6):
    if s.real <= 1:
        raise ValueError("the Euler product needs Re s > 1")
    vals = dirichlet_character(q, chi)
    p = sieve_primes(P)
    p = p[q % p != 0] if len(p) else p
    logs = np.log(p.astype(float))
    terms = -np.log1p(-vals[p % q] * np.exp(-s * logs))
    value = np.exp(_fsum_complex(terms))
    sig = s.real
    tail = 1.2 * P ** (1 - sig) / ((sig - 1) * math.log(P))
    return complex(value), abs(value) * tail + 1e-15 * abs(value) * math.sqrt(len(p))


def dirichlet_L(q: int, chi: int, s, method: str = "hurwitz") -> LEvaluation:
    """L(s, chi) for a non-principal character mod q.

    ``method`` is "hurwitz" (any s in the supported region), "dirichlet-series"
    (Re s > 0, practical for Re s >= 2) or "euler-product" (Re s > 1).
    """
    s = _check_point(parse_complex(s))
    _check_L_args(q, chi, s, method)
    if method == "hurwitz":
        v, e = _L_hurwitz(q, chi, np.array([s]))
        value, err = complex(v[0]), float(e[0])
    elif method == "dirichlet-series":
        value, err = _L_series(q, chi, s)
    elif method == "euler-product":
        value, err = _L_euler(q, chi, s)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LEvaluation(s, value, method, max(err, np.finfo(float).tiny))


def _L_and_derivative(q: int, chi: int, s: np.ndarray, h: float = CENTRAL_STEP):
    s = np.asarray(s, dtype=complex)
    stacked = np.concatenate([s, s + h, s - h])
    v, _ = _L_hurwitz(q, chi, stacked)
    m = len(s)
    return v[:m], (v[m : 2 * m] - v[2 * m :]) / (2 * h)


# ---------------------------------------------------------------------------
# zeros and winding numbers


def _rectangle(lo: complex, hi: complex, nodes_per_side: int):
    """Counterclockwise trapezoid nodes and weights (ds) on a rectangle."""
    corners = [complex(lo.real, lo.imag), complex(hi.real, lo.imag),
               complex(hi.real, hi.imag), complex(lo.real, hi.imag)]
    pts, wts = [], []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        t = np.linspace(0.0, 1.0, nodes_per_side + 1)
        w = np.full(nodes_per_side + 1, 1.0 / nodes_per_side)
        w[0] = w[-1] = 0.5 / nodes_per_side
        pts.append(a + (b - a) * t)
        wts.append((b - a) * w)
    return np.concatenate(pts), np.concatenate(wts)


def winding_number(q: int, chi: int, lo: complex, hi: complex, nodes_per_side: int = 400) -> float:
    """(1/2 pi i) of the integral of L'/L around the rectangle [lo, hi], trapezoid rule."""
    s, ds = _rectangle(complex(lo), complex(hi), nodes_per_side)
    v, dv = _L_and_derivative(q, chi, s)
    w = complex(np.sum(dv / v * ds)) / (2j * math.pi)
    return w.real


@dataclass
class ZeroSearch:
    q: int
    chi: int
    window: tuple[float, float]
    found: bool
    s0: Optional[complex] = None
    abs_value: Optional[float] = None
    winding: Optional[float] = None
    derivative_gap: Optional[float] = None
    window_winding: Optional[float] = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"q": self.q, "chi": self.chi, "window": list(self.window), "found": self.found,
             "window_winding": None if self.window_winding is None else float(f"{self.window_winding:.15g}")}
        if self.found:
            d.update({"s0": _cfmt(self.s0), "abs_value": float(f"{self.abs_value:.15g}"),
                      "winding": float(f"{self.winding:.15g}"),
                      "derivative_gap": float(f"{self.derivative_gap:.15g}")})
        if self.note:
            d["note"] = self.note
        return d


def _newton(q: int, chi: int, s: complex, iters: int = 60) -> complex:
    for _ in range(iters):
        v, dv = _L_and_derivative(q, chi, np.array([s]))
        if dv[0] == 0:
            break
        step = v[0] / dv[0]
        s = s - step
        if abs(step) < 1e-15 * max(1.0, abs(s)):
            break
    return complex(s)


def find_zero(q: int, chi: int, window, sigma: float = 0.5, half_width: float = 0.05,
              nodes_per_side: int = 400, grid_step: float = 0.01) -> ZeroSearch:
    """Locate and certify a zero of L(s, chi) with Im s in the window.

    |L| is scanned on the line Re s = sigma; each local minimum seeds a complex
    Newton iteration (central-difference derivative).  A limit point with
    |L| < 1e-9 inside the window is accepted when the winding number of L
    around the square of half-width ``half_width`` centred on it is within
    0.1 of 1.  Otherwise the result has ``found=False``.
    """
    t0, t1 = (float(v) for v in window)
    if not t0 < t1:
        raise ValueError(f"empty window {window}")
    if t1 - t0 > 5:
        raise ValueError("window width must be at most 5")
    _check_L_args(q, chi, complex(sigma, t0), "hurwitz")
    _check_L_args(q, chi, complex(sigma, t1), "hurwitz")
    res = ZeroSearch(q, chi, (t0, t1), False)
    nodes = max(nodes_per_side, int(math.ceil((t1 - t0) / 0.005)))
    res.window_winding = winding_number(q, chi, complex(sigma - 0.25, t0), complex(sigma + 0.25, t1), nodes)

    ts = np.arange(t0, t1 + grid_step / 2, grid_step)
    mags = np.abs(_L_hurwitz(q, chi, sigma + 1j * ts)[0])
    idx = [i for i in range(1, len(ts) - 1) if mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1]]
    idx.sort(key=lambda i: mags[i])
    for i in idx[:8]:
        s0 = _newton(q, chi, complex(sigma, ts[i]))
        if not (t0 <= s0.imag <= t1 and 0.0 < s0.real < 1.0):
            continue
        v, dv = _L_and_derivative(q, chi, np.array([s0]))
        if abs(v[0]) >= ZERO_TOL:
            continue
        w = winding_number(q, chi, s0 - complex(half_width, half_width),
                           s0 + complex(half_width, half_width), nodes_per_side)
        if abs(w - 1) > WINDING_SLACK:
            res.note = f"candidate {s0} has winding {w:.3f}"
            continue
        _, dv2 = _L_and_derivative(q, chi, np.array([s0]), CHECK_STEP)
        res.found = True
        res.s0 = s0
        res.abs_value = float(abs(v[0]))
        res.winding = w
        res.derivative_gap = float(abs(dv[0] - dv2[0]))
        res.note = ""
        return res
    return res


# ---------------------------------------------------------------------------
# contour residues of H


class ZeroCollisionError(ValueError):
    """Another zero lies too close to the contour."""


@dataclass
class ResidueResult:
    scenario: str
    classes: tuple[str, ...]
    s0: complex
    r: float
    contour: complex
    prediction: complex
    ords: tuple[int, ...]
    windings: tuple[float, ...]

    @property
    def error(self) -> float:
        return abs(self.contour - self.prediction)

    def to_dict(self) -> dict:
        return {"scenario": self.scenario, "classes": list(self.classes), "s0": _cfmt(self.s0),
                "r": self.r, "contour": _cfmt(self.contour), "prediction": _cfmt(self.prediction),
                "error": float(f"{self.error:.15g}"), "ords": list(self.ords),
                "windings": [float(f"{w:.15g}") for w in self.windings]}


def _modulus(scenario: Scenario) -> int:
    if not scenario.name.startswith("cyclo:"):
        raise ValueError(f"contour residues need a cyclotomic scenario, got {scenario.name}")
    return int(scenario.group.data)


def _circle(s0: complex, r: float, nodes: int) -> np.ndarray:
    theta = 2 * math.pi * np.arange(nodes) / nodes
    return s0 + r * np.exp(1j * theta)


def _logderivs_on_circle(q: int, nchars: int, s0: complex, r: float, nodes: int):
    s = _circle(s0, r, nodes)
    out = []
    for chi in range(1, nchars):
        v, dv = _L_and_derivative(q, chi, s)
        out.append(dv / v)
    return s, out


def contour_residue_H(scenario: Scenario, cls: ClassSpec, s0, r: float = 0.05, nodes: int = 512) -> ResidueResult:
    """(1/2 pi i) of the integral of H(s, C) over |s - s0| = r.

    H(s, C) = -(|C|/|G|) sum_{chi != 1} (L'/L)(s, chi) conj(chi(g_C)).  The
    order of each L(s, chi) inside the circle is its winding number; the
    prediction is the residue formula evaluated on those orders.  If any
    winding number changes between radius r and 2r another zero is too
    close and ZeroCollisionError is raised.
    """
    s0 = _check_point(parse_complex(s0))
    r = float(r)
    if not 0.01 <= r <= 0.1:
        raise ValueError(f"radius must lie in [0.01, 0.1], got {r}")
    q = _modulus(scenario)
    table = scenario.table
    g = scenario.group
    chosen = _class_set(scenario, cls)
    nchars = len(table)
    for ring in (r, 2 * r):
        _check_L_args(q, 1, s0 + ring, "hurwitz")
        _check_L_args(q, 1, s0 - complex(ring, ring), "hurwitz")

    s, g_in = _logderivs_on_circle(q, nchars, s0, r, nodes)
    _, g_out = _logderivs_on_circle(q, nchars, s0, 2 * r, 2 * nodes)
    dz_in = s - s0
    dz_out = _circle(s0, 2 * r, 2 * nodes) - s0
    windings = [complex(np.mean(a * dz_in)).real for a in g_in]
    outer = [complex(np.mean(a * dz_out)).real for a in g_out]
    ords = []
    for j, (w, w2) in enumerate(zip(windings, outer), start=1):
        if abs(w - round(w)) > WINDING_SLACK:
            raise ZeroCollisionError(f"character {j}: winding {w:.4f} at radius {r} is not near an integer")
        if round(w) != round(w2) or abs(w2 - round(w2)) > WINDING_SLACK:
            raise ZeroCollisionError(
                f"character {j}: winding {w:.4f} at radius {r} but {w2:.4f} at radius {2 * r}; "
                "another zero lies within 2r of s0")
        ords.append(int(round(w)))

    vals = table.complex_values
    contour = 0j
    for c in chosen:
        H = -(g.class_sizes[c] / g.n) * sum(np.conj(vals[j, c]) * g_in[j - 1] for j in range(1, nchars))
        contour += complex(np.mean(H * dz_in))
    residues = residues_from_ords(table, OrdVector(g, tuple(ords)))
    prediction = sum(complex(residues[c]) for c in chosen)
    return ResidueResult(scenario.name, tuple(scenario.class_names[c] for c in chosen), s0, r,
                         contour, prediction, tuple(ords), tuple(windings))
