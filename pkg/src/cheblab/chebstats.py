"""Chebyshev sums split by Frobenius class.

For a scenario with group G and unramified primes p,

    psi_C(x) = sum_{p <= x, Frob_p in C} log p,       psi(x) = sum_C psi_C(x),

and delta_C(x) = psi_C(x) - (|C|/|G|) psi(x) measures the deviation from
equidistribution.  Primes come from a segmented sieve; segments can be
processed on a thread pool and are always merged in segment order, so the
output does not depend on the thread count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import VerificationError
from .frobenius import Scenario

__all__ = [
    "SIEVE_CAP",
    "sieve_primes",
    "prime_segments",
    "classified_primes",
    "PsiAccumulator",
    "EquidistReport",
    "run_stats",
    "default_checkpoints",
    "MellinResult",
    "mellin_check",
    "ResumReport",
    "resum_by_class",
    "resolve_threads",
]

SIEVE_CAP = 10**9
SEGMENT_SPAN = 1 << 20  # integers per sieve segment; the odd-only bitmap is half that
FIT_EPS_FACTOR = 10 * np.finfo(float).eps


def resolve_threads(threads: Optional[int] = None) -> int:
    """Explicit value, else $CHEBLAB_THREADS, else the number of cores."""
    if threads is None:
        env = os.environ.get("CHEBLAB_THREADS", "").strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


# ---------------------------------------------------------------------------
# sieve


@lru_cache(maxsize=8)
def _base_primes(n: int) -> np.ndarray:
    """Primes <= n by a plain sieve (n is at most sqrt of the cap)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi); lo must be even."""
    n_odd = (hi - lo) // 2
    flags = np.ones(n_odd, dtype=bool)
    first = lo + 1
    for p in base[1:]:
        p = int(p)
        if p * p >= hi:
            break
        m = max(p * p, -(-first // p) * p)
        if m % 2 == 0:
            m += p
        flags[(m - first) // 2 :: p] = False
    primes = first + 2 * np.flatnonzero(flags).astype(np.int64)
    if lo == 0:
        primes = np.concatenate(([2], primes[1:]))  # drop 1, add 2
    return primes


def _segment_bounds(limit: int, span: int) -> list[tuple[int, int]]:
    top = limit + 1 + (limit + 1) % 2  # exclusive, even
    return [(lo, min(lo + span, top)) for lo in range(0, top, span)]


def _check_limit(limit: int, cap: int) -> int:
    limit = int(limit)
    if limit > cap:
        raise ValueError(f"limit {limit} exceeds the sieve cap {cap}")
    return limit


def prime_segments(limit: int, span: int = SEGMENT_SPAN, cap: int = SIEVE_CAP) -> Iterator[np.ndarray]:
    """Yield the primes <= limit in increasing order, one array per segment."""
    limit = _check_limit(limit, cap)
    if limit < 2:
        return
    span += span % 2
    base = _base_primes(math.isqrt(limit))
    for lo, hi in _segment_bounds(limit, span):
        seg = _sieve_segment(lo, hi, base)
        if hi > limit:
            seg = seg[seg <= limit]
        yield seg


def sieve_primes(limit: int, cap: int = SIEVE_CAP) -> np.ndarray:
    """All primes <= limit as an int64 array.

    >>> sieve_primes(10).tolist()
    [2, 3, 5, 7]
    """
    segs = list(prime_segments(limit, cap=cap))
    return np.concatenate(segs) if segs else np.zeros(0, dtype=np.int64)


@lru_cache(maxsize=16)
def classified_primes(scenario: Scenario, x_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Primes <= x_max and their class indices (-1 for ramified), read-only."""
    primes = sieve_primes(int(x_max))
    classes = scenario.classify_many(primes)
    primes.setflags(write=False)
    classes.setflags(write=False)
    return primes, classes


# ---------------------------------------------------------------------------
# accumulation


class _Neumaier:
    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, v: float):
        t = self.s + v
        if abs(self.s) >= abs(v):
            self.c += (self.s - t) + v
        else:
            self.c += (v - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


@dataclass
class PsiAccumulator:
    """Running per-class sums of log p with compensated accumulation.

    Each chunk of primes is summed exactly rounded with ``math.fsum`` and
    the chunk totals are combined with Neumaier compensation.
    """

    num_classes: int
    x: int = 0
    _class: list = field(default_factory=list, repr=False)
    _ram: _Neumaier = field(default_factory=_Neumaier, repr=False)
    _all: _Neumaier = field(default_factory=_Neumaier, repr=False)
    counts: np.ndarray = None

    def __post_init__(self):
        self._class = [_Neumaier() for _ in range(self.num_classes)]
        self.counts = np.zeros(self.num_classes, dtype=np.int64)

    @staticmethod
    def chunk_sums(primes: np.ndarray, classes: np.ndarray, num_classes: int):
        """Exactly rounded per-class, ramified and total log sums of a chunk."""
        logs = np.log(primes.astype(np.float64))
        per = [math.fsum(logs[classes == c]) for c in range(num_classes)]
        ram = math.fsum(logs[classes < 0])
        counts = np.bincount(classes[classes >= 0], minlength=num_classes)
        return per, ram, math.fsum(logs), counts

    def add_chunk(self, sums, x: int):
        per, ram, total, counts = sums
        for acc, v in zip(self._class, per):
            acc.add(v)
        self._ram.add(ram)
        self._all.add(total)
        self.counts += counts
        self.x = max(self.x, int(x))

    def add(self, primes: np.ndarray, classes: np.ndarray, x: Optional[int] = None):
        self.add_chunk(self.chunk_sums(primes, classes, self.num_classes),
                       x if x is not None else (int(primes[-1]) if len(primes) else self.x))

    @property
    def psi_class(self) -> np.ndarray:
        return np.array([a.value for a in self._class])

    @property
    def psi(self) -> float:
        """Sum over unramified primes."""
        return math.fsum(a.value for a in self._class)

    @property
    def psi_ramified(self) -> float:
        return self._ram.value

    @property
    def psi_all(self) -> float:
        """Independent running total over every prime, ramified included."""
        return self._all.value


# ---------------------------------------------------------------------------
# equidistribution report


def default_checkpoints(x_max: int, count: Optional[int] = None, start: int = 1000) -> list[int]:
    """Checkpoints 10^(k/4) from ``start`` up to x_max, or ``count`` geometric points."""
    x_max = int(x_max)
    if count is not None:
        if count < 1:
            raise ValueError("need at least one checkpoint")
        pts = np.geomspace(start, x_max, count) if count > 1 else np.array([x_max])
        xs = sorted({int(round(v)) for v in pts} | {x_max})
    else:
        k0 = round(4 * math.log10(start))
        xs = []
        k = k0
        while True:
            v = int(round(10 ** (k / 4)))
            if v > x_max:
                break
            xs.append(v)
            k += 1
        if not xs or xs[-1] != x_max:
            xs.append(x_max)
    return [x for x in xs if start <= x <= x_max]


@dataclass
class EquidistReport:
    scenario: str
    class_names: tuple[str, ...]
    class_sizes: tuple[int, ...]
    group_order: int
    x: np.ndarray  # checkpoints
    psi_class: np.ndarray  # (checkpoints, classes)
    psi: np.ndarray  # unramified total per checkpoint
    psi_ramified: np.ndarray
    psi_all: np.ndarray
    counts: np.ndarray
    config: dict = field(default_factory=dict)

    @property
    def densities(self) -> np.ndarray:
        return np.array(self.class_sizes, dtype=float) / self.group_order

    @property
    def delta(self) -> np.ndarray:
        return self.psi_class - self.psi[:, None] * self.densities[None, :]

    @property
    def rel_err(self) -> np.ndarray:
        """delta_C(x) / psi(x)."""
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(self.psi[:, None] > 0, self.delta / self.psi[:, None], 0.0)

    @property
    def proportions(self) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(self.psi[:, None] > 0, self.psi_class / self.psi[:, None], 0.0)

    def log_abs_delta(self) -> np.ndarray:
        """log|delta|, NaN where |delta| is within rounding of zero."""
        d = np.abs(self.delta)
        ok = d > FIT_EPS_FACTOR * self.psi[:, None]
        out = np.full(d.shape, np.nan)
        out[ok] = np.log(d[ok])
        return out

    @property
    def exponents(self) -> np.ndarray:
        """Least-squares slope of log|delta_C| against log x, per class.

        Checkpoints where delta is indistinguishable from zero are gaps;
        fewer than three usable points gives NaN.
        """
        ly = self.log_abs_delta()
        lx = np.log(self.x.astype(float))
        out = np.full(len(self.class_names), np.nan)
        for c in range(len(self.class_names)):
            ok = ~np.isnan(ly[:, c])
            if ok.sum() >= 3:
                out[c] = np.polyfit(lx[ok], ly[ok, c], 1)[0]
        return out

    def partition_error(self) -> float:
        """max over checkpoints of |sum_C psi_C + ramified - psi_all| / psi_all."""
        lhs = self.psi_class.sum(axis=1) + self.psi_ramified
        scale = np.maximum(self.psi_all, 1.0)
        return float(np.max(np.abs(lhs - self.psi_all) / scale)) if len(self.x) else 0.0

    def rows(self):
        d, r = self.delta, self.rel_err
        for i, x in enumerate(self.x):
            for c, name in enumerate(self.class_names):
                yield int(x), name, float(self.psi_class[i, c]), float(d[i, c]), float(r[i, c])

    def to_csv(self, header_lines: Sequence[str] = ()) -> str:
        buf = io.StringIO()
        for line in header_lines:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "class_name", "psi_C", "delta", "rel_err"])
        for x, name, p, d, r in self.rows():
            w.writerow([x, name, f"{p:.15g}", f"{d:.15g}", f"{r:.15g}"])
        return buf.getvalue()

    def to_dict(self) -> dict:
        def num(v):
            v = float(v)
            return None if math.isnan(v) else float(f"{v:.15g}")

        return {
            "scenario": self.scenario,
            "classes": [{"name": n, "size": s, "density": str(Fraction(s, self.group_order)),
                         "fitted_exponent": num(e)}
                        for n, s, e in zip(self.class_names, self.class_sizes, self.exponents)],
            "checkpoints": [
                {"x": int(x), "psi": num(self.psi[i]), "psi_ramified": num(self.psi_ramified[i]),
                 "classes": [{"name": n, "psi_C": num(self.psi_class[i, c]), "delta": num(self.delta[i, c]),
                              "rel_err": num(self.rel_err[i, c]), "count": int(self.counts[i, c])}
                             for c, n in enumerate(self.class_names)]}
                for i, x in enumerate(self.x)
            ],
            "partition_error": num(self.partition_error()),
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _process_segment(args):
    """Sieve, classify and sum one segment, split at the checkpoints inside it."""
    scenario, lo, hi, x_max, base, inside, k = args
    seg = _sieve_segment(lo, hi, base)
    seg = seg[seg <= x_max]
    classes = scenario.classify_many(seg)
    pieces = []
    start = 0
    for x in inside + [None]:
        idx = len(seg) if x is None else int(np.searchsorted(seg, x, side="right"))
        pieces.append((PsiAccumulator.chunk_sums(seg[start:idx], classes[start:idx], k), x))
        start = idx
    return pieces


def run_stats(scenario: Scenario, x_max, checkpoints=None, threads: Optional[int] = None,
              span: int = SEGMENT_SPAN) -> EquidistReport:
    """Stream primes up to x_max and record psi_C at each checkpoint.

    ``checkpoints`` is None (powers of 10^(1/4) from 10^3), a count of
    geometrically spaced points, or an explicit increasing sequence.
    Segments are handed to ``threads`` workers a batch at a time and merged
    in order, so the result is independent of the thread count.
    """
    x_max = int(float(x_max))
    if x_max < 1000:
        raise ValueError(f"x_max must be at least 1000, got {x_max}")
    _check_limit(x_max, SIEVE_CAP)
    if checkpoints is None or isinstance(checkpoints, (int, np.integer)):
        xs = default_checkpoints(x_max, None if checkpoints is None else int(checkpoints))
    else:
        xs = sorted({int(v) for v in checkpoints})
        if not xs or xs[0] < 2 or xs[-1] > x_max:
            raise ValueError("explicit checkpoints must lie in [2, x_max]")
    k = scenario.group.num_classes
    acc = PsiAccumulator(k)
    base = _base_primes(math.isqrt(x_max))
    jobs = [(scenario, lo, hi, x_max, base, [x for x in xs if lo <= x < hi], k)
            for lo, hi in _segment_bounds(x_max, span + span % 2)]

    snaps = []

    def merge(pieces):
        for sums, x in pieces:
            acc.add_chunk(sums, x if x is not None else acc.x)
            if x is not None:
                snaps.append((x, acc.psi_class, acc.psi, acc.psi_ramified, acc.psi_all, acc.counts.copy()))

    n = resolve_threads(threads)
    if n == 1 or len(jobs) == 1:
        for job in jobs:
            merge(_process_segment(job))
    else:
        with ThreadPoolExecutor(n) as pool:
            batch = 4 * n
            for i in range(0, len(jobs), batch):
                for pieces in pool.map(_process_segment, jobs[i : i + batch]):
                    merge(pieces)
    group = scenario.group
    return EquidistReport(
        scenario=scenario.name,
        class_names=tuple(scenario.class_names),
        class_sizes=group.class_sizes,
        group_order=group.n,
        x=np.array([s[0] for s in snaps], dtype=np.int64),
        psi_class=np.array([s[1] for s in snaps]).reshape(len(snaps), k),
        psi=np.array([s[2] for s in snaps]),
        psi_ramified=np.array([s[3] for s in snaps]),
        psi_all=np.array([s[4] for s in snaps]),
        counts=np.array([s[5] for s in snaps]).reshape(len(snaps), k),
        config={"scenario": scenario.name, "x_max": x_max, "checkpoints": len(xs)},
    )


# ---------------------------------------------------------------------------
# Mellin / partial summation


@dataclass(frozen=True)
class MellinResult:
    series: float
    integral: float
    rel_diff: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.rel_diff <= self.tolerance


def _coefficients(scenario: Scenario, x_max: int, cls) -> tuple[np.ndarray, np.ndarray]:
    """Primes <= x_max and a_p = log p * ([Frob_p in C] - |C|/|G|), 0 if ramified."""
    from .lfun import class_weights

    primes, classes = classified_primes(scenario, int(x_max))
    w = class_weights(scenario, cls)
    a = np.where(classes >= 0, w[np.maximum(classes, 0)], 0.0) * np.log(primes.astype(float))
    return primes, a


def mellin_check(scenario: Scenario, s: float, x_max, cls=0, tol: float = 1e-10,
                 strict: bool = True) -> MellinResult:
    """Compare truncated F(s, C) with its partial-summation integral.

    With Delta(x) = sum_{p <= x} a_p the integral side is

        s * int_1^X Delta(x) x^(-s-1) dx + Delta(X) X^(-s),

    evaluated exactly on each interval between consecutive primes.
    """
    from .lfun import truncated_F

    s = float(s)
    if not 1.0 < s <= 4.0:
        raise ValueError(f"s must lie in (1, 4], got {s}")
    x_max = int(float(x_max))
    if x_max < 2:
        return MellinResult(0.0, 0.0, 0.0, tol)
    series = truncated_F(scenario, cls, s, x_max).real
    primes, a = _coefficients(scenario, x_max, cls)
    delta = np.cumsum(a.astype(np.longdouble)).astype(np.float64)
    nodes = np.append(primes.astype(float), float(x_max))
    powers = nodes ** (-s)
    integral = math.fsum(delta * (powers[:-1] - powers[1:]))
    boundary = float(delta[-1]) * x_max ** (-s) if len(delta) else 0.0
    integral = math.fsum([integral, boundary])
    scale = max(abs(series), abs(integral))
    rel = abs(series - integral) / scale if scale else 0.0
    res = MellinResult(series, integral, rel, tol)
    if strict and not res.ok:
        raise VerificationError(f"Mellin identity off by {rel:.3e} relative (tolerance {tol:g})")
    return res


# ---------------------------------------------------------------------------
# resummation by characters


@dataclass(frozen=True)
class ResumReport:
    scenario: str
    class_names: tuple[str, ...]
    psi: float
    direct: np.ndarray  # psi_C - (|C|/|G|) psi
    via_characters: np.ndarray  # (|C|/|G|) sum_{chi != 1} conj(chi(g_C)) S_chi
    character_sums: np.ndarray  # S_chi = sum_p chi(Frob_p) log p, nontrivial chi
    tolerance: float

    @property
    def errors(self) -> np.ndarray:
        return np.abs(self.direct - self.via_characters)

    @property
    def max_error(self) -> float:
        return float(self.errors.max()) if len(self.errors) else 0.0

    @property
    def ok(self) -> bool:
        return self.max_error <= self.tolerance * max(self.psi, 1.0)

    @property
    def union(self) -> tuple[float, complex]:
        """Both sides summed over every class (zero up to rounding)."""
        return math.fsum(self.direct), complex(self.via_characters.sum())


def resum_by_class(scenario: Scenario, x_max, tol: float = 1e-6, strict: bool = True) -> ResumReport:
    """Rebuild each delta_C from character sums via Schur orthogonality."""
    x_max = int(float(x_max))
    group = scenario.group
    primes, classes = classified_primes(scenario, x_max)
    keep = classes >= 0
    logs = np.log(primes[keep].astype(float))
    cls = classes[keep]
    k = group.num_classes
    psi_c = np.array([math.fsum(logs[cls == c]) for c in range(k)])
    psi = math.fsum(logs)
    dens = np.array([Fraction(sz, group.n) for sz in group.class_sizes], dtype=object)
    direct = psi_c - psi * dens.astype(float)

    vals = scenario.table.complex_values[1:]  # drop the trivial character
    sums = np.array([complex(math.fsum((v[cls] * logs).real), math.fsum((v[cls] * logs).imag))
                     for v in vals], dtype=complex)
    via = dens.astype(float) * (np.conj(vals).T @ sums) if len(vals) else np.zeros(k, dtype=complex)
    rep = ResumReport(scenario.name, tuple(scenario.class_names), psi, direct, via, sums, tol)
    if strict and not rep.ok:
        raise VerificationError(
            f"resummation mismatch {rep.max_error:.3e} exceeds {tol:g} * psi = {tol * psi:.3e}")
    return rep
