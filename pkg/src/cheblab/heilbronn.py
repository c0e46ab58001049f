"""Exact checks of the residue formula, the sum-of-squares relation and the
Heilbronn-character inequality, driven by hypothesised vanishing orders.

An :class:`OrdVector` assigns an integer order ord_{s=s0} L(s, chi) to every
non-trivial irreducible character (and optionally to the trivial one, i.e.
to zeta_K).  From it we form

* the residues of F(s, C) at s0, one per conjugacy class;
* the Heilbronn character theta = sum_chi ord_chi * chi.

Identities valid for every integer vector (the weighted sum of squared
residues equals sum ord^2) are separated from the inequality that needs
theta to restrict to a genuine character on every cyclic subgroup.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import VerificationError
from .exactalg import Cyclotomic, cyc_dot
from .groups import CharacterTable, ClassFunction, GroupTable, inner_product, restrict_to_cyclic

__all__ = [
    "OrdVector",
    "ResidueVector",
    "CyclicCheck",
    "FooteMurtyReport",
    "residues_from_ords",
    "verify_eq4_equality",
    "heilbronn_theta",
    "check_cyclic_nonneg",
    "verify_foote_murty",
    "euler_column_identity",
    "zeta_quotient_order",
    "chebotarev_degenerate",
    "cyclic_multiplicities",
    "random_ords",
    "eq4_trials",
    "foote_murty_trials",
    "euler_columns",
]


@dataclass(frozen=True)
class OrdVector:
    """Hypothesised orders at s0; ``ord[i]`` belongs to the (i+1)-th irreducible."""

    group: GroupTable
    ord: tuple[int, ...]
    ord0: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "ord", tuple(int(x) for x in self.ord))
        if len(self.ord) != self.group.num_classes - 1:
            raise ValueError(
                f"OrdVector for {self.group.name} needs {self.group.num_classes - 1} entries, "
                f"got {len(self.ord)}"
            )


@dataclass(frozen=True)
class ResidueVector:
    group: GroupTable
    values: tuple[Cyclotomic, ...]

    def __getitem__(self, c: int) -> Cyclotomic:
        return self.values[c]

    def __len__(self):
        return len(self.values)

    def to_complex(self) -> list[complex]:
        return [complex(v) for v in self.values]


def _check_table(table: CharacterTable, ords: OrdVector):
    if ords.group is not table.group:
        raise ValueError("OrdVector and character table belong to different groups")


def _class_sums(table: CharacterTable, ords: OrdVector) -> list[Cyclotomic]:
    # S_C = sum_{chi != chi0} ord_chi * conj(chi(g_C)), a cyclotomic integer
    _check_table(table, ords)
    g = table.group
    one = Cyclotomic.rational(g.exponent, 1)
    ones = [one] * len(ords.ord)
    out = []
    for c in g.classes:
        col = [chi.values[c.index] for chi in table.nontrivial]
        out.append(cyc_dot(ones, col, ords.ord) if col else Cyclotomic.rational(g.exponent, 0))
    return out


def residues_from_ords(table: CharacterTable, ords: OrdVector) -> ResidueVector:
    """res_{s0} F(s, C) = -(|C|/|G|) sum_{chi != chi0} ord_chi * conj(chi(g_C))."""
    g = table.group
    sums = _class_sums(table, ords)
    return ResidueVector(g, tuple(s * Fraction(-c.size, g.n) for s, c in zip(sums, g.classes)))


def verify_eq4_equality(table: CharacterTable, ords: OrdVector) -> tuple[Fraction, Fraction]:
    """Return (sum_C |G|/|C| |res_C|^2, sum_chi ord_chi^2); raise if they differ."""
    g = table.group
    # (|G|/|C|) |res_C|^2 = (|C|/|G|) |S_C|^2, so keep the sums integral and
    # divide by |G| once
    sums = _class_sums(table, ords)
    lhs_c = cyc_dot(sums, sums, g.class_sizes)
    if not lhs_c.is_rational():
        raise VerificationError(f"weighted residue norm is not rational: {lhs_c!r}")
    lhs = Fraction(lhs_c.to_rational()) / g.n
    rhs = Fraction(sum(x * x for x in ords.ord))
    if lhs != rhs:
        raise VerificationError(f"{g.name}: {lhs} != {rhs} for ords {ords.ord}")
    return lhs, rhs


def zeta_quotient_order(table: CharacterTable, ords: OrdVector) -> int:
    """ord of zeta_L / zeta_K = sum_{chi != chi0} chi(1) * ord_chi."""
    _check_table(table, ords)
    return sum(d * o for d, o in zip(table.degrees[1:], ords.ord))


def heilbronn_theta(table: CharacterTable, ords: OrdVector, at_one: bool = False) -> ClassFunction:
    """theta = sum_chi ord_chi * chi, including ord0 * chi0 when ord0 is set.

    ``at_one=True`` gives the modified character used at s0 = 1, which drops
    the trivial term.
    """
    _check_table(table, ords)
    ord0 = 0 if (at_one or ords.ord0 is None) else ords.ord0
    return table.combination((ord0,) + ords.ord)


@dataclass(frozen=True)
class CyclicCheck:
    ok: bool
    generator: Optional[int] = None
    multiplicities: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def check_cyclic_nonneg(theta: ClassFunction) -> CyclicCheck:
    """Is theta|_H a genuine character for every cyclic subgroup H?

    On failure the first offending generator and its multiplicity vector are
    returned as the witness.
    """
    # maximal subgroups come first in the stored order, so failures surface early
    for gen, _ in theta.group.cyclic_subgroups:
        mults = restrict_to_cyclic(theta, gen)
        if any(x < 0 for x in mults):
            return CyclicCheck(False, gen, mults)
    return CyclicCheck(True)


@dataclass(frozen=True)
class FooteMurtyReport:
    theta_at_1: Fraction
    abs_sq: tuple[Cyclotomic, ...]
    norm: Fraction
    norm_bound: Fraction
    max_class: int
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.norm <= self.norm_bound


def verify_foote_murty(theta: ClassFunction) -> FooteMurtyReport:
    """Check |theta(g)| <= theta(1) classwise and <theta, theta> <= theta(1)^2.

    Only meaningful (and only accepted) when every cyclic restriction of
    theta is a genuine character.  Real irrational values |theta(g)|^2 are
    compared by certified sign, never by a floating-point threshold.
    """
    chk = check_cyclic_nonneg(theta)
    if not chk:
        raise ValueError(
            f"theta is not cyclic-nonnegative (witness <{theta.group.labels[chk.generator]}>: "
            f"{chk.multiplicities})"
        )
    g = theta.group
    t1 = theta.degree.to_rational()
    bound = t1 * t1
    abs_sq = tuple(v * v.conj() for v in theta.values)
    worst, worst_gap = 0, None
    for c, a in enumerate(abs_sq):
        gap = a * -1 + bound
        sgn = gap.sign()
        if sgn < 0:
            raise VerificationError(f"{g.name}: |theta({g.classes[c].name})|^2 = {a!r} > {bound}")
        if worst_gap is None or complex(gap).real < worst_gap:
            worst, worst_gap = c, complex(gap).real
    norm = Fraction(inner_product(theta, theta).to_rational())
    # <theta,theta> is a |C|-weighted mean of |theta(C)|^2, hence below the max
    mean = cyc_dot(list(abs_sq), [Cyclotomic.rational(g.exponent, 1)] * len(abs_sq), g.class_sizes) / g.n
    if mean != norm:
        raise VerificationError(f"{g.name}: class-weighted mean {mean!r} != <theta, theta> = {norm}")
    if norm > bound:
        raise VerificationError(f"{g.name}: <theta, theta> = {norm} > theta(1)^2 = {bound}")
    return FooteMurtyReport(Fraction(t1), abs_sq, norm, Fraction(bound), worst)


def cyclic_multiplicities(theta: ClassFunction) -> list[tuple[int, ...]]:
    """Restriction multiplicities for every stored cyclic subgroup, in order."""
    return [restrict_to_cyclic(theta, gen) for gen, _ in theta.group.cyclic_subgroups]


def chebotarev_degenerate(theta: ClassFunction, mults=None) -> bool:
    """True when both theta and -theta are cyclic-nonnegative.

    In that case every cyclic restriction has multiplicities >= 0 and <= 0,
    so theta vanishes; a nonzero theta here raises VerificationError.
    ``mults`` may carry precomputed :func:`cyclic_multiplicities`.
    """
    if mults is None:
        mults = cyclic_multiplicities(theta)
    # restricting -theta negates every multiplicity
    pos = all(x >= 0 for row in mults for x in row)
    neg = all(x <= 0 for row in mults for x in row)
    if pos and neg:
        if not theta.is_zero():
            raise VerificationError(f"{theta.group.name}: theta and -theta both nonnegative but theta != 0")
        return True
    return False


def euler_column_identity(table: CharacterTable, c: int, k: int) -> tuple[Fraction, int]:
    """(sum_chi chi(1) chi(g_C^k), |G| [g_C^k = 1]), asserted equal."""
    if k < 1:
        raise ValueError("k must be positive")
    g = table.group
    target = g.power_class[c][k % g.exponent]
    col = [chi.values[target] for chi in table.irreducibles]
    one = Cyclotomic.rational(g.exponent, 1)
    s = cyc_dot(col, [one] * len(col), table.degrees)
    rhs = g.n if target == g.class_of[g.identity] else 0
    if not s == rhs:
        raise VerificationError(f"{g.name}: column identity fails at class {c}, k={k}: {s!r} != {rhs}")
    return Fraction(s.to_rational()), rhs


def random_ords(group: GroupTable, rng: random.Random, lo: int = -5, hi: int = 5) -> OrdVector:
    return OrdVector(group, tuple(rng.randint(lo, hi) for _ in range(group.num_classes - 1)))


# ---------------------------------------------------------------------------
# batch drivers used by the CLI and the acceptance suite


def eq4_trials(group: GroupTable, trials: int, seed: int = 0) -> dict:
    table = group.character_table
    rng = random.Random(seed)
    failures = []
    extremal = None
    for _ in range(trials):
        ords = random_ords(group, rng)
        try:
            lhs, rhs = verify_eq4_equality(table, ords)
        except VerificationError as exc:
            failures.append({"ord": list(ords.ord), "error": str(exc)})
            continue
        if extremal is None or rhs > extremal["rhs"]:
            extremal = {"ord": list(ords.ord), "lhs": lhs, "rhs": rhs}
    return {"group": group.name, "trials": trials, "failures": len(failures),
            "failure_cases": failures, "extremal cases": [extremal] if extremal else []}


def foote_murty_trials(group: GroupTable, trials: int, seed: int = 0,
                       virtual_range: int = 2, virtual_samples: int = 600) -> dict:
    """Random genuine characters, plus virtual characters passing the cyclic test.

    Virtual coefficient vectors are enumerated exhaustively in
    [-virtual_range, virtual_range]^k when that box is small, sampled otherwise.
    """
    table = group.character_table
    rng = random.Random(seed)
    k = len(table)
    failures = []
    tightest = None

    def run(theta, tag, coeffs):
        nonlocal tightest
        try:
            rep = verify_foote_murty(theta)
        except (ValueError, VerificationError) as exc:
            failures.append({"kind": tag, "coeffs": list(coeffs), "error": str(exc)})
            return
        ratio = rep.norm / rep.norm_bound if rep.norm_bound else Fraction(0)
        if tightest is None or ratio > tightest["ratio"]:
            tightest = {"kind": tag, "coeffs": list(coeffs), "norm": rep.norm,
                        "theta(1)^2": rep.norm_bound, "ratio": ratio}

    for _ in range(trials):
        coeffs = [rng.randint(0, 5) for _ in range(k)]
        run(table.combination(coeffs), "genuine", coeffs)

    box = 2 * virtual_range + 1
    if box**k <= virtual_samples:
        import itertools

        vectors = itertools.product(range(-virtual_range, virtual_range + 1), repeat=k)
    else:
        vectors = [(0,) * k] + [tuple(rng.randint(-virtual_range, virtual_range) for _ in range(k))
                                for _ in range(virtual_samples - 1)]
    passing = degenerate = 0
    for coeffs in vectors:
        theta = table.combination(coeffs)
        mults = cyclic_multiplicities(theta)
        try:
            if chebotarev_degenerate(theta, mults):
                degenerate += 1
        except VerificationError as exc:
            failures.append({"kind": "degenerate", "coeffs": list(coeffs), "error": str(exc)})
        if all(x >= 0 for row in mults for x in row):
            passing += 1
            run(theta, "virtual", coeffs)
    return {"group": group.name, "trials": trials, "failures": len(failures),
            "failure_cases": failures, "virtual_passing": passing,
            "degenerate_zero": degenerate,
            "extremal cases": [tightest] if tightest else []}


def euler_columns(group: GroupTable, kmax: int = 12) -> dict:
    table = group.character_table
    failures = []
    checked = 0
    for c in range(group.num_classes):
        for k in range(1, kmax + 1):
            try:
                euler_column_identity(table, c, k)
            except VerificationError as exc:
                failures.append({"class": group.classes[c].name, "k": k, "error": str(exc)})
            checked += 1
    return {"group": group.name, "kmax": kmax, "checked": checked,
            "failures": len(failures), "failure_cases": failures}
