"""Command-line interface: ``cheblab <command> ...`` or ``python3 -m cheblab``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad flags, unknown groups or scenarios).  Reports are JSON unless
noted; every report carries the tool version, the parsed configuration and
the wall time (``--no-timing`` drops the latter for byte-stable files).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .errors import ClassificationError, VerificationError
from .groups import BUILTIN_GROUPS, GROUP_DESCRIPTORS, GroupError, build_group, orthogonality_catalogue, orthogonality_report
from .frobenius import SCENARIO_FORMS, make_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EXAMPLE_SCENARIOS = ("cyclo:3", "cyclo:4", "cyclo:5", "cyclo:7", "cyclo:12", "quad:-4", "quad:5",
                     "quad:-23", "biquad:-1,2", "biquad:2,3", "cubic:2", "cubic:3")


class UsageError(Exception):
    pass


def _num(v):
    """JSON-ready value with floats at 15 significant digits."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return None if math.isnan(v) else float(f"{v:.15g}")
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": _num(v.real), "im": _num(v.imag)}
    if isinstance(v, dict):
        return {str(k): _num(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_num(x) for x in v]
    return str(v)


def _float_arg(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _int_arg(text: str) -> int:
    v = _float_arg(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _window_arg(text: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like 5:7, got {text!r}") from None


def _group(spec: str):
    try:
        return build_group(spec)
    except GroupError as exc:
        raise UsageError(f"{exc}\nexamples: {', '.join(BUILTIN_GROUPS)}") from None


def _groups(spec: str):
    return [build_group(d) for d in BUILTIN_GROUPS] if spec.lower() == "all" else [_group(spec)]


def _scenario(spec: str):
    try:
        return make_scenario(spec)
    except ValueError as exc:
        raise UsageError(f"{exc}\nforms: {'; '.join(SCENARIO_FORMS)}\n"
                         f"examples: {', '.join(EXAMPLE_SCENARIOS)}") from None


def _class_arg(scenario, key: str):
    if key == "all":
        return list(range(scenario.group.num_classes))
    try:
        return [scenario.class_index(key)]
    except KeyError:
        raise UsageError(f"no class {key!r} in {scenario.name}; classes: {', '.join(scenario.class_names)}") from None


# ---------------------------------------------------------------------------
# commands; each returns (payload, ok) or (text, ok) for CSV


def cmd_verify(args):
    if args.check == "orthogonality":
        groups = [build_group(d) for d in orthogonality_catalogue()] if args.group == "all" else [_group(args.group)]
        reports = [orthogonality_report(g) for g in groups]
    else:
        reports = []
        for g in _groups(args.group):
            if args.check == "eq4":
                from .heilbronn import eq4_trials
                reports.append(eq4_trials(g, args.trials, args.seed))
            elif args.check == "foote-murty":
                from .heilbronn import foote_murty_trials
                reports.append(foote_murty_trials(g, args.trials, args.seed))
            else:
                from .heilbronn import euler_columns
                reports.append(euler_columns(g, args.kmax))
    failures = sum(r["failures"] for r in reports)
    payload = reports[0] if len(reports) == 1 else {"groups": reports, "failures": failures}
    return payload, failures == 0


def cmd_stats(args):
    from .chebstats import run_stats

    sc = _scenario(args.scenario)
    if args.xmax < 1000:
        raise UsageError("--xmax must be at least 1000")
    rep = run_stats(sc, args.xmax, args.checkpoints, threads=args.threads)
    if args.json or (args.out and args.out.endswith(".json")):
        return rep.to_dict(), True
    return rep, True


def cmd_mellin(args):
    from .chebstats import mellin_check

    sc = _scenario(args.scenario)
    cls = _class_arg(sc, args.cls)
    if not 1 < args.s <= 4:
        raise UsageError("--s must lie in (1, 4]")
    res = mellin_check(sc, args.s, args.xmax, cls, tol=args.tol, strict=False)
    return {"scenario": sc.name, "classes": [sc.class_names[c] for c in cls], "s": args.s,
            "x_max": args.xmax, "series": res.series, "integral": res.integral,
            "rel_diff": res.rel_diff, "tolerance": res.tolerance, "ok": res.ok}, res.ok


def cmd_resum(args):
    from .chebstats import resum_by_class

    sc = _scenario(args.scenario)
    rep = resum_by_class(sc, args.xmax, tol=args.tol, strict=False)
    rows = [{"class": n, "direct": d, "via_characters": v, "error": e}
            for n, d, v, e in zip(rep.class_names, rep.direct, rep.via_characters, rep.errors)]
    u = rep.union
    return {"scenario": sc.name, "x_max": args.xmax, "psi": rep.psi, "classes": rows,
            "union": {"direct": u[0], "via_characters": u[1]},
            "max_error": rep.max_error, "tolerance": f"{args.tol:g} * psi", "ok": rep.ok}, rep.ok


def cmd_lfun_eval(args):
    from .lfun import dirichlet_L, parse_complex

    try:
        s = parse_complex(args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ev = dirichlet_L(args.q, args.chi, s, args.method)
    return {"q": args.q, "chi": args.chi, **ev.to_dict()}, True


def cmd_lfun_find_zero(args):
    from .lfun import find_zero

    res = find_zero(args.q, args.chi, args.window)
    return res.to_dict(), True


def _auto_zero(q: int, chi: int, window):
    from .lfun import find_zero

    windows = [window] if window else [(float(a), float(a + 5)) for a in range(0, 100, 5)]
    for w in windows:
        z = find_zero(q, chi, w)
        if z.found:
            return z
    return None


def cmd_lfun_residue(args):
    from .lfun import contour_residue_H, parse_complex, ZeroCollisionError

    sc = _scenario(args.scenario)
    if not sc.name.startswith("cyclo:"):
        raise UsageError("residue needs a cyclotomic scenario (cyclo:q)")
    q = int(sc.group.data)
    zero = None
    if args.s0 == "auto":
        zero = _auto_zero(q, args.chi, args.window)
        if zero is None:
            return {"scenario": sc.name, "found": False, "chi": args.chi}, False
        s0 = zero.s0
    else:
        try:
            s0 = parse_complex(args.s0)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    classes = _class_arg(sc, args.cls)
    g = sc.group
    try:
        results = [contour_residue_H(sc, c, s0, args.r, args.nodes) for c in range(g.num_classes)]
    except ZeroCollisionError as exc:
        return {"scenario": sc.name, "s0": s0, "error": str(exc)}, False
    echo = sum(g.n / g.class_sizes[c] * abs(r.contour) ** 2 for c, r in enumerate(results))
    ord_sq = sum(o * o for o in results[0].ords)
    ok_res = all(results[c].error < args.tol for c in classes)
    ok_echo = abs(echo - ord_sq) < args.echo_tol
    out = {"scenario": sc.name, "s0": s0, "r": args.r, "ords": list(results[0].ords),
           "windings": list(results[0].windings),
           "classes": [{"class": sc.class_names[c], "contour": results[c].contour,
                        "prediction": results[c].prediction, "error": results[c].error}
                       for c in classes],
           "norm_echo": {"sum_G_over_C_abs_res_sq": echo, "sum_ord_sq": ord_sq,
                        "tolerance": args.echo_tol, "ok": ok_echo},
           "tolerance": args.tol, "ok": ok_res and ok_echo}
    if zero is not None:
        out["zero"] = zero.to_dict()
    return out, ok_res and ok_echo


def cmd_lfun_tail(args):
    from .lfun import tail_check

    sc = _scenario(args.scenario)
    rows = tail_check(sc, args.s, args.xmax, tol=args.tol, strict=False)
    worst = max(r.error for r in rows)
    return {"scenario": sc.name, "s": args.s, "x_max": args.xmax,
            "classes": [{"class": r.class_name, "h_minus_f": r.h_minus_f, "tail": r.tail, "error": r.error}
                        for r in rows],
            "max_error": worst, "tolerance": args.tol, "ok": worst <= args.tol}, worst <= args.tol


def cmd_scenario_list(args):
    out = []
    for spec in EXAMPLE_SCENARIOS:
        sc = make_scenario(spec)
        out.append({"scenario": sc.name, "group": sc.group.name, "order": sc.group.n,
                    "classes": list(sc.class_names), "ramified": sorted(sc.ramified)})
    return {"forms": list(SCENARIO_FORMS), "examples": out}, True


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $CHEBLAB_THREADS or all cores)")
    common.add_argument("--no-timing", action="store_true",
                        help="omit the wall time so repeated runs give identical files")

    p = argparse.ArgumentParser(prog="cheblab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"cheblab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="exact character-theoretic checks")
    vs = v.add_subparsers(dest="check", required=True)
    for name, helptext in (("eq4", "residue norm identity on random ord vectors"),
                           ("foote-murty", "|theta(g)| <= theta(1) under cyclic nonnegativity"),
                           ("euler-columns", "sum_chi chi(1) chi(g^k) = |G| [g^k = 1]"),
                           ("orthogonality", "row and column orthogonality of character tables")):
        sp = vs.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--group", default="all",
                        help=f"group descriptor ({', '.join(GROUP_DESCRIPTORS)}) or 'all'")
        if name in ("eq4", "foote-murty"):
            sp.add_argument("--trials", type=_int_arg, default=200)
            sp.add_argument("--seed", type=_int_arg, default=0)
        if name == "euler-columns":
            sp.add_argument("--kmax", type=_int_arg, default=12)
        sp.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", parents=[common], help="psi_C(x) per Frobenius class")
    st.add_argument("--scenario", required=True)
    st.add_argument("--xmax", type=_int_arg, default=10**6)
    st.add_argument("--checkpoints", type=_int_arg, default=None,
                    help="number of geometric checkpoints (default: powers of 10^(1/4))")
    st.add_argument("--json", action="store_true", help="JSON with fitted exponents instead of CSV")
    st.set_defaults(func=cmd_stats)

    me = sub.add_parser("mellin", parents=[common], help="truncated F(s, C) against its Stieltjes integral")
    me.add_argument("--scenario", required=True)
    me.add_argument("--s", type=_float_arg, default=1.5)
    me.add_argument("--xmax", type=_int_arg, default=10**5)
    me.add_argument("--class", dest="cls", default="0", help="class name or index (default: identity)")
    me.add_argument("--tol", type=_float_arg, default=1e-10)
    me.set_defaults(func=cmd_mellin)

    rs = sub.add_parser("resum", parents=[common], help="delta_C rebuilt from character sums")
    rs.add_argument("--scenario", required=True)
    rs.add_argument("--xmax", type=_int_arg, default=10**5)
    rs.add_argument("--tol", type=_float_arg, default=1e-6)
    rs.set_defaults(func=cmd_resum)

    lf = sub.add_parser("lfun", help="Dirichlet L-functions, zeros and contour residues")
    ls = lf.add_subparsers(dest="op", required=True)
    ev = ls.add_parser("eval", parents=[common], help="evaluate L(s, chi)")
    ev.add_argument("--q", type=_int_arg, required=True)
    ev.add_argument("--chi", type=_int_arg, required=True)
    ev.add_argument("--s", required=True, help="complex point such as 0.5+6.02i")
    ev.add_argument("--method", default="hurwitz", choices=["hurwitz", "dirichlet-series", "euler-product"])
    ev.set_defaults(func=cmd_lfun_eval)

    fz = ls.add_parser("find-zero", parents=[common], help="locate and certify a zero on Re s = 1/2")
    fz.add_argument("--q", type=_int_arg, required=True)
    fz.add_argument("--chi", type=_int_arg, required=True)
    fz.add_argument("--window", type=_window_arg, required=True, help="t range such as 5:7")
    fz.set_defaults(func=cmd_lfun_find_zero)

    re_ = ls.add_parser("residue", parents=[common], help="contour residue of H(s, C) against the residue formula")
    re_.add_argument("--scenario", required=True)
    re_.add_argument("--class", dest="cls", default="all")
    re_.add_argument("--s0", default="auto", help="centre, or 'auto' for a certified zero of --chi")
    re_.add_argument("--chi", type=_int_arg, default=1)
    re_.add_argument("--window", type=_window_arg, default=None, help="t range searched when --s0 auto")
    re_.add_argument("--r", type=_float_arg, default=0.05)
    re_.add_argument("--nodes", type=_int_arg, default=512)
    re_.add_argument("--tol", type=_float_arg, default=1e-3)
    re_.add_argument("--echo-tol", type=_float_arg, default=5e-3)
    re_.set_defaults(func=cmd_lfun_residue)

    tc = ls.add_parser("tail-check", parents=[common], help="H - F against the prime-power tail")
    tc.add_argument("--scenario", required=True)
    tc.add_argument("--s", type=_float_arg, default=1.5)
    tc.add_argument("--xmax", type=_int_arg, default=10**5)
    tc.add_argument("--tol", type=_float_arg, default=1e-12)
    tc.set_defaults(func=cmd_lfun_tail)

    sc = sub.add_parser("scenario", help="scenario catalogue")
    ss = sc.add_subparsers(dest="op", required=True)
    sl = ss.add_parser("list", parents=[common], help="list scenario forms and examples")
    sl.set_defaults(func=cmd_scenario_list)
    return p


def _config(args) -> dict:
    skip = {"func", "out", "no_timing"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items()) if k not in skip}


def _render(result, args, wall: Optional[float]) -> str:
    header = {"version": __version__, "config": _config(args)}
    if wall is not None:
        header["wall_time_s"] = round(wall, 3)
    if hasattr(result, "to_csv"):
        lines = [f"cheblab {__version__}", "config " + json.dumps(_num(header["config"]), sort_keys=True)]
        if wall is not None:
            lines.append(f"wall_time_s {wall:.3f}")
        return result.to_csv(lines)
    return json.dumps({"cheblab": _num(header), **_num(result)}, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        result, ok = args.func(args)
    except UsageError as exc:
        print(f"cheblab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationError, ClassificationError) as exc:
        print(f"cheblab: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, KeyError) as exc:
        print(f"cheblab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    wall = None if args.no_timing else time.perf_counter() - start
    text = _render(result, args, wall)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
