"""Command line front end.

Verbs: gen, eval, member, construct, verify (periodic|conjecture),
conjecture, growth, search, fringe (verify|bound|mc).  Sets are accepted as
SCD text ``(base|d1,d2,...)`` or set literals ``{a,b,c}``, auto-detected by
the leading character.  Exit status: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import family, fringe, scd, search, setcore, theorems
from .setcore import IntegerSet

FORMATS = ("scd", "setliteral", "json-lines")


def _parse_set_arg(text: str) -> IntegerSet:
    t = text.strip()
    if t.startswith("("):
        return scd.to_set(scd.parse(t))
    if t.startswith("{"):
        return setcore.parse_set_literal(t)
    raise ValueError(f"expected SCD '(base|...)' or set literal '{{...}}', got {text!r}")


def _render_set(a: IntegerSet, fmt: str) -> str:
    if fmt == "setliteral":
        return setcore.format_set_literal(a)
    return scd.format(scd.from_set(a))


def _set_record(a: IntegerSet, kind: str = "set", **extra) -> dict:
    rec = {
        "record": kind,
        "scd": scd.format(scd.from_set(a)),
        "elements": list(a.elements),
        "cardinality": len(a),
        "diameter": a.diameter(),
    }
    rec.update(extra)
    return rec


def _emit(line: str) -> None:
    print(line)


def _emit_record(rec: dict) -> None:
    print(json.dumps(rec, separators=(",", ":")))


def _threads(args, default: int) -> int:
    env = os.environ.get("MSTD_THREADS")
    if env is not None:
        return max(1, int(env))
    value = getattr(args, "threads", None)
    return default if value is None else max(1, value)


# -- verb handlers -----------------------------------------------------------

def _cmd_gen(args) -> int:
    if args.named:
        a = family.gen_named(args.named)
    else:
        fam = args.family
        if fam in ("S", "S'", "S''"):
            _require(args, "k", "l")
            a = scd.to_set(family.gen_periodic(args.k, args.l, fam))
        elif fam == "A":
            _require(args, "k", "l")
            a = scd.to_set(family.gen_A(args.k, args.l))
        elif fam in ("T", "T'"):
            _require(args, "j")
            a = family.gen_T(args.j, primed=fam == "T'")
        elif fam == "R":
            _require(args, "j")
            a = family.gen_R(args.j)
        elif fam == "HR":
            _require(args, "l")
            a = scd.to_set(family.gen_high_ratio(args.l, closed=not args.open_tail))
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(f"unknown family {fam!r}")
    if args.format == "json-lines":
        _emit_record(_set_record(a))
    else:
        _emit(_render_set(a, args.format))
    return 0


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise ValueError(f"--{name} is required for this family")


def _cmd_eval(args) -> int:
    a = _parse_set_arg(args.set)
    c = setcore.classify(a)
    nsum = len(setcore.sumset(a))
    ndiff = len(setcore.difference_set(a))
    nres = len(setcore.restricted_sumset(a))
    log_ratio = setcore.ratio(a) if len(a) >= 2 else None
    if args.format == "json-lines":
        _emit_record(
            _set_record(
                a,
                kind="eval",
                sum_card=nsum,
                diff_card=ndiff,
                restricted_sum_card=nres,
                gap=c.gap,
                restricted_gap=c.restricted_gap,
                kind_name=c.kind,
                rsd=c.rsd,
                log_ratio=log_ratio,
            )
        )
    else:
        _emit(_render_set(a, args.format))
        _emit(f"|A| = {len(a)}  diameter = {a.diameter()}")
        _emit(f"|A+A| = {nsum}  |A-A| = {ndiff}  |A^+A| = {nres}")
        _emit(f"gap = {c.gap}  restricted_gap = {c.restricted_gap}  kind = {c.kind}  rsd = {c.rsd}")
        if log_ratio is not None:
            _emit(f"log-ratio f(A) = {log_ratio:.6f}")
    return 0


def _cmd_member(args) -> int:
    m = family.is_member_F(scd.parse(args.scd))
    if args.format == "json-lines":
        _emit_record(
            {
                "record": "member",
                "scd": args.scd.strip(),
                "member": m.member,
                "tier": m.tier,
                "exponents": list(m.exponents),
                "group_sizes": list(m.group_sizes),
                "tail": m.tail,
            }
        )
    elif m.member:
        exps = ",".join(map(str, m.exponents))
        _emit(f"member tier={m.tier} exponents=[{exps}] tail={m.tail}")
    else:
        _emit("non-member")
    return 0


def _cmd_construct(args) -> int:
    a = theorems.construct_for_gap(args.gap)
    if args.format == "json-lines":
        _emit_record(_set_record(a, gap=args.gap))
    else:
        _emit(_render_set(a, args.format))
        _emit(f"gap = {args.gap}  max = {a.max()}  bound = {12 + 4 * args.gap}")
    return 0


def _cmd_verify_periodic(args) -> int:
    variants = args.variants.split(",") if args.variants else ["S", "S'", "S''"]
    failed = 0
    total = 0
    for k in range(1, args.kmax + 1):
        for ell in range(1, args.lmax + 1):
            for variant in variants:
                report = theorems.verify_periodic(k, ell, variant)
                total += 1
                status = "PASS" if report.passed else "FAIL"
                if not report.passed:
                    failed += 1
                if args.format == "json-lines":
                    _emit_record(
                        {
                            "record": "verify-periodic",
                            "k": k,
                            "l": ell,
                            "variant": variant,
                            "passed": report.passed,
                            "predicted_gap": report.predicted_gap,
                            "actual_gap": report.actual_gap,
                            "predicted_sum_card": report.predicted_sum_card,
                            "actual_sum_card": report.actual_sum_card,
                            "predicted_diff_card": report.predicted_diff_card,
                            "actual_diff_card": report.actual_diff_card,
                        }
                    )
                else:
                    _emit(f"{status} k={k} l={ell} variant={variant}")
    if args.format == "json-lines":
        _emit_record(
            {"record": "verify-summary", "checked": total, "failed": failed,
             "passed": failed == 0}
        )
    else:
        _emit(f"checked {total} family members, {failed} failures")
    return 1 if failed else 0


def _cmd_conjecture(args) -> int:
    counterexamples = theorems.check_conjecture(args.max_diam)
    if args.format == "json-lines":
        _emit_record(
            {
                "record": "conjecture",
                "max_diameter": args.max_diam,
                "counterexamples": [scd.format(x) for x in counterexamples],
                "passed": not counterexamples,
            }
        )
    else:
        for x in counterexamples:
            _emit(f"COUNTEREXAMPLE {scd.format(x)}")
        _emit(
            f"checked strict members up to diameter {args.max_diam}: "
            f"{len(counterexamples)} counterexamples"
        )
    return 1 if counterexamples else 0


def _cmd_growth(args) -> int:
    base = scd.parse(args.scd)
    try:
        start_text, len_text = args.block.split(":")
        block_start, block_len = int(start_text), int(len_text)
    except ValueError:
        raise ValueError(f"--block expects START:LEN, got {args.block!r}") from None
    g = theorems.block_growth(base, block_start, block_len, args.reps, args.window)
    if args.format == "json-lines":
        _emit_record(
            {
                "record": "growth",
                "scd": scd.format(base),
                "block": list(g.block),
                "block_len": g.block_len,
                "gaps": list(g.gaps),
                "deltas": list(g.deltas),
                "stabilized": g.stabilized,
                "increment": g.increment,
                "ratio": str(g.ratio) if g.ratio is not None else None,
                "start_rep": g.start_rep,
                "diagnostic": g.diagnostic,
            }
        )
    else:
        _emit(f"block = {','.join(map(str, g.block))}  |B| = {g.block_len}")
        _emit(f"gaps = {list(g.gaps)}")
        if g.stabilized:
            _emit(f"stabilized from rep {g.start_rep}: T = {g.increment}, T/|B| = {g.ratio}")
        else:
            _emit(f"not stabilized: {g.diagnostic}")
    return 0


def _cmd_search(args) -> int:
    task = search.SearchTask(
        n=args.n,
        predicate=args.predicate,
        mode="collect" if args.collect else "count",
        limit=args.limit,
        threads=_threads(args, os.cpu_count() or 1),
        symmetry=not args.no_symmetry,
        engine=args.engine,
        checkpoint=args.checkpoint,
    )
    result = search.enumerate_sets(task)
    if args.format == "json-lines":
        for a, selfsym in zip(result.sets, result.set_self_symmetric):
            _emit_record(_set_record(a, kind="search-set", self_symmetric=selfsym))
        _emit_record(
            {
                "record": "search-summary",
                "n": result.n,
                "predicate": result.predicate,
                "found": result.counted,
                "full_count": result.full_count,
                "self_symmetric": result.self_symmetric,
                "masks": result.masks_tested,
                "secs": round(result.elapsed, 3),
                "truncated": result.truncated,
            }
        )
    else:
        for a in result.sets:
            _emit(_render_set(a, args.format))
        _emit(f"FOUND={result.counted} MASKS={result.masks_tested} SECS={result.elapsed:.3f}")
    return 0


def _cmd_fringe(args) -> int:
    if args.fringe_cmd == "verify":
        report = fringe.verify_fringe(args.n)
        if args.format == "json-lines":
            _emit_record(
                {
                    "record": "fringe-verify",
                    "n": report.n,
                    "passed": report.passed,
                    "cross_attribution": report.cross_attribution,
                    "checks": [
                        {"name": c.name, "passed": c.passed, "detail": c.detail}
                        for c in report.checks
                    ],
                }
            )
        else:
            for c in report.checks:
                detail = f"  [{c.detail}]" if c.detail else ""
                _emit(f"{'PASS' if c.passed else 'FAIL'} {c.name}{detail}")
            _emit(f"fringe n={report.n}: {'PASS' if report.passed else 'FAIL'}")
        return 0 if report.passed else 1
    if args.fringe_cmd == "bound":
        value = fringe.rsd_lower_bound()
        display = fringe.format_sig_truncated(value)
        if args.format == "json-lines":
            _emit_record(
                {
                    "record": "bound",
                    "numerator": str(value.numerator),
                    "denominator": str(value.denominator),
                    "value": float(value),
                    "display": display,
                }
            )
        else:
            _emit(f"RSD proportion lower bound: {display} "
                  f"(exact {value.numerator}/{value.denominator})")
        return 0
    # mc
    est = fringe.monte_carlo(
        predicate=args.predicate,
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        conditioned_on_fringe=args.conditioned,
        workers=_threads(args, 1),
    )
    if args.format == "json-lines":
        _emit_record(
            {
                "record": "mc",
                "predicate": est.predicate,
                "n": est.n,
                "trials": est.trials,
                "hits": est.hits,
                "proportion": est.proportion,
                "seed": est.seed,
                "conditioned": est.conditioned_on_fringe,
                "workers": est.workers,
            }
        )
    else:
        _emit(
            f"{est.predicate} n={est.n} trials={est.trials} hits={est.hits} "
            f"proportion={est.proportion:.3e} seed={est.seed}"
        )
    return 0


# -- parser ------------------------------------------------------------------

def _add_format(p) -> None:
    p.add_argument("--format", choices=FORMATS, default="scd",
                   help="output format (default scd)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mstd",
        description="Generate, verify and search MSTD and RSD integer sets.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a family member or named set")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", choices=["S", "S'", "S''", "A", "T", "T'", "R", "HR"])
    group.add_argument("--named", choices=["S2", "S4", "A4", "A12", "A15"])
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--open", dest="open_tail", action="store_true",
                   help="open tail variant for the HR family")
    _add_format(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("eval", help="cardinalities, gap and classification of a set")
    p.add_argument("set", help="SCD '(base|d1,...)' or literal '{a,b,...}'")
    _add_format(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("member", help="family grammar membership of an SCD")
    p.add_argument("scd")
    _add_format(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("construct", help="set in [0, 12+4x] with gap exactly x")
    p.add_argument("--gap", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="verify closed-form predictions")
    vsub = p.add_subparsers(dest="verify_cmd", required=True)
    vp = vsub.add_parser("periodic", help="predictor sweep over the periodic family")
    vp.add_argument("--kmax", type=int, default=10)
    vp.add_argument("--lmax", type=int, default=10)
    vp.add_argument("--variants", help="comma-separated subset of S,S',S''")
    _add_format(vp)
    vp.set_defaults(func=_cmd_verify_periodic)
    vc = vsub.add_parser("conjecture", help="sweep strict family members for non-MSTD sets")
    vc.add_argument("--max-diam", type=int, required=True)
    _add_format(vc)
    vc.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("conjecture", help="alias for 'verify conjecture'")
    p.add_argument("--max-diam", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("growth", help="gap growth of a repeated interior block")
    p.add_argument("scd")
    p.add_argument("--block", required=True, help="START:LEN inside the SCD")
    p.add_argument("--reps", type=int, default=12)
    p.add_argument("--window", type=int, default=4)
    _add_format(p)
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("search", help="exhaustive search over one diameter")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predicate", choices=["mstd", "rsd"], required=True)
    p.add_argument("--collect", action="store_true")
    p.add_argument("--limit", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--engine", choices=["auto", "numpy", "bits", "naive"], default="auto")
    p.add_argument("--checkpoint", help="resumable per-chunk progress file")
    _add_format(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("fringe", help="fringe identities, bound and Monte Carlo")
    fsub = p.add_subparsers(dest="fringe_cmd", required=True)
    fv = fsub.add_parser("verify")
    fv.add_argument("--n", type=int, required=True)
    _add_format(fv)
    fv.set_defaults(func=_cmd_fringe)
    fb = fsub.add_parser("bound")
    _add_format(fb)
    fb.set_defaults(func=_cmd_fringe)
    fm = fsub.add_parser("mc")
    fm.add_argument("--predicate", choices=["mstd", "rsd"], required=True)
    fm.add_argument("--n", type=int, required=True)
    fm.add_argument("--trials", type=int, required=True)
    fm.add_argument("--seed", type=int, required=True,
                    help="explicit seed; runs are reproducible")
    fm.add_argument("--conditioned", action="store_true",
                    help="force the fringe pair, sample only the middle")
    fm.add_argument("--threads", type=int)
    _add_format(fm)
    fm.set_defaults(func=_cmd_fringe)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"mstd: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
