"""matchdisc command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from decimal import Decimal
from itertools import combinations

from . import hypergraph as hg
from .bounds import CheckResult, verify_appendix
from .constructions import balanced_sizes, build_extremal, forced_profile, pm_exists_criterion
from .errors import MatchDiscError, NoPerfectMatching, RecoveryError
from .gadgets import BUDGET_EXHAUSTED, find_gadget, recover_structure
from .matchings import default_threads, enumerate_pm, max_same_color, profile_census
from .thresholds import diff_golden, diff_maximizers, load_golden, render_table, threshold_report

GOLDEN = ("table1", "table2")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def int_range(text: str) -> list[int]:
    """'5' -> [5]; '3..7' -> [3, 4, 5, 6, 7]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from None


def threshold_arg(text: str):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"threshold must be an integer or 'auto', got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("threshold must be positive")
    return value


def _emit(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _golden_cells() -> dict[tuple[str, int], str]:
    cells = {}
    for name in GOLDEN:
        gold = load_golden(name)
        for row in gold["rows"]:
            for k, value in zip(gold["k"], row["values"]):
                cells.setdefault((row["function"], k), value)
    return cells


# ---------------------------------------------------------------------------
# thresholds


def cmd_thresholds_table(args) -> int:
    table = render_table(args.r, args.k, args.decimals, args.trim_zeros)
    print(table.render(args.format))
    if args.decimals != 4:
        return 0
    golden = _golden_cells()
    bad = []
    for label, cells in table.rows:
        for k, cell in zip(table.k_values, cells):
            published = golden.get((label, k))
            if published is not None and Decimal(published) != Decimal(cell):
                bad.append(f"{label} at k={k}: published {published}, computed {cell}")
    for line in bad:
        print(f"mismatch: {line}", file=sys.stderr)
    return 1 if bad else 0


def cmd_thresholds_value(args) -> int:
    reports = [threshold_report(r, k).to_dict(args.decimals) for r in args.r for k in args.k]
    if args.format == "json":
        print(_dump(reports if len(reports) > 1 else reports[0]))
    else:
        for rep in reports:
            a = " ".join("(" + ",".join(map(str, m)) + ")" for m in rep["maximizers"])
            print(f"r={rep['r']} k={rep['k']} g={rep['g']} ({rep['g_decimal']}) argmax={a} "
                  f"f0={rep['f0']} ({rep['f0_decimal']}) {rep['comparison']}")
    return 0


# ---------------------------------------------------------------------------
# construct, matchings, gadgets, structure


def cmd_construct(args) -> int:
    if (args.n is None) == (args.sizes is None):
        raise UsageError("construct: give exactly one of --n or --sizes")
    sizes = args.sizes if args.sizes is not None else balanced_sizes(args.n, len(args.a), args.a)
    H = build_extremal(sizes, args.a)
    _emit(hg.dumps(H), args.output)
    return 0


def _load(args) -> hg.ColoredHypergraph:
    if args.input == "-":
        return hg.loads(sys.stdin.read())
    try:
        with open(args.input, encoding="utf-8") as fh:
            return hg.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc


def cmd_matchings_census(args) -> int:
    H = _load(args)
    _emit(_dump(profile_census(H, args.threads).to_dict()), args.output)
    return 0


def cmd_matchings_best(args) -> int:
    H = _load(args)
    _emit(_dump(max_same_color(H).to_dict(H)), args.output)
    return 0


def cmd_gadgets_find(args) -> int:
    H = _load(args)
    result = find_gadget(H, args.kinds, args.limit)
    if result is None:
        _emit("none", args.output)
    elif result is BUDGET_EXHAUSTED:
        _emit(_dump({"status": "budget_exhausted", "limit": args.limit}), args.output)
    else:
        _emit(_dump(result.to_dict()), args.output)
    return 0


def cmd_structure_recover(args) -> int:
    H = _load(args)
    _emit(_dump(recover_structure(H, args.threshold).to_dict()), args.output)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify_tables(args) -> int:
    report = {"cells": [], "maximizers": []}
    ok = True
    for name in GOLDEN:
        for d in diff_golden(name):
            report["cells"].append({"table": name, "function": d.function, "k": d.k,
                                    "published": d.published, "computed": d.computed,
                                    "exact": str(d.exact), "match": d.matches})
            ok &= d.matches
        for r, k, published, computed in diff_maximizers(name):
            match = computed == [published]
            report["maximizers"].append({"r": r, "k": k, "published": published,
                                         "computed": computed, "match": match})
            ok &= match
    report["passed"] = ok
    if args.format == "json":
        print(_dump(report))
    else:
        for c in report["cells"]:
            flag = "ok" if c["match"] else "MISMATCH"
            print(f"{c['table']} {c['function']} k={c['k']}: published {c['published']} "
                  f"computed {c['computed']} [{flag}]")
        for m in report["maximizers"]:
            flag = "ok" if m["match"] else "MISMATCH"
            print(f"argmax r={m['r']} k={m['k']}: published {m['published']} computed {m['computed']} [{flag}]")
        n_bad = sum(not c["match"] for c in report["cells"]) + sum(not m["match"] for m in report["maximizers"])
        print(f"{'PASS' if ok else 'FAIL'}: {n_bad} mismatch(es)")
    return 0 if ok else 1


def _print_checks(results: list[CheckResult], fmt: str, full: bool) -> bool:
    ok = all(results)
    if fmt == "json":
        print(_dump({"passed": ok, "checks": [r.to_dict(full) for r in results]}))
        return ok
    for res in results:
        print(f"[{'PASS' if res else 'FAIL'}] {res.name} ({len(res.certificates)} claims)")
        shown = res.certificates if full else res.failures()
        for c in shown:
            d = c.to_dict()
            print(f"    {'ok  ' if c.passed else 'FAIL'} {d['method']:8} {d['claim']}  margin={d['margin']}")
    print("PASS" if ok else "FAIL")
    return ok


def cmd_verify_appendix(args) -> int:
    results = verify_appendix(k_max=args.k_max)
    return 0 if _print_checks(results, args.format, args.full) else 1


def _random_hypergraph(rng: random.Random, n: int, k: int, r: int, density: float) -> hg.ColoredHypergraph:
    edges = [(T, rng.randint(1, r)) for T in combinations(range(n), k) if rng.random() < density]
    return hg.ColoredHypergraph(n, k, r, edges)


def _brute_profiles(H: hg.ColoredHypergraph) -> dict[tuple[int, ...], int]:
    """Profile counts from the lex enumeration, a path independent of the census DP."""
    counts: dict[tuple[int, ...], int] = {}
    for m in enumerate_pm(H):
        assert H.is_perfect_matching(m)
        p = H.color_profile(m)
        counts[p] = counts.get(p, 0) + 1
    return counts


def oracle_checks(seed: int, trials: int = 25) -> CheckResult:
    """Randomized cross-checks of census, criterion and forced profile."""
    from .bounds import exact

    rng = random.Random(seed)
    res = CheckResult(f"randomized oracle (seed {seed}, {trials} trials)")
    for t in range(trials):
        n = rng.choice([6, 9])
        H = _random_hypergraph(rng, n, 3, rng.randint(1, 3), rng.uniform(0.3, 0.9))
        census = profile_census(H).counts
        brute = _brute_profiles(H)
        res.add(exact(f"trial {t}: census equals enumeration on n={n}, |E|={len(H)}", int(census != brute), 0))
    for t in range(trials):
        r = rng.randint(2, 3)
        k = 3
        a = sorted(rng.choice([(0, 2), (1, 1)]) if r == 2 else rng.choice([(0, 0, 2), (0, 1, 1)]))
        n = rng.choice([6, 9])
        cuts = sorted(rng.sample(range(1, n), r - 1))
        sizes = [b - c for b, c in zip(cuts + [n], [0] + cuts)]
        H = build_extremal(sizes, a)
        has_pm = next(enumerate_pm(H, limit=1), None) is not None
        crit = pm_exists_criterion(sizes, a)
        res.add(exact(f"criterion {sizes}, a={a}: {crit} vs search {has_pm}", int(crit != has_pm), 0))
        if has_pm:
            profiles = set(profile_census(H).counts)
            res.add(exact(f"forced profile {sizes}, a={a}", int(profiles != {forced_profile(sizes, a)}), 0))
    return res


def cmd_verify_oracle(args) -> int:
    return 0 if _print_checks([oracle_checks(args.seed, args.trials)], args.format, args.full) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="matchdisc", description="Discrepancy thresholds for perfect matchings in colored hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, choices=("md", "csv", "json"), default="md"):
        sp.add_argument("--format", choices=choices, default=default)

    def io(sp):
        sp.add_argument("-i", "--input", required=True, help="hypergraph JSON file, or - for stdin")
        sp.add_argument("-o", "--output", help="write output here instead of stdout")

    th = sub.add_parser("thresholds", help="g_r(k), f0(k) and the comparison")
    th_sub = th.add_subparsers(dest="action", required=True, parser_class=_Parser)
    t = th_sub.add_parser("table", help="render a table of g_r(k) and f0(k)")
    t.add_argument("--r", type=int_range, required=True)
    t.add_argument("--k", type=int_range, required=True)
    t.add_argument("--decimals", type=int, default=4)
    t.add_argument("--trim-zeros", action="store_true", help="drop trailing zeros")
    fmt(t)
    t.set_defaults(func=cmd_thresholds_table)
    v = th_sub.add_parser("value", help="exact values and maximizers")
    v.add_argument("--r", type=int_range, required=True)
    v.add_argument("--k", type=int_range, required=True)
    v.add_argument("--decimals", type=int, default=4)
    fmt(v, ("text", "json"), "text")
    v.set_defaults(func=cmd_thresholds_value)

    c = sub.add_parser("construct", help="build the extremal hypergraph H*(V, a)")
    c.add_argument("--a", type=int_list, required=True, help="composition, e.g. 1,1")
    c.add_argument("--n", type=int, help="total size; parts are balanced")
    c.add_argument("--sizes", type=int_list, help="explicit part sizes")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    m = sub.add_parser("matchings", help="perfect matching census")
    m_sub = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    mc = m_sub.add_parser("census")
    io(mc)
    mc.add_argument("--threads", type=int, default=None)
    mc.set_defaults(func=cmd_matchings_census)
    mb = m_sub.add_parser("best")
    io(mb)
    mb.add_argument("--threads", type=int, default=None)
    mb.set_defaults(func=cmd_matchings_best)

    g = sub.add_parser("gadgets", help="search for a good gadget")
    g_sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gf = g_sub.add_parser("find")
    io(gf)
    gf.add_argument("--kinds", type=int_list, default=[1, 2, 3])
    gf.add_argument("--limit", "--budget", dest="limit", type=int, default=None,
                    help="search node budget")
    gf.set_defaults(func=cmd_gadgets_find)

    s = sub.add_parser("structure", help="recover the extremal partition")
    s_sub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sr = s_sub.add_parser("recover")
    io(sr)
    sr.add_argument("--threshold", type=threshold_arg, default=None, help="integer or auto")
    sr.set_defaults(func=cmd_structure_recover)

    ver = sub.add_parser("verify", help="verification reports")
    v_sub = ver.add_subparsers(dest="action", required=True, parser_class=_Parser)
    vt = v_sub.add_parser("tables")
    fmt(vt, ("text", "json"), "text")
    vt.set_defaults(func=cmd_verify_tables)
    va = v_sub.add_parser("appendix")
    va.add_argument("--k-max", type=int, default=1000)
    va.add_argument("--full", action="store_true", help="list every certificate")
    fmt(va, ("text", "json"), "text")
    va.set_defaults(func=cmd_verify_appendix)
    vo = v_sub.add_parser("oracle")
    vo.add_argument("--seed", type=int, default=0)
    vo.add_argument("--trials", type=int, default=25)
    vo.add_argument("--full", action="store_true")
    fmt(vo, ("text", "json"), "text")
    vo.set_defaults(func=cmd_verify_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "threads", "absent") is None:
            args.threads = default_threads()
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except (RecoveryError, NoPerfectMatching) as exc:
        # a well-formed input that fails the property being checked
        print(f"matchdisc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (MatchDiscError, ValueError) as exc:
        print(f"matchdisc: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
