"""Command-line front end.

Exit codes: 0 success (``check``: normal; ``verify``: verified), 1 not normal
or falsified, 2 usage/input/capacity error, 3 inconclusive verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from .canon import canonical_key
from .classify import classify_normal_binary
from .constructions import extremal, with_k_classes
from .core import Pattern, is_symmetric
from .errors import NormpatError
from .normality import ORACLES, is_normal_random_specialization
from .patternio import format_pattern, read_pattern
from .search import DEFAULT_BUDGET, STRATEGIES, SearchConfig, run_search, verify_theorem

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _bool(v: bool) -> str:
    return "true" if v else "false"


def cmd_check(args) -> int:
    p = read_pattern(args.file)
    names = list(ORACLES) if args.oracle == "all" else [args.oracle]
    results = {}
    for name in names:
        if name == "random":
            results[name] = is_normal_random_specialization(p, args.trials, args.seed)
        else:
            results[name] = ORACLES[name](p)
    normal = all(results.values())
    sym = is_symmetric(p)
    if args.json:
        print(json.dumps({"order": p.order, "classes": p.class_count, "symmetric": sym,
                          "normal": normal, "oracles": results}, indent=2))
    else:
        print(f"normal: {_bool(normal)}, symmetric: {_bool(sym)}, classes: {p.class_count}")
        print(f"order: {p.order}")
        for name, ok in results.items():
            print(f"oracle[{name}]: {_bool(ok)}")
    if len(set(results.values())) > 1:
        print("warning: oracles disagree", file=sys.stderr)
    return EXIT_OK if normal else EXIT_NEGATIVE


def cmd_canon(args) -> int:
    p = read_pattern(args.file)
    key = canonical_key(p)
    print(f"# witness: {' '.join(map(str, key.witness))}")
    sys.stdout.write(format_pattern(Pattern(p.order, key.cells)))
    return EXIT_OK


def cmd_extremal(args) -> int:
    p = extremal(args.n) if args.k is None else with_k_classes(args.n, args.k)
    sys.stdout.write(format_pattern(p))
    return EXIT_OK


def cmd_classify(args) -> int:
    report = classify_normal_binary(args.n, args.ones)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
        return EXIT_OK
    d = report.to_dict()
    print(f"order: {d['order']}")
    print(f"ones_count: {d['ones_count']}")
    print(f"total_matrices: {d['total_matrices']}")
    print(f"class_count: {d['class_count']}")
    for i, c in enumerate(d["classes"]):
        print(f"class[{i}]: members={c['member_count']} witness={' '.join(map(str, c['witness']))}")
        for row in c["representative"]:
            print("  " + " ".join(map(str, row)))
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = SearchConfig(
        args.n,
        min_classes=args.min_k,
        require_nonsymmetric=not args.allow_symmetric,
        node_budget=args.budget,
        strategy=args.strategy,
        worker_count=args.workers,
        seed=args.seed,
        min_part=args.min_part,
    )
    report = run_search(cfg)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_theorem(args.n, args.budget, args.workers, cross_check=not args.no_cross_check)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    if report.verdict == "falsified":
        for r in list(report.strata.values()) + list(report.cross_checks.values()):
            sys.stderr.write(r.to_text())
        return EXIT_NEGATIVE
    if report.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normpat", description="Normal entry patterns toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide normality of a pattern file")
    p.add_argument("file")
    p.add_argument("--oracle", choices=[*ORACLES, "all"], default="lemma2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canon", help="canonical form and witness permutation")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("extremal", help="write the extremal pattern (or one with --k classes)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("classify", help="classify normal 0-1 matrices by ones count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ones", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="search for normal patterns")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-k", type=int, default=2)
    p.add_argument("--strategy", choices=STRATEGIES, default="pruned-dfs")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-part", type=int, default=1, help="catalog-cover: smallest class size")
    p.add_argument("--allow-symmetric", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="verify the class-count bound and extremal uniqueness at order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-cross-check", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NormpatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
