"""Command-line frontend.

Subcommands: count, classes, rauzy, circuits, split, verify, search.
Exit status: 0 on success, 1 when a verification or search found
violations, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import rauzy, squares, verify, words

_ENV_CHECKPOINT = "CIRCSQ_CHECKPOINT"


class _UsageError(Exception):
    pass


def _word_arg(raw: str) -> str:
    try:
        return words.validate_word(raw)
    except words.InvalidWordError as exc:
        raise _UsageError(str(exc)) from exc


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _emit_csv(rows: list[list], header: list[str]) -> None:
    writer = csv.writer(sys.stdout)
    writer.writerow(header)
    writer.writerows(rows)


def _cmd_count(args: argparse.Namespace) -> int:
    w = _word_arg(args.word)
    if args.circular:
        ss = squares.distinct_squares_circular(words.CircularWord(w))
        label = f"[{w}]"
    else:
        ss = squares.distinct_squares(w)
        label = w
    if args.format == "json":
        _emit_json(
            {"word": w, "circular": args.circular, "count": ss.count, "squares": list(ss)}
        )
    elif args.format == "csv":
        _emit_csv([[s] for s in ss], ["square"])
    else:
        print(f"Sq({label}) = {ss.count}")
        for s in ss:
            print(s)
    return 0


def _cmd_classes(args: argparse.Namespace) -> int:
    w = _word_arg(args.word)
    report = squares.decomposition_report(w)
    if args.format == "json":
        _emit_json(report)
    elif args.format == "csv":
        rows = [[c["root"], c["l"], c["t"], c["even"], c["odd"]] for c in report["classes"]]
        _emit_csv(rows, ["root", "l", "t", "even", "odd"])
    else:
        print(f"word {w}: n={report['n']}  Sq={report['sq']}  Sq_circular={report['sq_circular']}")
        if not report["classes"]:
            print("no power classes")
        for c in report["classes"]:
            print(
                f"  root {c['root']}  l={c['l']}  t={c['t']}  |E|={c['even']}  |O|={c['odd']}"
            )
    return 0


def _graph_for(args: argparse.Namespace) -> rauzy.RauzyGraph:
    w = _word_arg(args.word)
    if args.order is None:
        raise _UsageError("--order is required")
    if not 1 <= args.order <= len(w) - 1:
        raise _UsageError(f"order {args.order} out of range 1..{len(w) - 1} for {w!r}")
    return rauzy.build_rauzy_graph(w, args.order)


def _cmd_rauzy(args: argparse.Namespace) -> int:
    g = _graph_for(args)
    if args.format == "dot":
        print(rauzy.to_dot(g))
    elif args.format == "json":
        _emit_json(
            {
                "word": args.word,
                "order": g.order,
                "vertices": sorted(g.vertices),
                "edges": list(g.edges),
                "chi": rauzy.cyclomatic_number(g),
            }
        )
    elif args.format == "csv":
        _emit_csv([[e, e[:-1], e[1:]] for e in g.edges], ["edge", "head", "tail"])
    else:
        print(f"order {g.order}: {len(g.vertices)} vertices, {len(g.edges)} edges, "
              f"chi={rauzy.cyclomatic_number(g)}")
        for e in g.edges:
            print(f"  {e[:-1]} -> {e[1:]}  [{e}]")
    return 0


def _cmd_circuits(args: argparse.Namespace) -> int:
    g = _graph_for(args)
    circuits = rauzy.enumerate_elementary_circuits(g, args.budget)
    vectors = [rauzy.vector_cycle(c, g) for c in circuits]
    chi = rauzy.cyclomatic_number(g)
    rank = rauzy.independent_rank(vectors)
    small = sum(1 for c in circuits if c.length <= g.order)
    if args.format == "json":
        _emit_json(
            {
                "word": args.word,
                "order": g.order,
                "chi": chi,
                "rank": rank,
                "small_circuits": small,
                "circuits": [
                    {"length": c.length, "vertices": list(c.vertices), "vector": list(v)}
                    for c, v in zip(circuits, vectors)
                ],
            }
        )
    elif args.format == "csv":
        rows = [
            [i, c.length, " ".join(c.vertices), " ".join(map(str, v))]
            for i, (c, v) in enumerate(zip(circuits, vectors))
        ]
        _emit_csv(rows, ["index", "length", "vertices", "vector"])
    else:
        print(f"order {g.order}: {len(circuits)} elementary circuits, "
              f"{small} small, rank={rank}, chi={chi}")
        for c in circuits:
            print(f"  length {c.length}: {c}")
    return 0


def _cmd_split(args: argparse.Namespace) -> int:
    w = _word_arg(args.word)
    if not words.is_primitive(w):
        raise _UsageError(f"{w!r} is not primitive; split analysis needs a primitive word")
    m = rauzy.split_point(w)
    if m is None:
        if args.format == "json":
            _emit_json({"word": w, "splits_at": None, "component_lengths": []})
        else:
            print(f"{w} never splits")
        return 0
    parts = rauzy.decompose_split(w, m)
    lengths = [c.length for c in parts]
    if args.format == "json":
        _emit_json(
            {
                "word": w,
                "splits_at": m,
                "component_lengths": lengths,
                "component_roots": [rauzy.circuit_root(c) for c in parts],
            }
        )
    else:
        total = "+".join(str(x) for x in lengths)
        print(f"{w} splits at {m}; components of lengths {total}={len(w)}")
    return 0


def _sweep_config(args: argparse.Namespace) -> verify.SweepConfig:
    checkpoint = os.environ.get(_ENV_CHECKPOINT) or args.checkpoint
    try:
        checks = verify.resolve_checks(args.check)
        return verify.SweepConfig(
            alphabet_size=args.alphabet,
            max_length=args.max_len,
            checks=checks,
            canonicalize=not args.no_canonicalize,
            checkpoint_path=checkpoint,
            seed=args.seed,
            jobs=args.jobs,
            circuit_cap=args.budget,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _report_lines(rep: verify.CheckReport) -> list[str]:
    status = "ok" if rep.passed else f"{len(rep.violations)} violation(s)"
    ratio = "-" if rep.max_ratio is None else str(rep.max_ratio)
    witness = rep.witness or "-"
    lines = [
        f"{rep.check_id:<20} {status:<16} words={rep.words_tested:<8} "
        f"max_ratio={ratio:<8} witness={witness}"
    ]
    for word, detail in rep.violations:
        lines.append(f"    violation {word}: {detail}")
    for word, detail in rep.flagged:
        lines.append(f"    flagged {word}: {detail}")
    for word in rep.skipped:
        lines.append(f"    skipped {word}")
    return lines


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _sweep_config(args)
    suite = verify.run_suite(cfg)
    if args.format == "json":
        print(suite.to_json())
    elif args.format == "csv":
        rows = [
            [
                r.check_id,
                r.words_tested,
                len(r.violations),
                "" if r.max_ratio is None else str(r.max_ratio),
                r.witness or "",
            ]
            for r in suite.reports
        ]
        _emit_csv(rows, ["check", "words", "violations", "max_ratio", "witness"])
    else:
        for rep in suite.reports:
            print("\n".join(_report_lines(rep)))
        verdict = "all checks passed" if suite.passed else f"{suite.violations_total} violation(s)"
        print(verdict)
    return 0 if suite.passed else 1


def _cmd_search(args: argparse.Namespace) -> int:
    rep = verify.search_extremal(args.max_len, args.alphabet, args.budget, args.seed)
    if args.format == "json":
        _emit_json(rep.to_dict())
    elif args.format == "csv":
        _emit_csv(
            [[rep.witness or "", str(rep.max_ratio), rep.stats["evaluations"]]],
            ["witness", "ratio", "evaluations"],
        )
    else:
        mode = "exhaustive" if rep.stats.get("exhaustive") else "hill-climbing"
        print(
            f"best {rep.witness}  Sq={rep.stats['best_count']}  ratio={rep.max_ratio}  "
            f"({mode}, {rep.stats['evaluations']} evaluations)"
        )
        for word, detail in rep.violations:
            print(f"violation {word}: {detail}")
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circsq",
        description="Count distinct squares in circular words and sweep the related bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser, choices: tuple[str, ...]) -> None:
        p.add_argument("--format", choices=choices, default="text")

    p_count = sub.add_parser("count", help="count distinct squares of a word")
    p_count.add_argument("word")
    p_count.add_argument("--circular", action="store_true", help="count over all rotations")
    add_format(p_count, ("text", "json", "csv"))
    p_count.set_defaults(func=_cmd_count)

    p_classes = sub.add_parser("classes", help="power classes of a word")
    p_classes.add_argument("word")
    add_format(p_classes, ("text", "json", "csv"))
    p_classes.set_defaults(func=_cmd_classes)

    p_rauzy = sub.add_parser("rauzy", help="factor graph of a word at one order")
    p_rauzy.add_argument("word")
    p_rauzy.add_argument("--order", type=int, required=True)
    add_format(p_rauzy, ("text", "json", "csv", "dot"))
    p_rauzy.set_defaults(func=_cmd_rauzy)

    p_circ = sub.add_parser("circuits", help="elementary circuits of a factor graph")
    p_circ.add_argument("word")
    p_circ.add_argument("--order", type=int, required=True)
    p_circ.add_argument("--budget", type=int, default=rauzy.DEFAULT_CIRCUIT_CAP,
                        help="abort past this many circuits")
    add_format(p_circ, ("text", "json", "csv"))
    p_circ.set_defaults(func=_cmd_circuits)

    p_split = sub.add_parser("split", help="split analysis of a primitive word")
    p_split.add_argument("word")
    add_format(p_split, ("text", "json"))
    p_split.set_defaults(func=_cmd_split)

    p_verify = sub.add_parser("verify", help="run verification sweeps")
    p_verify.add_argument("--check", default="all",
                          help="check id or 'all' (default all)")
    p_verify.add_argument("--alphabet", type=int, default=2)
    p_verify.add_argument("--max-len", type=int, default=8)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--budget", type=int, default=1_000_000,
                          help="circuit enumeration cap per graph")
    p_verify.add_argument("--checkpoint", default=None,
                          help=f"progress file (env {_ENV_CHECKPOINT} overrides)")
    p_verify.add_argument("--no-canonicalize", action="store_true",
                          help="enumerate raw words instead of canonical ones")
    add_format(p_verify, ("text", "json", "csv"))
    p_verify.set_defaults(func=_cmd_verify)

    p_search = sub.add_parser("search", help="search for square-rich circular words")
    p_search.add_argument("--max-len", type=int, required=True, help="word length")
    p_search.add_argument("--alphabet", type=int, default=2)
    p_search.add_argument("--budget", type=int, default=100_000)
    p_search.add_argument("--seed", type=int, default=0)
    add_format(p_search, ("text", "json", "csv"))
    p_search.set_defaults(func=_cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"circsq: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
