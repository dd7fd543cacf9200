"""Command line entry point.

Exit codes: 0 pass/holds/agree, 1 violation or counterexample, 2 usage or
parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from .conditions import ORDER, check_all
from .games import TableGame, restricted_game
from .graph import EnumerationLimitError, to_mask
from .io import (
    ParseError,
    game_document,
    generate_graph,
    generate_tree,
    parse_game,
    parse_graph,
    report_document,
)
from .partitions import Kind, partition
from .verifier import (
    Mode,
    cross_validate,
    inheritance_convexity_sampled,
    inheritance_convexity_unanimity,
    inheritance_fconvexity_unanimity,
)

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _emit(doc: dict, out: Optional[str] = None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        _atomic_write(Path(out), text + "\n")
    else:
        print(text)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _vertices(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError("-A", f"expected a comma separated vertex list, got {text!r}") from None


def _seed_range(text: str) -> range:
    a, sep, b = text.partition("..")
    try:
        return range(int(a), int(b) + 1) if sep else range(int(a), int(a) + 1)
    except ValueError:
        raise ParseError("--seeds", f"expected a..b, got {text!r}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_partition(args) -> int:
    G = parse_graph(_read(args.graph))
    verts = _vertices(args.A)
    for v in verts:
        if not 0 <= v < G.n:
            raise ParseError("-A", f"vertex {v} out of range for n={G.n}")
    P = partition(G, to_mask(verts), args.kind)
    if args.json:
        _emit({"kind": args.kind, "coalition": verts, "blocks": P.as_lists()})
    else:
        print(" ".join("{" + ",".join(map(str, b)) + "}" for b in P.as_lists()))
    return EXIT_OK


def cmd_restrict(args) -> int:
    G = parse_graph(_read(args.graph))
    v = parse_game(_read(args.game), G.n)
    bar = restricted_game(G, args.kind, v)
    doc = game_document(TableGame(G.n, bar.values))
    _emit(doc, args.output)
    return EXIT_OK


def cmd_conditions(args) -> int:
    G = parse_graph(_read(args.graph))
    report = check_all(G, first_witness=args.first_witness)
    if args.json:
        _emit(report_document("conditions", G, report.to_dict()))
    else:
        for c in ORDER:
            status = report.status(c)
            label = {True: "pass", False: "FAIL", None: "cap"}[status]
            print(f"{c.value:28s} {label}")
        for viol in report.violations:
            print(f"  {viol.condition.value}: {viol.detail}")
    if report.caps_hit and report.all_hold is None:
        return EXIT_CAP
    return EXIT_OK if report.all_hold else EXIT_FOUND


def cmd_inherit(args) -> int:
    G = parse_graph(_read(args.graph))
    mode = Mode(args.mode)
    if mode is Mode.CONVEXITY:
        verdict = inheritance_convexity_unanimity(G, args.kind)
        if verdict.holds and args.samples:
            verdict = inheritance_convexity_sampled(G, args.kind, args.samples, args.seed)
    else:
        verdict = inheritance_fconvexity_unanimity(G, args.kind)
    if args.json:
        _emit(report_document("inherit", G, verdict.to_dict(), seed=args.seed if args.samples else None))
    else:
        print(f"{mode.value} inheritance under {verdict.kind.value}: "
              f"{'holds' if verdict.holds else 'fails'} ({verdict.games_checked} games)")
        if verdict.counterexample:
            print(f"  counterexample: {json.dumps(verdict.counterexample)}")
    return EXIT_OK if verdict.holds else EXIT_FOUND


def _cv_summary(cv) -> str:
    return (f"conditions={cv.conditions_verdict} bruteforce={cv.bruteforce_verdict} "
            f"agree={str(cv.agree).lower()}")


def cmd_cross_validate(args) -> int:
    G = parse_graph(_read(args.graph))
    cv = cross_validate(G)
    if args.json:
        _emit(report_document("cross_validate", G, cv.to_dict()))
    else:
        print(_cv_summary(cv))
        if cv.convexity.counterexample:
            print(f"  unanimity counterexample: {json.dumps(cv.convexity.counterexample)}")
        for w in cv.warnings:
            print(f"  warning: {w}")
    if cv.conditions_verdict is None:
        return EXIT_CAP
    return EXIT_OK if cv.agree else EXIT_FOUND


def _palette(text: str) -> list[str]:
    return [w.strip() for w in text.split(",") if w.strip()]


def cmd_gen(args) -> int:
    if args.tree:
        doc = generate_tree(args.n, _palette(args.weights), args.seed)
    else:
        doc = generate_graph(args.n, args.p, _palette(args.weights), args.seed)
    parse_graph(doc)
    _emit(doc, args.output)
    return EXIT_OK


def cmd_corpus(args) -> int:
    root = Path(args.dir)
    if args.seeds:
        inputs = []
        for seed in _seed_range(args.seeds):
            doc = generate_graph(args.n, args.p, _palette(args.weights), seed)
            path = root / f"graph_{seed:05d}.json"
            _atomic_write(path, json.dumps(doc, sort_keys=True) + "\n")
            inputs.append(path)
    else:
        inputs = sorted(p for p in root.glob("*.json") if not p.name.endswith(".report.json"))
    worst = EXIT_OK
    agreed = 0
    for path in inputs:
        G = parse_graph(path.read_bytes())
        try:
            cv = cross_validate(G)
        except EnumerationLimitError as exc:
            print(f"{path.name}: cap exceeded ({exc})")
            worst = max(worst, EXIT_CAP)
            continue
        _atomic_write(
            path.with_suffix(".report.json"),
            json.dumps(report_document("cross_validate", G, cv.to_dict()), sort_keys=True) + "\n",
        )
        agreed += cv.agree
        print(f"{path.name}: {_cv_summary(cv)}")
        if not cv.agree:
            worst = max(worst, EXIT_FOUND)
    print(f"summary: {agreed}/{len(inputs)} agree")
    return worst


# -- wiring --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gridlock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    kinds = [k.value for k in Kind]

    p = sub.add_parser("partition", help="print the blocks of one coalition")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-A", required=True, help="comma separated vertices")
    p.add_argument("-c", "--kind", choices=kinds, default="tpmin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("restrict", help="tabulate a restricted game")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-v", "--game", required=True)
    p.add_argument("-c", "--kind", choices=kinds, default="tpmin")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("conditions", help="check the eight weight conditions")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--first-witness", action="store_true")
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("inherit", help="brute-force inheritance check")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--mode", choices=["convexity", "fconvexity"], default="convexity")
    p.add_argument("-c", "--kind", choices=kinds, default="tpmin")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_inherit)

    p = sub.add_parser("cross-validate", help="conditions against brute force")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cross_validate)

    for name, fn, help_ in (("gen", cmd_gen, "generate a seeded random graph"),
                            ("corpus", cmd_corpus, "batch cross-validation")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, default=6)
        p.add_argument("--p", type=float, default=0.5)
        p.add_argument("--weights", default="1,2,3")
        if name == "gen":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--tree", action="store_true")
            p.add_argument("-o", "--output")
        else:
            p.add_argument("--dir", required=True)
            p.add_argument("--seeds", help="a..b: generate graphs for these seeds first")
        p.set_defaults(func=fn)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationLimitError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
