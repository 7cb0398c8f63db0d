"""Command-line entry point: ``annulink <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .crossings import classify_all
from .diagram import serialize, to_object
from .generate import POLICIES, GeneratorConfig, generate_random
from .harness import CSV_COLUMNS, batch, load_diagram, verify
from .moves import (
    RewriteError,
    insert_loop,
    r1_insert,
    r2_insert,
    remove_dotted_reducible,
)
from .poly import CoefficientOverflow
from .skein import DEFAULT_MAX_STATES, bracket, jones

__all__ = ["main", "build_parser"]


def _emit(args, text: str, obj) -> None:
    if args.format == "object":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_bracket(args) -> int:
    d = load_diagram(args.diagram)
    p = bracket(d, workers=args.threads, max_states=args.max_states)
    _emit(args, p.to_text(), {"bracket": p.to_object(), "text": p.to_text()})
    return 0


def _cmd_jones(args) -> int:
    d = load_diagram(args.diagram)
    p = jones(d, workers=args.threads, max_states=args.max_states)
    text = p.to_q_text() if args.q else p.to_text()
    _emit(args, text, {"jones": p.to_object(), "text": p.to_text(), "q_text": p.to_q_text()})
    return 0


def _cmd_classify(args) -> int:
    d = load_diagram(args.diagram)
    reports = classify_all(d)
    lines, rows = [], []
    for r in reports:
        witness = r.witness
        lines.append(f"{r.crossing}: {r.status.value}" + (f" {witness[0]} {witness[1]}" if witness else ""))
        rows.append(
            {
                "crossing": r.crossing,
                "status": r.status.value,
                "witness": [list(w) for w in witness] if witness else None,
            }
        )
    _emit(args, "\n".join(lines) if lines else "no crossings", {"crossings": rows})
    return 0


def _cmd_verify(args) -> int:
    d = load_diagram(args.diagram)
    record = verify(d, args.id or Path(args.diagram).stem, workers=args.threads, max_states=args.max_states)
    row = record.row()
    text = "\n".join(f"{key}: {row[key]}" for key in CSV_COLUMNS)
    _emit(args, text, row)
    return 1 if record.failed() else 0


def _collect_paths(paths: Sequence[str]) -> list[str]:
    out: list[str] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            out += sorted(str(q) for q in path.iterdir() if q.suffix in (".txt", ".json") and q.name != "expected.json")
        else:
            out.append(p)
    return out


def _generator_config(args) -> GeneratorConfig:
    return GeneratorConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        alternating=args.alternating,
        policy=args.policy,
        seed=args.seed,
        count=args.count,
    )


def _cmd_batch(args) -> int:
    items: list = _collect_paths(args.paths)
    seed = None
    if args.random:
        args.count = args.random
        seed = args.seed
        items += [(f"gen{i:05d}", d) for i, d in enumerate(generate_random(_generator_config(args)))]
    report = batch(items, workers=args.threads, max_states=args.max_states, seed=seed)
    text = report.to_csv() if args.format == "text" else report.to_json()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    for name, message in report.errors:
        print(f"annulink: skipped {name}: {message}", file=sys.stderr)
    return report.exit_status


def _cmd_generate(args) -> int:
    diagrams = list(generate_random(_generator_config(args)))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, d in enumerate(diagrams):
            name = f"gen{i:05d}"
            if args.format == "object":
                (out / f"{name}.json").write_text(json.dumps(to_object(d), indent=2, sort_keys=True) + "\n")
            else:
                (out / f"{name}.txt").write_text(serialize(d))
        return 0
    if args.format == "object":
        sys.stdout.write(json.dumps([to_object(d) for d in diagrams], indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("---\n".join(serialize(d) for d in diagrams))
    return 0


def _parse_edge(value: str):
    if value.upper().startswith("O"):
        return ("O", int(value[1:].lstrip(":")))
    return int(value)


def _cmd_rewrite(args) -> int:
    d = load_diagram(args.diagram)
    if args.move == "r1":
        result = r1_insert(d, _parse_edge(args.edge), args.side, args.sign)
    elif args.move == "r2":
        result = r2_insert(d, args.edge1, args.edge2, args.face)
    elif args.move == "loop":
        result = insert_loop(d, args.dotted)
    else:
        result = remove_dotted_reducible(d, args.crossing)
    factor = result.expected_bracket_factor.to_text()
    text = f"# bracket factor: {factor}\n# crossing delta: {result.crossing_delta}\n" + serialize(result.diagram)
    _emit(
        args,
        text,
        {
            "diagram": to_object(result.diagram),
            "bracket_factor": result.expected_bracket_factor.to_object(),
            "crossing_delta": result.crossing_delta,
        },
    )
    return 0


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "object"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES)
    common.add_argument("--threads", type=_positive, default=1, help="worker processes")

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--count", type=int, default=100)
    gen.add_argument("--n-min", type=int, default=1)
    gen.add_argument("--n-max", type=int, default=10)
    gen.add_argument("--alternating", action=argparse.BooleanOptionalAction, default=True)
    gen.add_argument("--policy", choices=POLICIES, default="uniform-random-face")

    parser = argparse.ArgumentParser(prog="annulink", description=__doc__)
    parser.add_argument("--version", action="version", version=f"annulink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="Kauffman bracket in Z[A, A^-1, t]")
    p.add_argument("diagram")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("jones", parents=[common], help="writhe-normalized bracket")
    p.add_argument("diagram")
    p.add_argument("--q", action="store_true", help="print in q = A^-4")
    p.set_defaults(func=_cmd_jones)

    p = sub.add_parser("classify", parents=[common], help="nugatory crossing classification")
    p.add_argument("diagram")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="theorem checks on one diagram")
    p.add_argument("diagram")
    p.add_argument("--id", default="")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("batch", parents=[common, gen], help="theorem checks on many diagrams")
    p.add_argument("paths", nargs="*", help="diagram files or directories")
    p.add_argument("--random", type=int, default=0, metavar="COUNT", help="also verify COUNT generated diagrams")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("generate", parents=[common, gen], help="random diagrams")
    p.add_argument("--out", help="directory to write one file per diagram")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("rewrite", help="apply a local move and print the new diagram")
    moves = p.add_subparsers(dest="move", required=True)
    m = moves.add_parser("r1", parents=[common])
    m.add_argument("diagram")
    m.add_argument("edge", help="edge label, or Ok for crossingless loop k")
    m.add_argument("--side", choices=("left", "right"), default="right")
    m.add_argument("--sign", type=int, choices=(1, -1), default=1)
    m = moves.add_parser("r2", parents=[common])
    m.add_argument("diagram")
    m.add_argument("edge1", type=int)
    m.add_argument("edge2", type=int)
    m.add_argument("--face", type=int)
    m = moves.add_parser("loop", parents=[common])
    m.add_argument("diagram")
    m.add_argument("--dotted", action="store_true")
    m = moves.add_parser("remove", parents=[common])
    m.add_argument("diagram")
    m.add_argument("crossing", type=int)
    p.set_defaults(func=_cmd_rewrite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RewriteError, CoefficientOverflow) as exc:
        print(f"annulink: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
