"""Batch front end: decide words, build machines, check engines, trace.

Exit codes are a stable contract: 0 trivial (or clean run), 1
nontrivial, 2 engine disagreement, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import harness, higman
from .automata import (SemiDetPda, find_accepting_run, semidet_witness_run)
from .constructions import format_report
from .errors import CowordsError
from .words import parse_word

_USAGE_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(_USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="cowords",
                     description="Co-word problem engines for Houghton "
                                 "and Higman-Thompson groups.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def add_group_flags(p: _Parser) -> None:
        p.add_argument("--group", required=True,
                       choices=("houghton", "hou-free", "higman"))
        p.add_argument("--n", type=int, default=None,
                       help="ray count (houghton) or arity (higman)")
        p.add_argument("--rank", type=int, default=None,
                       help="free group rank (hou-free)")
        p.add_argument("--r", type=int, default=None,
                       help="root count (higman)")
        p.add_argument("--gens", default="default",
                       help="generator table path or 'default' (higman)")

    decide = sub.add_parser("decide", help="classify one word")
    add_group_flags(decide)
    decide.add_argument("--engine", default="both",
                        choices=("oracle", "automaton", "both"))
    decide.add_argument("word", help="whitespace-separated letters")

    build = sub.add_parser("build", help="write machine files")
    add_group_flags(build)
    build.add_argument("--out", required=True, help="output directory")

    check = sub.add_parser("check", help="oracle versus machine sweep")
    add_group_flags(check)
    check.add_argument("--max-len", type=int, default=4)
    check.add_argument("--sample", type=int, default=0,
                       help="extra random words up to twice max-len")
    check.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)

    trace = sub.add_parser("trace", help="prefix-by-prefix point images")
    add_group_flags(trace)
    trace.add_argument("--point", default=None,
                       help="ray point '0' or '(k,l)'; vertex word or "
                            "'eps'; sequence 'q<i>' or 'q<i>.<digits>'")
    trace.add_argument("word", help="whitespace-separated letters")

    return parser


def _load_handle(args: argparse.Namespace) -> harness.GroupHandle:
    if args.group == "houghton":
        if args.n is None:
            raise CowordsError("houghton needs --n")
        return harness.houghton_handle(args.n)
    if args.group == "hou-free":
        if args.rank is None:
            raise CowordsError("hou-free needs --rank")
        return harness.hou_free_handle(args.rank)
    if args.gens == "default":
        n, r, gens = higman.default_generators()
    else:
        n, r, gens = higman.parse_generator_table(
            Path(args.gens).read_text(encoding="utf-8"))
    if args.n is not None and args.n != n:
        raise CowordsError(f"table has arity {n}, --n says {args.n}")
    if args.r is not None and args.r != r:
        raise CowordsError(f"table has {r} roots, --r says {args.r}")
    return harness.higman_handle(n, r, gens)


def _tokens(handle: harness.GroupHandle, text: str) -> tuple[str, ...]:
    return parse_word(text, handle.alphabet).letter_names()


def cmd_decide(args: argparse.Namespace) -> int:
    handle = _load_handle(args)
    word = _tokens(handle, args.word)
    if args.engine != "both":
        verdict = handle.engine(args.engine)(word)
        print("nontrivial" if verdict else "trivial")
        return 1 if verdict else 0
    oracle = handle.nontrivial(word)
    machine = handle.automaton(word)
    if oracle != machine:
        print(f"oracle: {'nontrivial' if oracle else 'trivial'}")
        print(f"automaton: {'nontrivial' if machine else 'trivial'}")
        print("disagreement")
        return 2
    print("nontrivial" if oracle else "trivial")
    return 1 if oracle else 0


def cmd_build(args: argparse.Namespace) -> int:
    handle = _load_handle(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = ("machine", "coword")
    for name, report in zip(names, handle.reports):
        path = out / f"{handle.file_stem}-{name}.txt"
        path.write_text(format_report(report), encoding="utf-8")
        print(path)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    if args.max_len < 0:
        raise CowordsError("--max-len must be nonnegative")
    handle = _load_handle(args)
    outcome = harness.check_handle(handle, args.max_len,
                                   sample=args.sample, seed=args.seed)
    print(f"group {handle.label}")
    print(f"exhaustive: {outcome.exhaustive} words up to length "
          f"{args.max_len}")
    if outcome.sampled:
        print(f"sampled: {outcome.sampled} words up to length "
              f"{2 * args.max_len} (seed {args.seed})")
    print(f"disagreements: {len(outcome.disagreements)}")
    for w in outcome.disagreements:
        print("disagree: " + (" ".join(w) if w else "eps"))
    return 0 if outcome.ok else 2


def _default_point(group: str) -> str:
    return {"houghton": "0", "hou-free": "eps", "higman": "q1"}[group]


def cmd_trace(args: argparse.Namespace) -> int:
    handle = _load_handle(args)
    word = _tokens(handle, args.word)
    point = args.point if args.point is not None else _default_point(
        args.group)
    images = handle.point_images(word, point)
    print(f"step 0: {images[0]}")
    for i, (token, image) in enumerate(zip(word, images[1:]), start=1):
        print(f"step {i}: {token} -> {image}")
    machine = handle.reports[0].machine
    if isinstance(machine, SemiDetPda):
        witness = semidet_witness_run(machine, word)
        if witness is None:
            print("machine: no accepting run")
            return 0
        seed, steps = witness
        print("machine: accepts with preamble "
              + (" ".join(seed) if seed else "eps"))
        run = steps
    else:
        bound = harness.sim_bound(len(word))
        run = find_accepting_run(machine, word, bound)
        if run is None:
            print(f"machine: no accepting run within stack bound {bound}")
            return 0
        print("machine: accepts")
    for step in run:
        consumed = step.consumed if step.consumed is not None else "eps"
        print(f"  {consumed:>8}  {step.state:<10} "
              + " ".join(step.stack))
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    commands = {"decide": cmd_decide, "build": cmd_build,
                "check": cmd_check, "trace": cmd_trace}
    try:
        return commands[args.command](args)
    except CowordsError as exc:
        print(f"cowords: error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    except OSError as exc:
        print(f"cowords: error: {exc}", file=sys.stderr)
        return _USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
