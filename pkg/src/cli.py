"""Command-line front end.

Every subcommand reads automata in the text format and writes machine-readable
output to stdout; diagnostics go to stderr through loguru. Exit codes: 0 on
success (and for an accepted word), 1 for a rejected word or a found
counterexample, 2 for parse, validation and usage errors, 3 when the
exploration cap is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import get_args

from loguru import logger
from pydantic import ValidationError

from src.base.automaton import as_streett, require_valid
from src.base.base import automaton_graph, to_dot
from src.base.construct import complement, determinize, determinizer_map
from src.base.equivalence import check_equivalence
from src.base.generator import random_automaton
from src.base.its import build_its, count_paths, its_dot, render_its
from src.base.oracle import member
from src.base.safra_improved import ImprovedDeterminizer
from src.base.safra_tree import trees_dot
from src.base.textformat import dump_automaton, load_automaton
from src.base.words import parse_word
from src.classes import AcceptanceType, DeterminizeSettings, OmegaAutomaton
from src.exceptions import AutomatonError, ExplorationLimitError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_CAP = 3

STATS_FIELDS = ("n", "k", "mu", "algo", "states", "index_size", "max_nodes", "max_spine", "seconds")

_defaults = DeterminizeSettings()


def configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {out}")


def _load(path: str) -> OmegaAutomaton:
    return require_valid(load_automaton(path))


def _spine_bound(a: OmegaAutomaton, algo: str) -> int:
    if algo == "improved":
        return ImprovedDeterminizer(a).mu
    k = a.k if a.type == "rabin" else max(as_streett(a).k, 1)
    return min(a.states, k)


def cmd_determinize(args: argparse.Namespace) -> int:
    a = _load(args.file)
    result = determinize(a, args.algo, args.cap)
    _emit(dump_automaton(result.automaton), args.out)
    if args.dict:
        Path(args.dict).write_text(result.dictionary_lines(), encoding="utf-8")
    summary = f"states={result.states} index_size={result.index_size}\n"
    # stdout is taken by the automaton unless it went to a file
    (sys.stdout if args.out else sys.stderr).write(summary)
    return EXIT_OK


def cmd_complement(args: argparse.Namespace) -> int:
    dual = complement(_load(args.file), args.algo, args.cap)
    _emit(dump_automaton(dual), args.out)
    return EXIT_OK


def cmd_member(args: argparse.Namespace) -> int:
    a = _load(args.file)
    word = parse_word(args.word, a.alphabet_size)
    accepted = member(a, word)
    print("accept" if accepted else "reject")
    return EXIT_OK if accepted else EXIT_NEGATIVE


def cmd_equiv(args: argparse.Namespace) -> int:
    result = check_equivalence(
        _load(args.file_a),
        _load(args.file_b),
        samples=args.samples,
        maxlen=args.maxlen,
        exhaustive=args.exhaustive,
        seed=args.seed,
    )
    if result.equivalent:
        print(f"equivalent on tested set ({result.tested} words)")
        return EXIT_OK
    print(f"counterexample {result.counterexample}")
    return EXIT_NEGATIVE


def cmd_random(args: argparse.Namespace) -> int:
    a = random_automaton(args.type, args.n, args.k, args.alphabet, args.density, args.seed)
    _emit(dump_automaton(a), args.out)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    a = _load(args.file)
    started = time.perf_counter()
    result = determinize(a, args.algo, args.cap)
    seconds = time.perf_counter() - started
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if not args.no_header:
        writer.writerow(STATS_FIELDS)
    writer.writerow(
        [
            a.states,
            a.k,
            _spine_bound(a, args.algo),
            args.algo,
            result.states,
            result.index_size,
            result.max_nodes,
            result.max_spine,
            f"{seconds:.4f}",
        ]
    )
    return EXIT_OK


def cmd_dot(args: argparse.Namespace) -> int:
    a = _load(args.file)
    if args.trees:
        if args.algo == "rabin":
            raise AutomatonError("tree export needs the classic or improved construction")
        text = trees_dot(determinize(a, args.algo, args.cap).trees)
    else:
        text = to_dot(automaton_graph(a))
    _emit(text, args.out)
    return EXIT_OK


def cmd_its(args: argparse.Namespace) -> int:
    a = _load(args.file)
    family = a.acceptance.b_family() if a.type == "rabin" else as_streett(a).acceptance.b_family()
    T = build_its(a.states, len(family), family)
    logger.info(f"ITS with {T.number_of_nodes()} nodes and {count_paths(T)} paths")
    _emit(its_dot(T) if args.dot else render_its(T), args.out)
    return EXIT_OK


def _add_construction_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", choices=sorted(determinizer_map), default=_defaults.algo, help="construction to run")
    p.add_argument("--cap", type=int, default=_defaults.cap, help="maximum number of explored states")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="safra", description="Determinize omega-automata with Safra trees")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("determinize", help="write an equivalent deterministic Rabin automaton")
    p.add_argument("file")
    _add_construction_flags(p)
    p.add_argument("--out", "-o", help="output file (default stdout)")
    p.add_argument("--dict", help="write one JSON line per output state with its tree")
    p.set_defaults(handler=cmd_determinize)

    p = sub.add_parser("complement", help="write a deterministic Streett automaton for the complement")
    p.add_argument("file")
    _add_construction_flags(p)
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_complement)

    p = sub.add_parser("member", help="decide acceptance of an ultimately periodic word")
    p.add_argument("file")
    p.add_argument("--word", "-w", required=True, help="'u;v' with space separated integer letters")
    p.set_defaults(handler=cmd_member)

    p = sub.add_parser("equiv", help="compare two automata on sampled or all short words")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--maxlen", type=int, default=4)
    p.add_argument("--exhaustive", type=int, metavar="L", help="test every word with |u| <= L and 1 <= |v| <= L")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("random", help="generate a seeded random automaton")
    p.add_argument("--type", choices=get_args(AcceptanceType), default="streett")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_random)

    p = sub.add_parser("stats", help="print one CSV row of construction statistics")
    p.add_argument("file")
    _add_construction_flags(p)
    p.add_argument("--no-header", action="store_true")
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("dot", help="export the automaton or its reachable trees as DOT")
    p.add_argument("file")
    p.add_argument("--trees", action="store_true", help="draw every reachable tree instead of the automaton")
    _add_construction_flags(p)
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_dot)

    p = sub.add_parser("its", help="print the increasing tree of sets of the B family")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_its)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except ExplorationLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (AutomatonError, ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
