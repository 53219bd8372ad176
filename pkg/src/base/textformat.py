"""Reader and writer for the line-based automaton text format.

::

    automaton <buchi|genbuchi|streett|parity|rabin>
    alphabet <m>
    states <n>
    initial <q> [<q> ...]
    trans <q> <letter> <q'>
    pairs <k>
    G <i>: [<q> ...]
    B <i>: [<q> ...]
    end

``#`` starts a comment. Header lines must precede the lines that refer to
the ids they declare.
"""

from __future__ import annotations

from pathlib import Path
from typing import get_args

from src.classes import AcceptanceCondition, AcceptancePair, AcceptanceType, OmegaAutomaton
from src.exceptions import AutomatonFormatError

USES_G = ("streett", "parity", "rabin")
HEADER_KEYWORDS = ("automaton", "alphabet", "states", "initial", "pairs")


def _int(token: str, line: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise AutomatonFormatError(line, f"expected integer {what}, got '{token}'") from None
    if value < 0:
        raise AutomatonFormatError(line, f"{what} must be non-negative, got {value}")
    return value


class _Parser:
    def __init__(self) -> None:
        self.header: dict[str, int] = {}
        self.type: AcceptanceType | None = None
        self.alphabet: int | None = None
        self.states: int | None = None
        self.initial: set[int] = set()
        self.edges: list[tuple[int, int, int]] = []
        self.k: int | None = None
        self.sets: dict[tuple[str, int], frozenset[int]] = {}
        self.ended = False

    def _need(self, attr: str, line: int, keyword: str) -> int:
        value = getattr(self, attr)
        if value is None:
            declared_by = "pairs" if attr == "k" else attr
            raise AutomatonFormatError(line, f"'{keyword}' before '{declared_by}' is declared")
        return value

    def _state(self, token: str, line: int) -> int:
        q = _int(token, line, "state")
        n = self._need("states", line, "state reference")
        if q >= n:
            raise AutomatonFormatError(line, f"state {q} out of range [0..{n})")
        return q

    def feed(self, keyword: str, args: list[str], rest: str, line: int) -> None:
        if self.ended:
            raise AutomatonFormatError(line, "content after 'end'")
        if keyword in HEADER_KEYWORDS:
            if keyword in self.header:
                raise AutomatonFormatError(line, f"duplicate '{keyword}' (first on line {self.header[keyword]})")
            self.header[keyword] = line
        match keyword:
            case "automaton":
                if len(args) != 1 or args[0] not in get_args(AcceptanceType):
                    raise AutomatonFormatError(line, f"unknown automaton type '{' '.join(args)}'")
                self.type = args[0]  # type: ignore[assignment]
            case "alphabet" | "states" | "pairs":
                if len(args) != 1:
                    raise AutomatonFormatError(line, f"'{keyword}' takes exactly one integer")
                value = _int(args[0], line, keyword)
                if keyword == "alphabet":
                    self.alphabet = value
                elif keyword == "states":
                    self.states = value
                else:
                    self.k = value
            case "initial":
                if not args:
                    raise AutomatonFormatError(line, "'initial' needs at least one state")
                self.initial = {self._state(t, line) for t in args}
            case "trans":
                if len(args) != 3:
                    raise AutomatonFormatError(line, "'trans' takes <q> <letter> <q'>")
                q = self._state(args[0], line)
                letter = _int(args[1], line, "letter")
                m = self._need("alphabet", line, "trans")
                if letter >= m:
                    raise AutomatonFormatError(line, f"letter {letter} out of range [0..{m})")
                self.edges.append((q, letter, self._state(args[2], line)))
            case "G" | "B":
                self._set_line(keyword, rest, line)
            case "end":
                if args:
                    raise AutomatonFormatError(line, "'end' takes no arguments")
                self.ended = True
            case _:
                raise AutomatonFormatError(line, f"unknown keyword '{keyword}'")

    def _set_line(self, keyword: str, rest: str, line: int) -> None:
        acc_type = self.type
        if acc_type is None:
            raise AutomatonFormatError(line, f"'{keyword}' before 'automaton' is declared")
        if keyword == "G" and acc_type not in USES_G:
            raise AutomatonFormatError(line, f"G sets are not allowed for {acc_type} automata")
        k = self._need("k", line, keyword)
        index_text, sep, members = rest.partition(":")
        if not sep:
            raise AutomatonFormatError(line, f"expected '{keyword} <i>: [<q> ...]'")
        i = _int(index_text.strip(), line, "pair index")
        if not 1 <= i <= k:
            raise AutomatonFormatError(line, f"pair index {i} out of range [1..{k}]")
        if (keyword, i) in self.sets:
            raise AutomatonFormatError(line, f"duplicate '{keyword} {i}'")
        self.sets[(keyword, i)] = frozenset(self._state(t, line) for t in members.split())

    def finish(self, last_line: int) -> OmegaAutomaton:
        if not self.ended:
            raise AutomatonFormatError(last_line, "missing 'end'")
        for keyword in HEADER_KEYWORDS:
            if keyword not in self.header:
                raise AutomatonFormatError(last_line, f"missing '{keyword}'")
        acc_type = self.type
        k = self.k or 0
        if acc_type == "buchi" and k != 1:
            raise AutomatonFormatError(self.header["pairs"], f"buchi automata need 'pairs 1', got {k}")
        pairs = []
        for i in range(1, k + 1):
            if ("B", i) not in self.sets:
                raise AutomatonFormatError(last_line, f"missing 'B {i}'")
            if acc_type in USES_G and ("G", i) not in self.sets:
                raise AutomatonFormatError(last_line, f"missing 'G {i}'")
            pairs.append(AcceptancePair(G=self.sets.get(("G", i), frozenset()), B=self.sets[("B", i)]))
        return OmegaAutomaton.from_edges(
            self.alphabet or 0,
            self.states or 0,
            self.initial,
            self.edges,
            AcceptanceCondition(type=acc_type, pairs=tuple(pairs)),  # type: ignore[arg-type]
        )


def parse_automaton(text: str) -> OmegaAutomaton:
    """Parse the text format.

    Raises
    ------
    AutomatonFormatError
        On unknown keywords, out-of-range ids, duplicate declarations or a missing ``end``.
    """
    parser = _Parser()
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        keyword, *remainder = content.split(maxsplit=1)
        rest = remainder[0] if remainder else ""
        parser.feed(keyword, rest.split(), rest, line_no)
    return parser.finish(max(line_no, 1))


def load_automaton(path: str | Path) -> OmegaAutomaton:
    with open(path, encoding="utf-8") as f:
        return parse_automaton(f.read())


def _states(states: frozenset[int]) -> str:
    return " ".join(str(q) for q in sorted(states))


def dump_automaton(a: OmegaAutomaton) -> str:
    """Render ``a`` in the text format; ``parse_automaton`` reads it back unchanged."""
    lines = [
        f"automaton {a.type}",
        f"alphabet {a.alphabet_size}",
        f"states {a.states}",
        f"initial {_states(a.initial)}",
    ]
    lines.extend(f"trans {q} {letter} {target}" for q, letter, target in a.edges())
    lines.append(f"pairs {a.k}")
    for set_name, i, states in a.acceptance.state_sets():
        lines.append(f"{set_name} {i}: {_states(states)}".rstrip())
    lines.append("end")
    return "\n".join(lines) + "\n"
