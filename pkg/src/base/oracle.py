"""Membership of ultimately periodic words via product graphs.

The product of an automaton with the positions of ``u·v^ω`` is finite, and a
run is accepting iff its set of infinitely visited product nodes, a strongly
connected set, satisfies the lifted acceptance condition. Each acceptance type
gets its own nonemptiness check on the reachable product.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable

import networkx as nx
from loguru import logger

from src.base.base import ProductGraph, ProductNode
from src.base.words import check_alphabet
from src.classes import AcceptanceCondition, AcceptancePair, OmegaAutomaton, UltimatelyPeriodicWord
from src.exceptions import InvalidAutomatonError

Component = tuple[frozenset, bool]


def scc_decompose(G: nx.DiGraph) -> list[Component]:
    """Partition ``G`` into maximal strongly connected components.

    Returns
    -------
    list[tuple[frozenset, bool]]
        ``(nodes, nontrivial)`` per component; a component is nontrivial when it
        contains at least one internal edge (a cycle or a self-loop).
    """
    components = []
    for nodes in nx.strongly_connected_components(G):
        if len(nodes) > 1:
            nontrivial = True
        else:
            (node,) = nodes
            nontrivial = G.has_edge(node, node)
        components.append((frozenset(nodes), nontrivial))
    return components


def accepts_inf(acceptance: AcceptanceCondition, inf: frozenset[int]) -> bool:
    """Evaluate the acceptance predicate on the set of infinitely visited states."""
    pairs = acceptance.pairs
    match acceptance.type:
        case "buchi":
            return bool(inf & acceptance.final)
        case "genbuchi":
            return all(inf & p.B for p in pairs)
        case "streett" | "parity":
            return all(not (inf & p.G) or bool(inf & p.B) for p in pairs)
        case "rabin":
            return any(inf & p.G and not (inf & p.B) for p in pairs)
    raise ValueError(f"Unsupported acceptance type '{acceptance.type}'")


class BaseEmptiness(ABC):

    @classmethod
    @abstractmethod
    def nonempty_buchi(cls, g: ProductGraph, acceptance: AcceptanceCondition) -> bool:
        """Return True iff a reachable cycle visits the final set."""
        raise NotImplementedError

    @classmethod
    @abstractmethod
    def nonempty_genbuchi(cls, g: ProductGraph, acceptance: AcceptanceCondition) -> bool:
        """Return True iff a reachable cycle visits every B set."""
        raise NotImplementedError

    @classmethod
    @abstractmethod
    def nonempty_streett(cls, g: ProductGraph, pairs: Iterable[AcceptancePair]) -> bool:
        """Return True iff a reachable cycle satisfies every Streett pair."""
        raise NotImplementedError

    @classmethod
    @abstractmethod
    def nonempty_rabin(cls, g: ProductGraph, pairs: Iterable[AcceptancePair]) -> bool:
        """Return True iff a reachable cycle satisfies some Rabin pair."""
        raise NotImplementedError


class ProductEmptiness(BaseEmptiness):
    """SCC-based nonemptiness checks on reachable product graphs."""

    @classmethod
    def nonempty_buchi(cls, g: ProductGraph, acceptance: AcceptanceCondition) -> bool:
        final = g.lift(acceptance.final)
        return any(nontrivial and nodes & final for nodes, nontrivial in scc_decompose(g.graph))

    @classmethod
    def nonempty_genbuchi(cls, g: ProductGraph, acceptance: AcceptanceCondition) -> bool:
        lifted = [g.lift(p.B) for p in acceptance.pairs]
        return any(
            nontrivial and all(nodes & b for b in lifted) for nodes, nontrivial in scc_decompose(g.graph)
        )

    @classmethod
    def nonempty_streett(cls, g: ProductGraph, pairs: Iterable[AcceptancePair]) -> bool:
        lifted = [(g.lift(p.G), g.lift(p.B)) for p in pairs]
        return cls._streett_search(g.graph, lifted)

    @classmethod
    def _streett_search(cls, G: nx.DiGraph, lifted: list[tuple[set[ProductNode], set[ProductNode]]]) -> bool:
        # A component violating pair i (sees G(i), misses B(i)) can only host
        # accepting cycles that avoid G(i); drop those nodes and recurse.
        for nodes, nontrivial in scc_decompose(G):
            if not nontrivial:
                continue
            violated: set[ProductNode] = set()
            for good, bad in lifted:
                if nodes & good and not nodes & bad:
                    violated |= nodes & good
            if not violated:
                return True
            if cls._streett_search(G.subgraph(nodes - violated), lifted):
                return True
        return False

    @classmethod
    def nonempty_rabin(cls, g: ProductGraph, pairs: Iterable[AcceptancePair]) -> bool:
        for p in pairs:
            good = g.lift(p.G)
            if not good:
                continue
            kept = g.graph.subgraph(set(g.graph) - g.lift(p.B))
            if any(nontrivial and nodes & good for nodes, nontrivial in scc_decompose(kept)):
                return True
        return False

    @classmethod
    def nonempty_parity(cls, g: ProductGraph, acceptance: AcceptanceCondition) -> bool:
        return cls.nonempty_streett(g, acceptance.pairs)


emptiness_map: dict[str, Callable[[ProductGraph, AcceptanceCondition], bool]] = {
    "buchi": ProductEmptiness.nonempty_buchi,
    "genbuchi": ProductEmptiness.nonempty_genbuchi,
    "streett": lambda g, acc: ProductEmptiness.nonempty_streett(g, acc.pairs),
    "parity": ProductEmptiness.nonempty_parity,
    "rabin": lambda g, acc: ProductEmptiness.nonempty_rabin(g, acc.pairs),
}


def member(a: OmegaAutomaton, w: UltimatelyPeriodicWord) -> bool:
    """Return True iff some run of ``a`` over ``u·v^ω`` is accepting.

    Raises
    ------
    AutomatonError
        If ``w`` uses letters outside the alphabet of ``a``.
    """
    check_alphabet(w, a.alphabet_size)
    g = ProductGraph(a, w)
    return emptiness_map[a.type](g, a.acceptance)


def member_deterministic(a: OmegaAutomaton, w: UltimatelyPeriodicWord) -> bool:
    """Membership for deterministic automata by simulating the unique run.

    The run is followed until a (state, position) pair repeats; the states on
    the repeated stretch are exactly the infinitely visited ones. A missing
    transition ends the run, which then rejects.
    """
    check_alphabet(w, a.alphabet_size)
    if len(a.initial) != 1:
        raise InvalidAutomatonError("member_deterministic needs exactly one initial state")
    (q,) = a.initial
    position = 0
    seen: dict[tuple[int, int], int] = {}
    trail: list[int] = []
    while (q, position) not in seen:
        seen[(q, position)] = len(trail)
        trail.append(q)
        successors = a.successors(q, w.letter_at(position))
        if not successors:
            return False
        if len(successors) > 1:
            raise InvalidAutomatonError(f"state {q} is nondeterministic on letter {w.letter_at(position)}")
        (q,) = successors
        position = w.next_position(position)
    return accepts_inf(a.acceptance, frozenset(trail[seen[(q, position)] :]))


LoopRun = tuple[int, frozenset[int]]


def _loop_runs(a: OmegaAutomaton, w: UltimatelyPeriodicWord, q: int, allowed: frozenset[int]) -> set[LoopRun]:
    """Runs over one copy of the loop from ``q`` that stay inside ``allowed``.

    Each run is reported as ``(end state, states visited on the way)``.
    """
    runs = {(q, frozenset({q}))}
    for letter in w.loop:
        runs = {(t, seen | {t}) for p, seen in runs for t in a.successors(p, letter) if t in allowed}
    return runs


def _loop_entries(a: OmegaAutomaton, w: UltimatelyPeriodicWord) -> set[int]:
    """States some run occupies at the start of some copy of the loop."""
    entries = set(a.initial)
    for letter in w.prefix:
        entries = {t for p in entries for t in a.successors(p, letter)}
    everything = frozenset(range(a.states))
    stack = list(entries)
    while stack:
        for t, _ in _loop_runs(a, w, stack.pop(), everything):
            if t not in entries:
                entries.add(t)
                stack.append(t)
    return entries


def _closes_on(a: OmegaAutomaton, w: UltimatelyPeriodicWord, x: int, inf: frozenset[int]) -> bool:
    """True iff some sequence of loop copies leads from ``x`` back to ``x`` visiting exactly ``inf``."""
    start = (x, frozenset())
    seen = {start}
    stack = [start]
    while stack:
        q, covered = stack.pop()
        for t, visited in _loop_runs(a, w, q, inf):
            node = (t, covered | visited)
            if t == x and node[1] == inf:
                return True
            if node not in seen:
                seen.add(node)
                stack.append(node)
    return False


def member_bruteforce(a: OmegaAutomaton, w: UltimatelyPeriodicWord, max_states: int = 12) -> bool:
    """Reference membership by lasso enumeration, sharing nothing with the product graph.

    Every run of ``u·v^ω`` is a prefix over ``u`` followed by runs over copies
    of ``v``. A set ``S`` is the infinity set of some run iff a state ``x`` in
    ``S`` is entered at a loop start and copies of ``v`` lead from ``x`` back
    to ``x`` while visiting exactly ``S``. Every candidate ``S`` that the
    acceptance predicate allows is tried. Exponential in the number of states;
    meant for differential testing.
    """
    check_alphabet(w, a.alphabet_size)
    if a.states > max_states:
        raise InvalidAutomatonError(f"brute force limited to {max_states} states, got {a.states}")
    entries = _loop_entries(a, w)
    for size in range(1, a.states + 1):
        for candidate in itertools.combinations(range(a.states), size):
            inf = frozenset(candidate)
            if not accepts_inf(a.acceptance, inf):
                continue
            if any(_closes_on(a, w, x, inf) for x in sorted(entries & inf)):
                logger.debug(f"Word {w} accepted with infinity set {sorted(inf)}")
                return True
    return False
