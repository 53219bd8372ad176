"""Determinization of nondeterministic Rabin automata.

Each Rabin pair is turned into a Buchi automaton that guesses the point after
which ``B(i)`` is avoided. The per-pair automata are determinized with the
improved construction, completed, and run in lockstep; the product accepts
when any component does.
"""

from __future__ import annotations

from collections.abc import Iterator

from loguru import logger

from src.base.automaton import complete_deterministic, require_valid
from src.base.determinize import DEFAULT_CAP, DeterminizationResult
from src.base.safra_improved import determinize_improved
from src.classes import AcceptanceCondition, AcceptancePair, OmegaAutomaton
from src.exceptions import ExplorationLimitError, InvalidAutomatonError


def rabin_pair_to_buchi(a: OmegaAutomaton, i: int) -> OmegaAutomaton:
    """Buchi automaton accepting the words with a run that satisfies pair ``i``.

    States ``0..n-1`` copy ``a``. States ``n..2n-1`` copy it again without the
    ``B(i)`` states; any transition of the first copy may also jump into the
    second. The final set is ``G(i) \\ B(i)`` inside the second copy.
    """
    if a.type != "rabin":
        raise InvalidAutomatonError(f"expected rabin acceptance, got {a.type}")
    pair = a.acceptance.pair(i)
    n = a.states
    edges = []
    for q, letter, target in a.edges():
        edges.append((q, letter, target))
        if target not in pair.B:
            edges.append((q, letter, target + n))
            if q not in pair.B:
                edges.append((q + n, letter, target + n))
    final = {q + n for q in pair.G - pair.B}
    return OmegaAutomaton.from_edges(a.alphabet_size, 2 * n, a.initial, edges, AcceptanceCondition.buchi(final))


def _lift(
    pairs: tuple[AcceptancePair, ...], coordinate: int, states: list[tuple[int, ...]]
) -> Iterator[AcceptancePair]:
    for p in pairs:
        yield AcceptancePair(
            G=frozenset(s for s, tup in enumerate(states) if tup[coordinate] in p.G),
            B=frozenset(s for s, tup in enumerate(states) if tup[coordinate] in p.B),
        )


def determinize_rabin(a: OmegaAutomaton, cap: int = DEFAULT_CAP) -> DeterminizationResult:
    """Deterministic Rabin automaton for a nondeterministic Rabin automaton.

    Raises
    ------
    InvalidAutomatonError
        If ``a`` is not a valid Rabin automaton.
    ExplorationLimitError
        If a component or the product grows beyond ``cap`` states.
    """
    require_valid(a)
    if a.type != "rabin":
        raise InvalidAutomatonError(f"rabin determinization needs rabin input, got {a.type}")
    m = a.alphabet_size
    if a.k == 0:
        rejecting = OmegaAutomaton.from_edges(
            m, 1, {0}, [(0, letter, 0) for letter in range(m)], AcceptanceCondition(type="rabin")
        )
        return DeterminizationResult(automaton=rejecting, algo="rabin", labels=["()"])

    components = []
    for i in range(1, a.k + 1):
        result = determinize_improved(rabin_pair_to_buchi(a, i), cap)
        components.append(complete_deterministic(result.automaton))
        logger.debug(f"Rabin pair {i}: component with {components[-1].states} states")

    def successor(tup: tuple[int, ...], letter: int) -> tuple[int, ...]:
        return tuple(next(iter(c.successors(q, letter))) for c, q in zip(components, tup))

    start = tuple(next(iter(c.initial)) for c in components)
    ids = {start: 0}
    states = [start]
    rows = []
    for tup in states:
        row = []
        for letter in range(m):
            nxt = successor(tup, letter)
            if nxt not in ids:
                if len(states) >= cap:
                    logger.warning(f"rabin product stopped at {len(states)} states")
                    raise ExplorationLimitError(cap)
                ids[nxt] = len(states)
                states.append(nxt)
            row.append(frozenset({ids[nxt]}))
        rows.append(tuple(row))

    pairs = tuple(p for c, comp in enumerate(components) for p in _lift(comp.acceptance.pairs, c, states))
    automaton = OmegaAutomaton(
        alphabet_size=m,
        states=len(states),
        initial=frozenset({0}),
        transitions=tuple(rows),
        acceptance=AcceptanceCondition(type="rabin", pairs=pairs),
    )
    logger.info(f"rabin determinization: {len(states)} states, index size {len(pairs)}")
    return DeterminizationResult(
        automaton=automaton, algo="rabin", labels=[" ".join(map(str, tup)) for tup in states]
    )
