"""Seeded random automata for experiments and differential tests."""

from __future__ import annotations

import random

from src.base.automaton import merge_equal_b
from src.classes import AcceptanceCondition, AcceptancePair, AcceptanceType, OmegaAutomaton
from src.exceptions import AutomatonError


def _random_set(rng: random.Random, n: int) -> frozenset[int]:
    return frozenset(q for q in range(n) if rng.random() < 0.5)


def _parity_chain(rng: random.Random, n: int, k: int) -> tuple[AcceptancePair, ...]:
    # Cumulative unions, forced to grow by the smallest missing state.
    chain: list[frozenset[int]] = []
    current = _random_set(rng, n)
    chain.append(current)
    while len(chain) < 2 * k:
        grown = current | _random_set(rng, n)
        if grown == current:
            missing = sorted(set(range(n)) - current)
            if not missing:
                break
            grown = current | {missing[0]}
        chain.append(grown)
        current = grown
    if len(chain) % 2:
        chain.pop()
    return tuple(AcceptancePair(B=chain[j], G=chain[j + 1]) for j in range(0, len(chain), 2))


def random_automaton(
    acceptance_type: AcceptanceType,
    n: int,
    k: int,
    alphabet: int,
    density: float,
    seed: int,
) -> OmegaAutomaton:
    """Draw an automaton; the same arguments always give the same automaton.

    Each transition ``(q, a, q')`` is present with probability ``density`` and
    each acceptance set holds each state with probability 1/2. Buchi forces a
    single set, Streett pairs with equal B sets are merged and parity sets
    are repaired into a strict chain, which may lower ``k``.

    Raises
    ------
    AutomatonError
        If a size is not positive or ``density`` is outside ``(0, 1]``.
    """
    if n < 1 or alphabet < 1 or k < 0:
        raise AutomatonError(f"need n >= 1, alphabet >= 1 and k >= 0, got n={n}, alphabet={alphabet}, k={k}")
    if not 0 < density <= 1:
        raise AutomatonError(f"density must lie in (0, 1], got {density}")
    rng = random.Random(seed)
    edges = [
        (q, letter, target)
        for q in range(n)
        for letter in range(alphabet)
        for target in range(n)
        if rng.random() < density
    ]
    initial = {q for q in range(n) if rng.random() < 0.5} or {rng.randrange(n)}

    match acceptance_type:
        case "buchi":
            pairs: tuple[AcceptancePair, ...] = (AcceptancePair(B=_random_set(rng, n)),)
        case "genbuchi":
            pairs = tuple(AcceptancePair(B=_random_set(rng, n)) for _ in range(k))
        case "streett":
            pairs = merge_equal_b(AcceptancePair(G=_random_set(rng, n), B=_random_set(rng, n)) for _ in range(k))
        case "rabin":
            pairs = tuple(AcceptancePair(G=_random_set(rng, n), B=_random_set(rng, n)) for _ in range(k))
        case "parity":
            pairs = _parity_chain(rng, n, k)
        case _:
            raise AutomatonError(f"unknown acceptance type '{acceptance_type}'")
    return OmegaAutomaton.from_edges(alphabet, n, initial, edges, AcceptanceCondition(type=acceptance_type, pairs=pairs))
