"""Algorithm dispatch and complementation."""

from __future__ import annotations

from collections.abc import Callable

from loguru import logger

from src.base.automaton import complete_deterministic, dualize_deterministic
from src.base.determinize import DEFAULT_CAP, DeterminizationResult
from src.base.rabin import determinize_rabin
from src.base.safra_classic import determinize_classic
from src.base.safra_improved import determinize_improved
from src.classes import Algorithm, OmegaAutomaton
from src.exceptions import InvalidAutomatonError

determinizer_map: dict[str, Callable[[OmegaAutomaton, int], DeterminizationResult]] = {
    "classic": determinize_classic,
    "improved": determinize_improved,
    "rabin": determinize_rabin,
}


def determinize(a: OmegaAutomaton, algo: Algorithm = "improved", cap: int = DEFAULT_CAP) -> DeterminizationResult:
    """Run the named construction.

    Raises
    ------
    InvalidAutomatonError
        If the algorithm does not accept the automaton's acceptance type.
    ExplorationLimitError
        If the construction reaches more than ``cap`` states.
    """
    if algo not in determinizer_map:
        raise InvalidAutomatonError(f"unknown algorithm '{algo}', choose from {sorted(determinizer_map)}")
    if (algo == "rabin") != (a.type == "rabin"):
        raise InvalidAutomatonError(f"algorithm '{algo}' cannot determinize {a.type} automata")
    return determinizer_map[algo](a, cap)


def complement(a: OmegaAutomaton, algo: Algorithm = "improved", cap: int = DEFAULT_CAP) -> OmegaAutomaton:
    """Deterministic Streett automaton for the complement of ``L(a)``."""
    result = determinize(a, algo, cap)
    dual = dualize_deterministic(complete_deterministic(result.automaton))
    logger.info(f"Complement of {a.type} automaton has {dual.states} states")
    return dual
