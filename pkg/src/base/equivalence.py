"""Language comparison on finite sets of ultimately periodic words."""

from __future__ import annotations

from collections.abc import Callable, Iterable

from loguru import logger

from src.base.automaton import is_deterministic
from src.base.oracle import member, member_deterministic
from src.base.words import all_words, sample_words
from src.classes import EquivalenceResultModel, OmegaAutomaton, UltimatelyPeriodicWord
from src.exceptions import InvalidAutomatonError

Membership = Callable[[UltimatelyPeriodicWord], bool]


def membership_function(a: OmegaAutomaton) -> Membership:
    """Membership for ``a``, simulating the single run when ``a`` is deterministic."""
    if is_deterministic(a):
        return lambda w: member_deterministic(a, w)
    return lambda w: member(a, w)


def compare_on(a: OmegaAutomaton, b: OmegaAutomaton, words: Iterable[UltimatelyPeriodicWord]) -> EquivalenceResultModel:
    """Stop at the first word on which ``a`` and ``b`` disagree."""
    if a.alphabet_size != b.alphabet_size:
        raise InvalidAutomatonError(f"alphabet sizes differ: {a.alphabet_size} vs {b.alphabet_size}")
    in_a, in_b = membership_function(a), membership_function(b)
    tested = 0
    for w in words:
        tested += 1
        if in_a(w) != in_b(w):
            logger.debug(f"Counterexample {w} after {tested} words")
            return EquivalenceResultModel(equivalent=False, tested=tested, counterexample=str(w))
    return EquivalenceResultModel(equivalent=True, tested=tested)


def check_equivalence(
    a: OmegaAutomaton,
    b: OmegaAutomaton,
    *,
    samples: int = 200,
    maxlen: int = 4,
    exhaustive: int | None = None,
    seed: int = 0,
) -> EquivalenceResultModel:
    """Compare on ``samples`` seeded words, or on every word up to ``exhaustive`` when given.

    Exhaustive mode walks words in shortlex order, so the reported
    counterexample is the least failing word.
    """
    if exhaustive is not None:
        words: Iterable[UltimatelyPeriodicWord] = all_words(a.alphabet_size, exhaustive, exhaustive)
    else:
        words = sample_words(a.alphabet_size, samples, maxlen, seed)
    return compare_on(a, b, words)
