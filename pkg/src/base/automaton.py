"""Automaton validation, acceptance conversions, subset step and dualization."""

from __future__ import annotations

from collections.abc import Iterable

from loguru import logger

from src.classes import AcceptanceCondition, AcceptancePair, OmegaAutomaton
from src.exceptions import InvalidAutomatonError

STREETT_LIKE = ("streett", "parity")


def validate(a: OmegaAutomaton, *, normal_form: bool = True) -> list[str]:
    """Return the list of broken well-formedness rules of ``a``.

    Parameters
    ----------
    a : OmegaAutomaton
        Automaton to check.
    normal_form : bool
        Also require the Streett pair map ``i -> B(i)`` to be injective.

    Returns
    -------
    list[str]
        One message per violation; empty iff ``a`` is well formed.
    """
    violations: list[str] = []
    n, m = a.states, a.alphabet_size
    if m < 1:
        violations.append("alphabet is empty")
    if len(a.transitions) != n:
        violations.append(f"transition table has {len(a.transitions)} rows for {n} states")
    for q, row in enumerate(a.transitions):
        if len(row) != m:
            violations.append(f"state {q} has {len(row)} letter entries for alphabet {m}")
        for letter, targets in enumerate(row):
            bad = sorted(t for t in targets if t >= n)
            if bad:
                violations.append(f"transition ({q}, {letter}) targets unknown states {bad}")
    if not a.initial:
        violations.append("initial set is empty")
    elif max(a.initial) >= n:
        violations.append(f"initial states {sorted(q for q in a.initial if q >= n)} out of range")

    acc = a.acceptance
    for set_name, i, states in acc.state_sets():
        if states and max(states) >= n:
            violations.append(f"{set_name}({i}) contains states outside [0..{n})")
    if acc.type in ("buchi", "genbuchi") and any(p.G for p in acc.pairs):
        violations.append(f"{acc.type} acceptance does not use G sets")
    if acc.type == "buchi" and acc.k != 1:
        violations.append(f"buchi acceptance needs exactly one set, got {acc.k}")
    if acc.type == "streett" and normal_form and len(set(acc.b_family())) != acc.k:
        violations.append("B not injective")
    if acc.type == "parity" and not _is_parity_chain(acc.pairs):
        violations.append("parity chain broken")
    return violations


def _is_parity_chain(pairs: tuple[AcceptancePair, ...]) -> bool:
    chain = [s for p in pairs for s in (p.B, p.G)]
    return all(lower < upper for lower, upper in zip(chain, chain[1:]))


def require_valid(a: OmegaAutomaton, *, normal_form: bool = False) -> OmegaAutomaton:
    """Raise ``InvalidAutomatonError`` unless ``a`` validates."""
    violations = validate(a, normal_form=normal_form)
    if violations:
        raise InvalidAutomatonError("invalid automaton", violations)
    return a


def merge_equal_b(pairs: Iterable[AcceptancePair]) -> tuple[AcceptancePair, ...]:
    """Merge pairs sharing a B set by unioning their G sets.

    Merged pairs are ordered by the smallest original index they absorb.
    """
    merged: dict[frozenset[int], frozenset[int]] = {}
    for p in pairs:
        merged[p.B] = merged.get(p.B, frozenset()) | p.G
    return tuple(AcceptancePair(G=g, B=b) for b, g in merged.items())


def simplify_streett(a: OmegaAutomaton) -> OmegaAutomaton:
    """Make the Streett map ``i -> B(i)`` injective without changing the language."""
    if a.type != "streett":
        raise InvalidAutomatonError(f"simplify_streett expects streett acceptance, got {a.type}")
    pairs = merge_equal_b(a.acceptance.pairs)
    if len(pairs) == a.k:
        return a
    logger.debug(f"Merged {a.k} Streett pairs into {len(pairs)} with distinct B sets")
    return a.with_acceptance(AcceptanceCondition(type="streett", pairs=pairs))


def as_streett(a: OmegaAutomaton) -> OmegaAutomaton:
    """Embed a Buchi, generalized Buchi or parity automaton as a simplified Streett automaton."""
    acc = a.acceptance
    everything = frozenset(range(a.states))
    match acc.type:
        case "buchi" | "genbuchi":
            pairs = tuple(AcceptancePair(G=everything, B=p.B) for p in acc.pairs)
        case "parity" | "streett":
            pairs = acc.pairs
        case _:
            raise InvalidAutomatonError("rabin acceptance is not a Streett subclass")
    return simplify_streett(a.with_acceptance(AcceptanceCondition(type="streett", pairs=pairs)))


def subset_step(a: OmegaAutomaton, s: Iterable[int], letter: int) -> frozenset[int]:
    """Return the set of ``letter``-successors of the states in ``s``."""
    successors: set[int] = set()
    for q in s:
        successors |= a.transitions[q][letter]
    return frozenset(successors)


def is_deterministic(a: OmegaAutomaton) -> bool:
    return len(a.initial) == 1 and all(len(t) <= 1 for row in a.transitions for t in row)


def is_total(a: OmegaAutomaton) -> bool:
    return all(t for row in a.transitions for t in row)


def dualize_deterministic(a: OmegaAutomaton) -> OmegaAutomaton:
    """Complement a deterministic, total Rabin or Streett automaton by swapping its acceptance type."""
    if a.type not in ("rabin", "streett"):
        raise InvalidAutomatonError(f"dualization needs rabin or streett acceptance, got {a.type}; convert first")
    if not is_deterministic(a):
        raise InvalidAutomatonError("dualization needs a deterministic automaton")
    if not is_total(a):
        raise InvalidAutomatonError("dualization needs a total automaton; complete it first")
    dual = "streett" if a.type == "rabin" else "rabin"
    return a.with_acceptance(AcceptanceCondition(type=dual, pairs=a.acceptance.pairs))


def complete_deterministic(a: OmegaAutomaton) -> OmegaAutomaton:
    """Add a rejecting sink so that every (state, letter) has exactly one successor.

    The sink lies in no acceptance set for Buchi, generalized Buchi and Rabin
    conditions. Streett and parity conditions accept a run that sees no G set,
    so there the sink joins the last G set, or a pair ``<{sink}, {}>`` is added
    when the condition has no pairs.
    """
    if any(len(t) > 1 for row in a.transitions for t in row):
        raise InvalidAutomatonError("completion needs a deterministic automaton")
    if is_total(a):
        return a
    sink = a.states
    rows = tuple(tuple(t or frozenset({sink}) for t in row) for row in a.transitions)
    rows += (tuple(frozenset({sink}) for _ in range(a.alphabet_size)),)

    acc = a.acceptance
    pairs = acc.pairs
    if acc.type in STREETT_LIKE:
        if pairs:
            pairs = pairs[:-1] + (AcceptancePair(G=pairs[-1].G | {sink}, B=pairs[-1].B),)
        else:
            pairs = (AcceptancePair(G=frozenset({sink})),)
    elif acc.type == "genbuchi" and not pairs:
        pairs = (AcceptancePair(B=frozenset(range(a.states))),)
    logger.debug(f"Completed automaton with sink state {sink}")
    return OmegaAutomaton(
        alphabet_size=a.alphabet_size,
        states=a.states + 1,
        initial=a.initial,
        transitions=rows,
        acceptance=AcceptanceCondition(type=acc.type, pairs=pairs),
    )
