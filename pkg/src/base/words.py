"""Parsing, enumeration and sampling of ultimately periodic words."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator

from src.classes import UltimatelyPeriodicWord
from src.exceptions import AutomatonError


def parse_word(text: str, alphabet_size: int | None = None) -> UltimatelyPeriodicWord:
    """Parse ``"u;v"`` where ``u`` and ``v`` are space separated integer letters.

    Raises
    ------
    AutomatonError
        If the syntax is wrong, the loop is empty, or a letter is outside the alphabet.
    """
    if text.count(";") != 1:
        raise AutomatonError(f"word '{text}' must have the form 'u;v'")
    prefix_text, loop_text = text.split(";")
    try:
        prefix = tuple(int(t) for t in prefix_text.split())
        loop = tuple(int(t) for t in loop_text.split())
    except ValueError:
        raise AutomatonError(f"word '{text}' contains a non-integer letter") from None
    if not loop:
        raise AutomatonError(f"word '{text}' has an empty loop")
    word = UltimatelyPeriodicWord(prefix=prefix, loop=loop)
    if alphabet_size is not None:
        check_alphabet(word, alphabet_size)
    return word


def check_alphabet(word: UltimatelyPeriodicWord, alphabet_size: int) -> None:
    bad = sorted({letter for letter in word.letters() if letter >= alphabet_size})
    if bad:
        raise AutomatonError(f"letters {bad} of word '{word}' outside alphabet [0..{alphabet_size})")


def _sequences(alphabet_size: int, length: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(alphabet_size), repeat=length)


def all_words(alphabet_size: int, max_prefix: int, max_loop: int) -> Iterator[UltimatelyPeriodicWord]:
    """Yield every word with ``|u| <= max_prefix`` and ``1 <= |v| <= max_loop``.

    Words come in shortlex order of ``(|u|+|v|, |u|, u, v)``.
    """
    for total in range(1, max_prefix + max_loop + 1):
        for prefix_len in range(max(0, total - max_loop), min(max_prefix, total - 1) + 1):
            for prefix in _sequences(alphabet_size, prefix_len):
                for loop in _sequences(alphabet_size, total - prefix_len):
                    yield UltimatelyPeriodicWord(prefix=prefix, loop=loop)


def sample_words(alphabet_size: int, count: int, maxlen: int, seed: int) -> list[UltimatelyPeriodicWord]:
    """Draw ``count`` words with ``|u| <= maxlen`` and ``1 <= |v| <= maxlen`` from a seeded generator."""
    rng = random.Random(seed)
    words = []
    for _ in range(count):
        prefix = tuple(rng.randrange(alphabet_size) for _ in range(rng.randint(0, maxlen)))
        loop = tuple(rng.randrange(alphabet_size) for _ in range(rng.randint(1, maxlen)))
        words.append(UltimatelyPeriodicWord(prefix=prefix, loop=loop))
    return words
