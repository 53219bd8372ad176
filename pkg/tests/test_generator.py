"""Tests for the seeded random automaton generator."""

import pytest

from src.base.automaton import is_total, validate
from src.base.generator import random_automaton
from src.base.textformat import dump_automaton
from src.exceptions import AutomatonError


class TestRandomAutomaton:
    @pytest.mark.parametrize("acceptance_type", ["buchi", "genbuchi", "streett", "parity", "rabin"])
    def test_same_seed_same_text(self, acceptance_type):
        first = dump_automaton(random_automaton(acceptance_type, 4, 3, 2, 0.3, 11))
        assert first == dump_automaton(random_automaton(acceptance_type, 4, 3, 2, 0.3, 11))
        assert first != dump_automaton(random_automaton(acceptance_type, 4, 3, 2, 0.3, 12))

    def test_full_density_is_complete(self):
        a = random_automaton("streett", 3, 2, 3, 1.0, 0)
        assert is_total(a)
        assert all(targets == {0, 1, 2} for row in a.transitions for targets in row)

    @pytest.mark.parametrize("acceptance_type", ["buchi", "genbuchi", "streett", "parity", "rabin"])
    @pytest.mark.parametrize("seed", range(40))
    def test_always_valid(self, acceptance_type, seed):
        a = random_automaton(acceptance_type, 1 + seed % 5, 1 + seed % 4, 2, 0.3, seed)
        assert validate(a) == []
        assert a.initial

    def test_buchi_has_one_set(self):
        assert random_automaton("buchi", 3, 5, 2, 0.3, 0).k == 1

    def test_parity_chain_is_strict(self):
        a = random_automaton("parity", 5, 2, 2, 0.5, 3)
        chain = [s for p in a.acceptance.pairs for s in (p.B, p.G)]
        assert all(lower < upper for lower, upper in zip(chain, chain[1:]))

    def test_parity_shrinks_when_states_run_out(self):
        a = random_automaton("parity", 1, 4, 1, 0.5, 0)
        assert a.k <= 1

    @pytest.mark.parametrize(
        "n,k,alphabet,density",
        [(0, 1, 2, 0.5), (2, -1, 2, 0.5), (2, 1, 0, 0.5), (2, 1, 2, 0.0), (2, 1, 2, 1.5)],
    )
    def test_invalid_parameters(self, n, k, alphabet, density):
        with pytest.raises(AutomatonError):
            random_automaton("streett", n, k, alphabet, density, 0)
