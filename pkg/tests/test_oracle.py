"""Tests for the membership oracle."""

import pathlib
import random

import networkx as nx
import pytest

from src.base.base import ProductGraph
from src.base.generator import random_automaton
from src.base.oracle import (
    ProductEmptiness,
    accepts_inf,
    member,
    member_bruteforce,
    member_deterministic,
    scc_decompose,
)
from src.base.textformat import load_automaton
from src.base.words import all_words, parse_word
from src.classes import AcceptanceCondition, AcceptancePair, OmegaAutomaton, UltimatelyPeriodicWord
from src.exceptions import AutomatonError, InvalidAutomatonError

DATA = pathlib.Path(__file__).parents[1] / "data"


@pytest.fixture
def inf_many_zero():
    return load_automaton(DATA / "inf_many_zero.aut")


@pytest.fixture
def fin_many_zero():
    return load_automaton(DATA / "fin_many_zero.aut")


class TestSccDecompose:
    def test_trivial_and_nontrivial(self):
        G = nx.DiGraph([(0, 1), (1, 0), (1, 2), (3, 3)])
        G.add_node(4)
        components = dict((nodes, nontrivial) for nodes, nontrivial in scc_decompose(G))
        assert components[frozenset({0, 1})] is True
        assert components[frozenset({2})] is False
        assert components[frozenset({3})] is True
        assert components[frozenset({4})] is False


class TestAcceptsInf:
    @pytest.mark.parametrize(
        "acceptance,inf,expected",
        [
            (AcceptanceCondition.buchi({1}), {0, 1}, True),
            (AcceptanceCondition.buchi({1}), {0}, False),
            (AcceptanceCondition.genbuchi([{0}, {1}]), {0, 1}, True),
            (AcceptanceCondition.genbuchi([{0}, {1}]), {0}, False),
            (AcceptanceCondition.genbuchi([]), {0}, True),
            (AcceptanceCondition.streett([({0}, {1})]), {0}, False),
            (AcceptanceCondition.streett([({0}, {1})]), {0, 1}, True),
            (AcceptanceCondition.streett([({0}, {1})]), {2}, True),
            (AcceptanceCondition.rabin([({0}, {1})]), {0}, True),
            (AcceptanceCondition.rabin([({0}, {1})]), {0, 1}, False),
            (AcceptanceCondition(type="rabin"), {0}, False),
            (AcceptanceCondition.parity([({0}, ()), ({0, 1, 2}, {0, 1})]), {0}, False),
            (AcceptanceCondition.parity([({0}, ()), ({0, 1, 2}, {0, 1})]), {1}, True),
        ],
    )
    def test_predicate(self, acceptance, inf, expected):
        assert accepts_inf(acceptance, frozenset(inf)) is expected


class TestProductGraph:
    def test_reachable_nodes_only(self, fin_many_zero):
        g = ProductGraph(fin_many_zero, parse_word("0;1"))
        # (state, position): the guess into state 1 is only possible on letter 1
        assert set(g.graph.nodes) == {(0, 0), (0, 1), (1, 1)}
        assert g.states_of(g.graph.nodes) == {0, 1}


class TestMember:
    @pytest.mark.parametrize("word,expected", [(";0", True), ("0;1", False), ("1;1 0", True), ("0 0;1 1", False)])
    def test_inf_many_zero(self, inf_many_zero, word, expected):
        w = parse_word(word)
        assert member(inf_many_zero, w) is expected
        assert member_deterministic(inf_many_zero, w) is expected

    @pytest.mark.parametrize("word,expected", [(";0", False), ("0;1", True), ("1;1 0", False), ("0 0;1 1", True)])
    def test_fin_many_zero(self, fin_many_zero, word, expected):
        assert member(fin_many_zero, parse_word(word)) is expected

    def test_alphabet_mismatch(self, inf_many_zero):
        with pytest.raises(AutomatonError, match="outside alphabet"):
            member(inf_many_zero, parse_word(";2"))

    def test_streett_empty_b_rejects_g_loop(self):
        a = OmegaAutomaton.from_edges(1, 1, {0}, [(0, 0, 0)], AcceptanceCondition.streett([({0}, ())]))
        assert not member(a, parse_word(";0"))

    def test_dead_end_rejects(self):
        a = OmegaAutomaton.from_edges(2, 1, {0}, [(0, 0, 0)], AcceptanceCondition.buchi({0}))
        assert not member(a, parse_word("1;0"))
        assert not member_deterministic(a, parse_word("1;0"))


class TestMemberDeterministic:
    def test_rejects_nondeterminism(self, fin_many_zero):
        with pytest.raises(InvalidAutomatonError):
            member_deterministic(fin_many_zero, parse_word(";1"))

    def test_rejects_several_initial_states(self):
        a = OmegaAutomaton.from_edges(1, 2, {0, 1}, [(0, 0, 0), (1, 0, 1)], AcceptanceCondition.buchi({0}))
        with pytest.raises(InvalidAutomatonError, match="initial"):
            member_deterministic(a, parse_word(";0"))


ACCEPTANCE_TYPES = ["buchi", "genbuchi", "streett", "parity", "rabin"]


def small_automaton(seed: int) -> OmegaAutomaton:
    """n <= 3, k <= 2 and one or two letters, cycling through the acceptance types."""
    n = 1 + seed % 3
    k = 1 + (seed // 3) % 2
    alphabet = 1 + (seed // 6) % 2
    return random_automaton(ACCEPTANCE_TYPES[seed % 5], n, k, alphabet, 0.5, seed)


def random_deterministic(seed: int) -> OmegaAutomaton:
    """At most one successor per state and letter, acceptance borrowed from a random automaton."""
    rng = random.Random(seed)
    n = 1 + seed % 4
    edges = [(q, letter, rng.randrange(n)) for q in range(n) for letter in range(2) if rng.random() < 0.85]
    acceptance = random_automaton(ACCEPTANCE_TYPES[seed % 5], n, 1 + seed % 2, 2, 0.5, seed).acceptance
    return OmegaAutomaton.from_edges(2, n, {0}, edges, acceptance)


class TestAgreementWithBruteForce:
    """The SCC-based oracle agrees with lasso enumeration on random automata."""

    @pytest.mark.parametrize("seed", range(300))
    def test_random(self, seed):
        a = small_automaton(seed)
        for w in all_words(a.alphabet_size, 3, 3):
            assert member(a, w) == member_bruteforce(a, w), f"{a.type} seed {seed} word {w}"

    @pytest.mark.parametrize("word,expected", [(";0", True), ("0;1", False), ("1;1 0", True), ("0 0;1 1", False)])
    def test_bruteforce_inf_many_zero(self, inf_many_zero, word, expected):
        assert member_bruteforce(inf_many_zero, parse_word(word)) is expected

    @pytest.mark.parametrize("word,expected", [(";0", False), ("0;1", True), ("1;1 0", False), ("0 0;1 1", True)])
    def test_bruteforce_fin_many_zero(self, fin_many_zero, word, expected):
        assert member_bruteforce(fin_many_zero, parse_word(word)) is expected

    def test_bruteforce_needs_the_whole_loop(self):
        # state 1 has no 0-successor, so only a loop containing 1 can return to it
        edges = [(0, 0, 0), (0, 0, 1), (1, 1, 0)]
        a = OmegaAutomaton.from_edges(2, 2, {0}, edges, AcceptanceCondition.buchi({1}))
        assert not member_bruteforce(a, parse_word(";0"))
        assert member_bruteforce(a, parse_word(";0 1"))
        assert member(a, parse_word(";0 1"))

    def test_bruteforce_state_limit(self):
        a = random_automaton("buchi", 5, 1, 1, 0.5, 0)
        with pytest.raises(InvalidAutomatonError):
            member_bruteforce(a, parse_word(";0"), max_states=4)


class TestMembershipProperties:
    @pytest.mark.parametrize("seed", range(60))
    def test_loop_unrolling(self, seed):
        a = small_automaton(seed)
        for w in all_words(a.alphabet_size, 2, 2):
            verdict = member(a, w)
            shifted = UltimatelyPeriodicWord(prefix=w.prefix + w.loop, loop=w.loop)
            doubled = UltimatelyPeriodicWord(prefix=w.prefix, loop=w.loop + w.loop)
            assert member(a, shifted) == verdict, f"seed {seed} word {w}"
            assert member(a, doubled) == verdict, f"seed {seed} word {w}"

    @pytest.mark.parametrize("seed", range(40))
    def test_vacuous_streett_pair(self, seed):
        a = random_automaton("streett", 1 + seed % 4, 1 + seed % 3, 2, 0.5, seed)
        pairs = a.acceptance.pairs
        for w in all_words(2, 2, 2):
            g = ProductGraph(a, w)
            extended = pairs + (AcceptancePair(),)
            assert ProductEmptiness.nonempty_streett(g, extended) == ProductEmptiness.nonempty_streett(g, pairs)

    @pytest.mark.parametrize("seed", range(500))
    def test_deterministic_run_matches_product(self, seed):
        a = random_deterministic(seed)
        for w in all_words(2, 2, 2):
            assert member_deterministic(a, w) == member(a, w), f"seed {seed} word {w}"
