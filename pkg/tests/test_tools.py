"""Tests for the MCP tool functions and the automaton cache."""

import pathlib

import pytest

from src.base.textformat import parse_automaton
from src.cache import _loaded_automata, _resolve_automaton, cache_automaton, get_cached_automaton, is_cached
from src.classes import (
    AutomatonCacheModel,
    DeterminizeResultModel,
    EquivalenceResultModel,
    ErrorModel,
    ItsResultModel,
    MembershipResultModel,
)
from src.tools import (
    check_equivalence,
    check_membership,
    determinize_automaton,
    increasing_tree_of_sets,
    load_automaton_from_file,
)

DATA = pathlib.Path(__file__).parents[1] / "data"


@pytest.fixture
def inf_many_zero_text():
    return (DATA / "inf_many_zero.aut").read_text(encoding="utf-8")


@pytest.fixture(autouse=True)
def clear_automaton_cache():
    """Clear the automaton cache before and after each test."""
    _loaded_automata.clear()
    yield
    _loaded_automata.clear()


class TestAutomatonCache:
    """Test caching and URI resolution."""

    def test_cache_and_retrieve(self, inf_many_zero_text):
        a = parse_automaton(inf_many_zero_text)
        uri = cache_automaton("test_alias", a)

        assert uri == "automaton://test_alias"
        assert is_cached("test_alias")
        assert get_cached_automaton("test_alias") == a

    def test_retrieve_nonexistent(self):
        assert get_cached_automaton("nonexistent") is None
        assert not is_cached("nonexistent")

    def test_resolve_from_text(self, inf_many_zero_text):
        a = _resolve_automaton(text=inf_many_zero_text, uri=None)
        assert a.type == "buchi"
        assert a.states == 2

    def test_resolve_from_uri(self, inf_many_zero_text):
        cache_automaton("test", parse_automaton(inf_many_zero_text))
        assert _resolve_automaton(text=None, uri="automaton://test").states == 2

    def test_resolve_with_invalid_uri(self):
        with pytest.raises(ValueError, match="Invalid automaton URI"):
            _resolve_automaton(text=None, uri="file://test")

    def test_resolve_with_nonexistent_alias(self):
        with pytest.raises(ValueError, match="not found"):
            _resolve_automaton(text=None, uri="automaton://nonexistent")

    def test_resolve_without_input(self):
        with pytest.raises(ValueError, match="No automaton provided"):
            _resolve_automaton(text=None, uri=None)


class TestLoadAutomatonFromFile:
    """Test the file loading tool."""

    def test_load_success(self):
        result = load_automaton_from_file(str(DATA / "streett.aut"), alias="s")

        assert isinstance(result, AutomatonCacheModel)
        assert result.status == "loaded"
        assert result.uri == "automaton://s"
        assert result.states == 3
        assert result.alphabet_size == 2
        assert result.acceptance == "streett"
        assert is_cached("s")

    def test_load_missing_file(self, tmp_path):
        result = load_automaton_from_file(str(tmp_path / "missing.aut"))
        assert isinstance(result, ErrorModel)
        assert "File not found" in result.error

    def test_load_directory(self, tmp_path):
        result = load_automaton_from_file(str(tmp_path))
        assert isinstance(result, ErrorModel)
        assert "not a file" in result.error

    def test_load_malformed_file(self, tmp_path):
        path = tmp_path / "bad.aut"
        path.write_text("automaton buchi\nalphabet two\n", encoding="utf-8")

        result = load_automaton_from_file(str(path))

        assert isinstance(result, ErrorModel)
        assert "line 2" in result.error
        assert not is_cached("default")


class TestDeterminizeTool:
    """Test the determinization tool."""

    @pytest.mark.parametrize("algo", ["classic", "improved"])
    def test_determinize_inline_text(self, inf_many_zero_text, algo):
        result = determinize_automaton(text=inf_many_zero_text, algo=algo)

        assert isinstance(result, DeterminizeResultModel)
        assert result.algo == algo
        assert result.states >= 1
        assert parse_automaton(result.automaton).type == "rabin"
        assert result.uri is None

    def test_determinize_caches_result(self):
        load_automaton_from_file(str(DATA / "rabin.aut"), alias="r")

        result = determinize_automaton(uri="automaton://r", algo="rabin", alias="det")

        assert isinstance(result, DeterminizeResultModel)
        assert result.uri == "automaton://det"
        assert get_cached_automaton("det").states == result.states

    def test_determinize_wrong_algorithm(self, inf_many_zero_text):
        result = determinize_automaton(text=inf_many_zero_text, algo="rabin")
        assert isinstance(result, ErrorModel)

    def test_determinize_cap_exceeded(self):
        result = determinize_automaton(text=(DATA / "streett.aut").read_text(encoding="utf-8"), cap=1)
        assert isinstance(result, ErrorModel)
        assert "cap" in result.error

    def test_determinize_invalid_cap(self, inf_many_zero_text):
        result = determinize_automaton(text=inf_many_zero_text, cap=0)
        assert isinstance(result, ErrorModel)


class TestMembershipTool:
    """Test the membership tool."""

    @pytest.mark.parametrize("word,expected", [(";0", True), ("0;1", False), ("1 1;0 1", True)])
    def test_membership(self, inf_many_zero_text, word, expected):
        result = check_membership(word, text=inf_many_zero_text)

        assert isinstance(result, MembershipResultModel)
        assert result.accepted is expected

    def test_membership_alphabet_mismatch(self, inf_many_zero_text):
        result = check_membership("2;0", text=inf_many_zero_text)
        assert isinstance(result, ErrorModel)
        assert "outside alphabet" in result.error

    def test_membership_bad_syntax(self, inf_many_zero_text):
        result = check_membership("0 1", text=inf_many_zero_text)
        assert isinstance(result, ErrorModel)


class TestEquivalenceTool:
    """Test the equivalence tool."""

    def test_equivalent_to_itself(self):
        load_automaton_from_file(str(DATA / "streett.aut"), alias="s")

        result = check_equivalence("automaton://s", "automaton://s", samples=30)

        assert isinstance(result, EquivalenceResultModel)
        assert result.equivalent
        assert result.tested == 30

    def test_counterexample(self):
        load_automaton_from_file(str(DATA / "inf_many_zero.aut"), alias="inf")
        load_automaton_from_file(str(DATA / "fin_many_zero.aut"), alias="fin")

        result = check_equivalence("automaton://inf", "automaton://fin", exhaustive=2)

        assert isinstance(result, EquivalenceResultModel)
        assert not result.equivalent
        assert result.counterexample == ";0"

    def test_unknown_uri(self):
        result = check_equivalence("automaton://x", "automaton://y")
        assert isinstance(result, ErrorModel)


class TestIncreasingTreeOfSetsTool:
    """Test the ITS tool."""

    def test_its_of_example(self):
        load_automaton_from_file(str(DATA / "its_example.aut"), alias="its")

        result = increasing_tree_of_sets(uri="automaton://its")

        assert isinstance(result, ItsResultModel)
        assert result.nodes == 11
        assert result.paths == 4
        assert result.tree.splitlines()[0] == "0:∅"
