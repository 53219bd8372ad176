"""Tests for the command-line front end."""

import csv
import io
import json
import pathlib
import sys

import pytest
from loguru import logger

from src.base.oracle import member, member_deterministic
from src.base.textformat import load_automaton, parse_automaton
from src.base.words import all_words
from src.cli import STATS_FIELDS, main

DATA = pathlib.Path(__file__).parents[1] / "data"
INF = str(DATA / "inf_many_zero.aut")
FIN = str(DATA / "fin_many_zero.aut")


@pytest.fixture(autouse=True)
def restore_logging():
    """The CLI replaces the loguru sinks; put the default stderr sink back afterwards."""
    yield
    logger.remove()
    logger.add(sys.stderr)


class TestDeterminizeCommand:
    @pytest.mark.parametrize("algo", ["classic", "improved"])
    def test_writes_equivalent_rabin_automaton(self, tmp_path, capsys, algo):
        out = tmp_path / "det.aut"
        assert main(["determinize", INF, "--algo", algo, "--out", str(out)]) == 0

        det = load_automaton(out)
        source = load_automaton(INF)
        assert det.type == "rabin"
        for w in all_words(2, 2, 2):
            assert member_deterministic(det, w) == member(source, w)
        summary = capsys.readouterr().out
        assert f"states={det.states}" in summary

    def test_improved_index_size_bound(self, capsys):
        assert main(["determinize", INF]) == 0
        captured = capsys.readouterr()
        assert parse_automaton(captured.out).k <= 4
        assert "index_size=" in captured.err

    def test_dictionary(self, tmp_path):
        out, dictionary = tmp_path / "det.aut", tmp_path / "det.jsonl"
        main(["determinize", INF, "--out", str(out), "--dict", str(dictionary)])

        entries = [json.loads(line) for line in dictionary.read_text(encoding="utf-8").splitlines()]
        assert len(entries) == load_automaton(out).states
        assert entries[0]["state"] == 0
        assert entries[0]["tree"]["name"] == 1

    def test_rabin(self, capsys):
        assert main(["determinize", str(DATA / "rabin.aut"), "--algo", "rabin"]) == 0
        assert parse_automaton(capsys.readouterr().out).type == "rabin"

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.aut"
        bad.write_text("automaton buchi\nalphabet 2\nstates x\n", encoding="utf-8")
        assert main(["determinize", str(bad)]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_invalid_automaton(self, tmp_path, capsys):
        bad = tmp_path / "chain.aut"
        bad.write_text(
            "automaton parity\nalphabet 1\nstates 1\ninitial 0\ntrans 0 0 0\npairs 1\nG 1: 0\nB 1: 0\nend\n",
            encoding="utf-8",
        )
        assert main(["determinize", str(bad)]) == 2
        assert "parity chain broken" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["determinize", str(tmp_path / "nope.aut")]) == 2

    def test_wrong_algorithm(self):
        assert main(["determinize", INF, "--algo", "rabin"]) == 2

    def test_cap_exceeded(self, capsys):
        assert main(["determinize", str(DATA / "streett.aut"), "--cap", "1"]) == 3
        assert "cap" in capsys.readouterr().err


class TestMemberCommand:
    @pytest.mark.parametrize("word,code,verdict", [(";0", 0, "accept"), ("0;1", 1, "reject")])
    def test_verdicts(self, capsys, word, code, verdict):
        assert main(["member", INF, "--word", word]) == code
        assert capsys.readouterr().out.strip() == verdict

    def test_alphabet_mismatch(self):
        assert main(["member", INF, "--word", "2;0"]) == 2

    def test_missing_word_is_a_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["member", INF])
        assert excinfo.value.code == 2


class TestEquivCommand:
    def test_self(self, capsys):
        assert main(["equiv", INF, INF, "--samples", "20"]) == 0
        assert "equivalent on tested set" in capsys.readouterr().out

    def test_counterexample(self, capsys):
        assert main(["equiv", INF, FIN, "--exhaustive", "2"]) == 1
        assert capsys.readouterr().out.strip() == "counterexample ;0"

    def test_input_against_its_determinization(self, tmp_path):
        out = tmp_path / "det.aut"
        source = str(DATA / "streett.aut")
        main(["determinize", source, "--out", str(out)])
        assert main(["equiv", source, str(out), "--exhaustive", "3"]) == 0


class TestRandomCommand:
    def test_reproducible(self, capsys):
        args = ["random", "--type", "streett", "--n", "4", "--k", "3", "--seed", "5"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first
        assert parse_automaton(first).states == 4

    def test_invalid_density(self):
        assert main(["random", "--density", "0"]) == 2


class TestStatsCommand:
    def test_csv_row(self, capsys):
        assert main(["stats", str(DATA / "streett.aut")]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert tuple(rows[0]) == STATS_FIELDS
        row = dict(zip(rows[0], rows[1]))
        assert row["algo"] == "improved"
        n, mu = int(row["n"]), int(row["mu"])
        assert int(row["max_nodes"]) <= n * (mu + 1)
        assert int(row["max_spine"]) <= mu + 1
        assert float(row["seconds"]) >= 0

    def test_no_header(self, capsys):
        main(["stats", INF, "--algo", "classic", "--no-header"])
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 1
        assert len(rows[0]) == len(STATS_FIELDS)


class TestDotAndItsCommands:
    def test_automaton_dot(self, capsys):
        assert main(["dot", INF]) == 0
        text = capsys.readouterr().out
        assert "digraph" in text.splitlines()[0]
        assert "->" in text

    def test_trees_dot(self, tmp_path):
        out = tmp_path / "trees.dot"
        assert main(["dot", INF, "--trees", "--out", str(out)]) == 0
        assert "digraph" in out.read_text(encoding="utf-8").splitlines()[0]

    def test_its(self, capsys):
        assert main(["its", str(DATA / "its_example.aut")]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "0:∅"
        assert len(lines) == 11

    def test_its_dot(self, capsys):
        assert main(["its", str(DATA / "its_example.aut"), "--dot"]) == 0
        assert "digraph" in capsys.readouterr().out.splitlines()[0]


class TestComplementCommand:
    def test_complement(self, tmp_path):
        out = tmp_path / "co.aut"
        assert main(["complement", INF, "--out", str(out)]) == 0
        co = load_automaton(out)
        source = load_automaton(INF)
        assert co.type == "streett"
        for w in all_words(2, 2, 2):
            assert member(co, w) != member(source, w)
