"""MCP tool definitions for the determinization server.

Each tool is a plain function here so it can be called and tested without a
running server; ``register_tools`` exposes them over MCP. Tools never raise:
failures come back as ``ErrorModel``.
"""

from __future__ import annotations

from pathlib import Path

from fastmcp import FastMCP
from loguru import logger

from src.base.automaton import as_streett, require_valid
from src.base.construct import determinize
from src.base.equivalence import check_equivalence as compare_languages
from src.base.its import build_its, count_paths, render_its
from src.base.oracle import member
from src.base.textformat import dump_automaton, load_automaton
from src.base.words import parse_word
from src.cache import _resolve_automaton, cache_automaton
from src.classes import (
    Algorithm,
    AutomatonCacheModel,
    AutomatonPathModel,
    DeterminizeRequest,
    DeterminizeResultModel,
    EquivalenceRequest,
    EquivalenceResultModel,
    ErrorModel,
    ItsResultModel,
    MembershipRequest,
    MembershipResultModel,
)
from src.exceptions import ExplorationLimitError


def load_automaton_from_file(path: str, alias: str = "default") -> AutomatonCacheModel | ErrorModel:
    """Parse, validate and cache a text-format automaton file.

    Parameters
    ----------
    path : str
        The file path of the automaton.
    alias : str, optional
        The alias under which to cache the automaton (default is "default").

    Returns
    -------
    AutomatonCacheModel
        Status, resource URI and a short summary of the automaton.
    """
    try:
        request = AutomatonPathModel(path=path, alias=alias)
        file_path = Path(request.path)
        if not file_path.exists():
            return ErrorModel(error=f"File not found: {request.path}")
        if not file_path.is_file():
            return ErrorModel(error=f"Path is not a file: {request.path}")
        automaton = require_valid(load_automaton(file_path))
        uri = cache_automaton(request.alias, automaton)
        logger.info(f"Cached {automaton.type} automaton with {automaton.states} states as {uri}")
        return AutomatonCacheModel(
            status="loaded",
            alias=request.alias,
            uri=uri,
            states=automaton.states,
            alphabet_size=automaton.alphabet_size,
            acceptance=automaton.type,
        )
    except (OSError, ValueError) as e:
        return ErrorModel(error=f"Failed to load automaton: {e}")


def determinize_automaton(
    uri: str | None = None,
    text: str | None = None,
    algo: Algorithm = "improved",
    cap: int = 200_000,
    alias: str | None = None,
) -> DeterminizeResultModel | ErrorModel:
    """Determinize a cached or inline automaton into a deterministic Rabin automaton.

    When ``alias`` is given the result is cached and its URI returned.
    """
    try:
        request = DeterminizeRequest(uri=uri, text=text, algo=algo, cap=cap, alias=alias)
        a = _resolve_automaton(request.text, request.uri)
        result = determinize(a, request.algo, request.cap)
        result_uri = cache_automaton(request.alias, result.automaton) if request.alias else None
        return DeterminizeResultModel(
            algo=result.algo,
            states=result.states,
            index_size=result.index_size,
            automaton=dump_automaton(result.automaton),
            uri=result_uri,
        )
    except ExplorationLimitError as e:
        return ErrorModel(error=str(e))
    except ValueError as e:
        return ErrorModel(error=f"Invalid input: {e}")


def check_membership(word: str, uri: str | None = None, text: str | None = None) -> MembershipResultModel | ErrorModel:
    """Decide whether the automaton accepts the word ``u;v``."""
    try:
        request = MembershipRequest(uri=uri, text=text, word=word)
        a = _resolve_automaton(request.text, request.uri)
        w = parse_word(request.word, a.alphabet_size)
        return MembershipResultModel(word=str(w), accepted=member(a, w))
    except ValueError as e:
        return ErrorModel(error=f"Invalid input: {e}")


def check_equivalence(
    uri_a: str,
    uri_b: str,
    samples: int = 200,
    maxlen: int = 4,
    exhaustive: int | None = None,
    seed: int = 0,
) -> EquivalenceResultModel | ErrorModel:
    """Compare two cached automata on sampled words, or on all short words when ``exhaustive`` is set."""
    try:
        request = EquivalenceRequest(
            uri_a=uri_a, uri_b=uri_b, samples=samples, maxlen=maxlen, exhaustive=exhaustive, seed=seed
        )
        return compare_languages(
            _resolve_automaton(None, request.uri_a),
            _resolve_automaton(None, request.uri_b),
            samples=request.samples,
            maxlen=request.maxlen,
            exhaustive=request.exhaustive,
            seed=request.seed,
        )
    except ValueError as e:
        return ErrorModel(error=f"Invalid input: {e}")


def increasing_tree_of_sets(uri: str | None = None, text: str | None = None) -> ItsResultModel | ErrorModel:
    """Increasing tree of sets of the automaton's B family."""
    try:
        a = _resolve_automaton(text, uri)
        family = a.acceptance.b_family() if a.type == "rabin" else as_streett(a).acceptance.b_family()
        T = build_its(a.states, len(family), family)
        return ItsResultModel(paths=count_paths(T), nodes=T.number_of_nodes(), tree=render_its(T))
    except ValueError as e:
        return ErrorModel(error=f"Invalid input: {e}")


def register_tools(mcp: FastMCP) -> None:
    """Register all MCP tools with the server.

    Parameters
    ----------
    mcp : FastMCP
        The FastMCP server instance.
    """
    mcp.tool(
        load_automaton_from_file,
        name="load_automaton_from_file",
        description=(
            "Load an automaton from a text-format file and cache it server-side under an alias. "
            "Subsequent tool calls can reference 'automaton://<alias>' instead of sending the text. "
            "Side effects: reads the file from disk, caches the automaton in server memory."
        ),
    )

    @mcp.tool(
        name="health",
        description=(
            "Return a minimal liveness response to confirm the MCP server is reachable. "
            "Inputs: none. Output: {status: 'ok'}. Side effects: none."
        ),
    )
    def health():
        """Report that the server is up."""
        return {"status": "ok"}

    mcp.tool(
        determinize_automaton,
        name="determinize_automaton",
        description=(
            "Determinize a Buchi, generalized Buchi, parity or Streett automaton (algo 'classic' or 'improved') "
            "or a Rabin automaton (algo 'rabin') into a deterministic Rabin automaton. "
            "Inputs: (uri OR text), algo, cap (maximum explored states), optional alias to cache the result. "
            "Output: state count, index size and the automaton in the text format."
        ),
    )
    mcp.tool(
        check_membership,
        name="check_membership",
        description=(
            "Decide whether an automaton accepts the ultimately periodic word u·v^ω. "
            "Inputs: word as 'u;v' with space separated integer letters, (uri OR text). "
            "Output: {word, accepted}. Side effects: none."
        ),
    )
    mcp.tool(
        check_equivalence,
        name="check_equivalence",
        description=(
            "Compare the languages of two cached automata on a finite set of ultimately periodic words. "
            "Sampled mode draws 'samples' seeded words with |u|,|v| <= maxlen; 'exhaustive' L tests all words "
            "with |u| <= L and 1 <= |v| <= L. Output: {equivalent, tested, counterexample}."
        ),
    )
    mcp.tool(
        increasing_tree_of_sets,
        name="increasing_tree_of_sets",
        description=(
            "Build the increasing tree of sets of an automaton's B family, the index sequences the improved "
            "construction may place on a path. Inputs: (uri OR text). Output: path count, node count and an "
            "indented rendering."
        ),
    )
