"""MCP resource definitions for the determinization server."""

import json

from fastmcp import FastMCP

from src.base.textformat import dump_automaton
from src.cache import get_cached_automaton


def get_automaton_resource(alias: str) -> str:
    """Return the cached automaton in the text format.

    Use load_automaton_from_file, or determinize_automaton with an alias, to
    populate the cache first.

    Parameters
    ----------
    alias : str
        The automaton alias (e.g., 'default').

    Returns
    -------
    str
        The automaton text, or a JSON error object when the alias is unknown.
    """
    automaton = get_cached_automaton(alias)
    if automaton is None:
        return json.dumps({"error": f"Automaton '{alias}' not found. Use load_automaton_from_file to load it first."})
    return dump_automaton(automaton)


def register_resources(mcp: FastMCP) -> None:
    """Register all MCP resources with the server."""

    @mcp.resource("automaton://{alias}")
    def _get_automaton_resource(alias: str) -> str:
        """MCP resource wrapper for get_automaton_resource."""
        return get_automaton_resource(alias)
