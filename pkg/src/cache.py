"""Automaton cache for the MCP server.

Loaded and determinized automata are kept in memory under an alias so that
tools can refer to them as ``automaton://<alias>`` instead of resending the
text format on every call.
"""

from src.base.automaton import require_valid
from src.base.textformat import parse_automaton
from src.classes import OmegaAutomaton

URI_SCHEME = "automaton://"

_loaded_automata: dict[str, OmegaAutomaton] = {}


def _resolve_automaton(text: str | None, uri: str | None) -> OmegaAutomaton:
    """Resolve an automaton from either its text or a cached URI.

    Parameters
    ----------
    text : str | None
        Automaton in the text format.
    uri : str | None
        URI of a cached automaton (e.g., 'automaton://default').

    Returns
    -------
    OmegaAutomaton
        The resolved, validated automaton.

    Raises
    ------
    ValueError
        If neither parameter is usable, the URI is malformed or unknown, or
        the text does not describe a valid automaton.
    """
    if uri:
        if not uri.startswith(URI_SCHEME):
            raise ValueError(f"Invalid automaton URI '{uri}'. Expected '{URI_SCHEME}<alias>'.")
        alias = uri.removeprefix(URI_SCHEME)
        if alias not in _loaded_automata:
            raise ValueError(f"Automaton '{alias}' not found. Load it first with load_automaton_from_file.")
        return _loaded_automata[alias]

    if not text:
        raise ValueError("No automaton provided. Please provide either text or uri.")
    return require_valid(parse_automaton(text))


def get_cached_automaton(alias: str) -> OmegaAutomaton | None:
    return _loaded_automata.get(alias)


def cache_automaton(alias: str, automaton: OmegaAutomaton) -> str:
    """Cache ``automaton`` under ``alias`` and return its URI."""
    _loaded_automata[alias] = automaton
    return f"{URI_SCHEME}{alias}"


def is_cached(alias: str) -> bool:
    return alias in _loaded_automata
