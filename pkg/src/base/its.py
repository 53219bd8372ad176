"""Cover, Mini and the increasing tree of sets.

For a family ``B: I -> 2^Q`` and a sequence ``alpha`` of indices, ``cover``
returns the indices whose B set lies inside the union along ``alpha`` and
``mini`` the uncovered indices that extend that union minimally, ties going
to the smallest index. Both depend on ``alpha`` only through the union, which
is what ``MiniIndex`` memoises on.
"""

from __future__ import annotations

from collections.abc import Sequence

import networkx as nx

from src.base.base import _quote, to_dot
from src.exceptions import InvalidAutomatonError

BFamily = Sequence[frozenset[int]]


def _union(b_family: BFamily, alpha: Sequence[int]) -> frozenset[int]:
    union: frozenset[int] = frozenset()
    for i in alpha:
        union |= b_family[i - 1]
    return union


def _cover_of_union(b_family: BFamily, union: frozenset[int]) -> frozenset[int]:
    return frozenset(j for j, b in enumerate(b_family, start=1) if b <= union)


def _mini_of_union(b_family: BFamily, union: frozenset[int], covered: frozenset[int]) -> frozenset[int]:
    extensions = {j: union | b for j, b in enumerate(b_family, start=1) if j not in covered}
    result = set()
    for j, ext in extensions.items():
        if any(other < ext for other in extensions.values()):
            continue
        if any(jj < j and extensions[jj] == ext for jj in extensions):
            continue
        result.add(j)
    return frozenset(result)


def cover(b_family: BFamily, alpha: Sequence[int]) -> frozenset[int]:
    """Indices ``j`` with ``B(j)`` contained in the union of ``B`` along ``alpha``."""
    return _cover_of_union(b_family, _union(b_family, alpha))


def mini(b_family: BFamily, alpha: Sequence[int]) -> frozenset[int]:
    """Uncovered indices whose B set extends the union along ``alpha`` minimally.

    ``j`` is kept when no other uncovered index yields a strictly smaller
    extended union and no smaller uncovered index yields the same one.
    """
    union = _union(b_family, alpha)
    return _mini_of_union(b_family, union, _cover_of_union(b_family, union))


class MiniIndex:
    """Memoised ``cover``/``mini`` over one B family.

    With ``track_empty`` an index whose B set is empty counts as covered only
    once it occurs in ``alpha``, so that it is placed on every path exactly
    once instead of being silently covered by the empty union.
    """

    def __init__(self, b_family: BFamily, track_empty: bool = False):
        self.b_family = tuple(frozenset(b) for b in b_family)
        self.k = len(self.b_family)
        self.empty = frozenset(j for j, b in enumerate(self.b_family, start=1) if not b) if track_empty else frozenset()
        self._memo: dict[tuple[frozenset[int], frozenset[int]], tuple[frozenset[int], frozenset[int]]] = {}

    def _lookup(self, alpha: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
        union = _union(self.b_family, alpha)
        pending = self.empty.difference(alpha)
        key = (union, pending)
        if key not in self._memo:
            covered = _cover_of_union(self.b_family, union) - pending
            self._memo[key] = (covered, _mini_of_union(self.b_family, union, covered))
        return self._memo[key]

    def cover(self, alpha: Sequence[int]) -> frozenset[int]:
        return self._lookup(alpha)[0]

    def mini(self, alpha: Sequence[int]) -> frozenset[int]:
        return self._lookup(alpha)[1]

    def newly_covered(self, alpha: Sequence[int], j: int) -> frozenset[int]:
        """Indices that extending ``alpha`` by ``j`` adds to the cover."""
        return self.cover(tuple(alpha) + (j,)) - self.cover(alpha)


def build_its(n: int, k: int, b_family: BFamily) -> nx.DiGraph:
    """Build the increasing tree of sets of ``b_family``.

    Nodes are index sequences (the root is ``()``) carrying ``label`` (last
    index, 0 at the root), ``states`` (``B(label)``) and ``union`` (the
    cumulative set along the sequence).

    Raises
    ------
    InvalidAutomatonError
        If the family does not have ``k`` members inside ``[0..n)`` or is not injective.
    """
    family = tuple(frozenset(b) for b in b_family)
    if len(family) != k:
        raise InvalidAutomatonError(f"expected {k} B sets, got {len(family)}")
    if any(q >= n for b in family for q in b):
        raise InvalidAutomatonError(f"B family mentions states outside [0..{n})")
    if len(set(family)) != k:
        raise InvalidAutomatonError("B not injective")

    index = MiniIndex(family)
    T = nx.DiGraph(name="its")
    T.add_node((), label=0, states=frozenset(), union=frozenset())
    stack: list[tuple[int, ...]] = [()]
    while stack:
        alpha = stack.pop()
        for j in sorted(index.mini(alpha)):
            child = alpha + (j,)
            T.add_node(child, label=j, states=family[j - 1], union=T.nodes[alpha]["union"] | family[j - 1])
            T.add_edge(alpha, child)
            stack.append(child)
    return T


def count_paths(T: nx.DiGraph) -> int:
    """Number of root-to-leaf paths."""
    return sum(1 for node in T if T.out_degree(node) == 0)


def format_states(states: frozenset[int], prefix: str = "q") -> str:
    if not states:
        return "∅"
    return "{" + ",".join(f"{prefix}{q}" for q in sorted(states)) + "}"


def _node_text(T: nx.DiGraph, node: tuple[int, ...]) -> str:
    return f"{T.nodes[node]['label']}:{format_states(T.nodes[node]['states'])}"


def render_its(T: nx.DiGraph) -> str:
    """Indented rendering, children in ascending label order, two spaces per level."""
    lines: list[str] = []

    def visit(node: tuple[int, ...], depth: int) -> None:
        lines.append("  " * depth + _node_text(T, node))
        for child in sorted(T.successors(node)):
            visit(child, depth + 1)

    visit((), 0)
    return "\n".join(lines) + "\n"


def its_dot(T: nx.DiGraph) -> str:
    G = nx.DiGraph(name="its")
    ids = {node: "n" + "_".join(map(str, node)) for node in T}
    for node in T:
        G.add_node(ids[node], label=_quote(_node_text(T, node)))
    for u, v in T.edges():
        G.add_edge(ids[u], ids[v])
    return to_dot(G)
