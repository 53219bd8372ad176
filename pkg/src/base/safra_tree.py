"""Safra trees: immutable states of the deterministic automaton and the mutable
working copies a transition step operates on."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import networkx as nx

from src.base.base import _quote, to_dot
from src.base.its import MiniIndex
from src.classes import SafraNodeModel


class Color(str, Enum):
    GREEN = "green"
    RED = "red"
    YELLOW = "yellow"


class TreeNode(NamedTuple):
    name: int
    states: frozenset[int]
    color: Color
    index: int
    children: tuple[TreeNode, ...] = ()


@dataclass(frozen=True)
class SafraTree:
    """A deterministic state. ``root is None`` is the empty tree, the dead sink."""

    root: TreeNode | None

    @property
    def is_empty(self) -> bool:
        return self.root is None

    def nodes(self) -> Iterator[TreeNode]:
        """Preorder traversal."""
        if self.root is None:
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __len__(self) -> int:
        return sum(1 for _ in self.nodes())

    def names_with(self, color: Color) -> frozenset[int]:
        return frozenset(node.name for node in self.nodes() if node.color is color)

    def names(self) -> frozenset[int]:
        return frozenset(node.name for node in self.nodes())

    def serialize(self) -> str:
        """Canonical text form; equal trees and only equal trees serialize equally."""
        if self.root is None:
            return "()"

        def render(node: TreeNode) -> str:
            states = " ".join(map(str, sorted(node.states)))
            inner = "".join(" " + render(c) for c in node.children)
            return f"({node.name} {node.color.value} {node.index} {{{states}}}{inner})"

        return render(self.root)

    def to_model(self) -> SafraNodeModel | None:
        def convert(node: TreeNode) -> SafraNodeModel:
            return SafraNodeModel(
                name=node.name,
                color=node.color.value,
                index=node.index,
                states=sorted(node.states),
                children=[convert(c) for c in node.children],
            )

        return None if self.root is None else convert(self.root)


EMPTY_TREE = SafraTree(None)


@dataclass(eq=False)
class WorkNode:
    """Mutable node used while computing one transition.

    ``old_name`` is the name in the source tree, ``None`` for nodes created in
    this step. ``age`` orders siblings by creation: smaller is older.
    """

    states: set[int]
    index: int
    path: tuple[int, ...]
    age: int
    old_name: int | None = None
    children: list[WorkNode] = field(default_factory=list)
    had_children: bool = False
    green: bool = False
    name: int = 0
    color: Color = Color.RED

    @property
    def is_new(self) -> bool:
        return self.old_name is None

    def preorder(self) -> Iterator[WorkNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def remove_states(self, states: set[int] | frozenset[int]) -> None:
        """Remove ``states`` from this node and all of its descendants."""
        for node in self.preorder():
            node.states -= states

    def add_child(self, states: set[int], index: int, age: int) -> WorkNode:
        path = self.path + (index,) if index else self.path
        child = WorkNode(states=set(states), index=index, path=path, age=age)
        self.children.append(child)
        self.had_children = True
        return child


def thaw(root: TreeNode, ages: Iterator[int]) -> WorkNode:
    """Copy a frozen tree into working nodes; ages follow preorder, so older-left among siblings."""

    def convert(node: TreeNode, parent_path: tuple[int, ...]) -> WorkNode:
        path = parent_path + (node.index,) if node.index else parent_path
        work = WorkNode(
            states=set(node.states),
            index=node.index,
            path=path,
            age=next(ages),
            old_name=node.name,
            had_children=bool(node.children),
            name=node.name,
        )
        work.children = [convert(c, path) for c in node.children]
        return work

    return convert(root, ())


def freeze(root: WorkNode) -> SafraTree:
    def convert(node: WorkNode) -> TreeNode:
        return TreeNode(
            name=node.name,
            states=frozenset(node.states),
            color=node.color,
            index=node.index,
            children=tuple(convert(c) for c in node.children),
        )

    return SafraTree(convert(root))


def prune(root: WorkNode) -> None:
    """Drop every non-root node with an empty state label, with its subtree."""
    for node in root.preorder():
        node.children = [c for c in node.children if c.states]


def horizontal_merge(root: WorkNode) -> None:
    """Keep each state only in the sibling with the smallest index label, ties to the older one."""
    for node in root.preorder():
        claimed: set[int] = set()
        for child in sorted(node.children, key=lambda c: (c.index, c.age)):
            duplicated = child.states & claimed
            if duplicated:
                child.remove_states(duplicated)
            claimed |= child.states
        node.children = [c for c in node.children if c.states]


def vertical_merge(root: WorkNode) -> None:
    """Remove all descendants of a node whose children all carry index label 0."""
    for node in root.preorder():
        if node.children and all(c.index == 0 for c in node.children):
            node.children = []


def structural_sort(root: WorkNode) -> None:
    """Order siblings by descending index label, ties older-left."""
    for node in root.preorder():
        node.children.sort(key=lambda c: (-c.index, c.age))


def fresh_ages(start: int = 0) -> Iterator[int]:
    return itertools.count(start)


def decompose_spines(root) -> list[list]:
    """Split a tree into left spines, ordered by their leaves from left to right.

    A left spine starts at a node that is not a leftmost child and follows
    leftmost children down to a leaf. Works on frozen and working nodes alike.
    """
    spines: list[list] = []

    def visit(node, spine: list) -> None:
        spine.append(node)
        if not node.children:
            spines.append(spine)
            return
        visit(node.children[0], spine)
        for child in node.children[1:]:
            visit(child, [])

    if root is not None:
        visit(root, [])
    return spines


def _with_paths(tree: SafraTree) -> list[tuple[TreeNode, tuple[int, ...]]]:
    """Preorder ``(node, nonzero index labels from the root down to node)``."""
    out: list[tuple[TreeNode, tuple[int, ...]]] = []

    def visit(node: TreeNode, parent_path: tuple[int, ...]) -> None:
        path = parent_path + (node.index,) if node.index else parent_path
        out.append((node, path))
        for c in node.children:
            visit(c, path)

    if tree.root is not None:
        visit(tree.root, ())
    return out


def check_sts(tree: SafraTree) -> list[str]:
    """Violations of the Safra tree invariants; empty when well formed."""
    if tree.root is None:
        return []
    violations: list[str] = []
    names = [node.name for node in tree.nodes()]
    if len(names) != len(set(names)):
        violations.append("names not pairwise distinct")
    if tree.root.index != 0:
        violations.append("root index label is not 0")
    for node, path in _with_paths(tree):
        if not node.states:
            violations.append(f"node {node.name} has an empty state label")
        if len(path) != len(set(path)):
            violations.append(f"index repeated on the path to node {node.name}")
        if node.children:
            union: set[int] = set()
            for child in node.children:
                if union & child.states:
                    violations.append(f"children of node {node.name} overlap")
                union |= child.states
            if union != node.states:
                violations.append(f"children of node {node.name} do not partition its states")
    return violations


def check_rsts(tree: SafraTree, index: MiniIndex, n: int, mu: int) -> list[str]:
    """Violations of the reduced Safra tree invariants, including the naming law."""
    violations = check_sts(tree)
    if tree.root is None:
        return violations
    nodes = list(tree.nodes())
    if len(nodes) > n * (mu + 1):
        violations.append(f"{len(nodes)} nodes exceed n(mu+1) = {n * (mu + 1)}")
    if sum(1 for node in nodes if node.index == 0) > n:
        violations.append("more than n nodes with index label 0")
    if any(not 1 <= node.name <= n * (mu + 1) for node in nodes):
        violations.append("name outside [1..n(mu+1)]")

    for node, path in _with_paths(tree):
        allowed = index.mini(path)
        if not node.children and allowed:
            violations.append(f"leaf {node.name} is not fully grown")
        for child in node.children:
            if child.index != 0 and child.index not in allowed:
                violations.append(f"index {child.index} of a child of node {node.name} not in Mini")
        labels = [(-c.index) for c in node.children]
        if labels != sorted(labels):
            violations.append(f"children of node {node.name} not in descending index order")

    spines = decompose_spines(tree.root)
    if len(spines) > n:
        violations.append(f"{len(spines)} left spines exceed n = {n}")
    buckets = []
    for spine in spines:
        if len(spine) > mu + 1:
            violations.append(f"left spine headed by {spine[0].name} longer than mu+1")
        if any(node.index == 0 for node in spine[1:]):
            violations.append(f"non-head node with index 0 on spine headed by {spine[0].name}")
        bucket = (spine[0].name - 1) // (mu + 1) + 1
        buckets.append(bucket)
        for position, node in enumerate(spine, start=1):
            if node.name != (mu + 1) * (bucket - 1) + position:
                violations.append(f"node {node.name} breaks the bucket law")
    if len(buckets) != len(set(buckets)):
        violations.append("two left spines share a bucket")
    return violations


def node_label(node: TreeNode) -> str:
    states = ",".join(map(str, sorted(node.states)))
    return f"{node.name}:{node.color.value}:{node.index}:{{{states}}}"


def tree_graph(tree: SafraTree, prefix: str = "t") -> nx.DiGraph:
    """Tree as a digraph with ``name:color:index:{states}`` node labels."""
    G = nx.DiGraph(name="safra_tree")
    if tree.root is None:
        G.add_node(f"{prefix}empty", label=_quote("empty"), shape="plaintext")
        return G
    for node in tree.nodes():
        G.add_node(f"{prefix}n{node.name}", label=_quote(node_label(node)), shape="box")
        for child in node.children:
            G.add_edge(f"{prefix}n{node.name}", f"{prefix}n{child.name}")
    return G


def trees_dot(trees: Sequence[SafraTree]) -> str:
    """All trees side by side in one DOT graph, one cluster-free component each."""
    G = nx.DiGraph(name="safra_trees")
    for i, tree in enumerate(trees):
        G = nx.compose(G, tree_graph(tree, prefix=f"s{i}_"))
    return to_dot(G)
