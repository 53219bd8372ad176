"""Reduced Safra trees: Mini-chosen obligations, fully grown left spines and bucket naming.

Every left spine owns a bucket of ``mu + 1`` consecutive names and the node
at position ``p`` of a spine in bucket ``b`` is named ``(mu + 1)(b - 1) + p``.
A spine keeps its bucket as long as its head stays a head; spines grafted
into another spine lose theirs and their nodes are renamed, which turns them
red for one step.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator

from src.base.determinize import DEFAULT_CAP, BaseDeterminizer, DeterminizationResult
from src.base.its import MiniIndex
from src.base.safra_tree import (
    EMPTY_TREE,
    Color,
    SafraTree,
    WorkNode,
    check_rsts,
    decompose_spines,
    fresh_ages,
    freeze,
    structural_sort,
)
from src.classes import OmegaAutomaton


def grow_left_spine(root: WorkNode, index: MiniIndex, ages: Iterator[int]) -> None:
    """Extend every leaf by ``max(Mini)`` children until all leaves are exhausted."""
    for node in list(root.preorder()):
        leaf = node
        while not leaf.children:
            allowed = index.mini(leaf.path)
            if not allowed:
                break
            leaf = leaf.add_child(leaf.states, max(allowed), next(ages))


def assign_bucket_names(root: WorkNode, mu: int) -> list[tuple[int, int]]:
    """Name a working tree by the bucket law and color it.

    Spines whose head carried a head name before keep that bucket; the others
    take the smallest free buckets from left to right. A node is red when it
    is new or its name changed, otherwise green or yellow.

    Returns
    -------
    list[tuple[int, int]]
        ``(old name, new name)`` for every surviving node that was renamed.
    """
    width = mu + 1
    spines = decompose_spines(root)
    inherited: list[int | None] = []
    for spine in spines:
        old = spine[0].old_name
        inherited.append((old - 1) // width + 1 if old is not None and (old - 1) % width == 0 else None)
    claimed = {b for b in inherited if b is not None}
    free = (b for b in itertools.count(1) if b not in claimed)

    renamed: list[tuple[int, int]] = []
    for spine, bucket in zip(spines, inherited):
        if bucket is None:
            bucket = next(free)
        for position, node in enumerate(spine, start=1):
            node.name = width * (bucket - 1) + position
            if node.is_new:
                node.color = Color.RED
            elif node.name != node.old_name:
                renamed.append((node.old_name, node.name))
                node.color = Color.RED
            else:
                node.color = Color.GREEN if node.green else Color.YELLOW
    return renamed


class ImprovedDeterminizer(BaseDeterminizer):
    """Obligations come from Mini, so a path carries at most ``mu`` non-zero labels.

    A child labelled ``i`` is reset by the G sets of every index that ``i``
    newly covers, not only by ``G(i)``: covered indices never become positive
    obligations below it, so their G sets have to be avoided there.
    """

    algo = "improved"

    def __init__(self, a: OmegaAutomaton):
        super().__init__(a)
        self.index = MiniIndex(self.b_family, track_empty=True)
        self.mu = min(self.n + len(self.index.empty), self.k)
        self._resets: dict[tuple[tuple[int, ...], int], frozenset[int]] = {}

    @property
    def index_size(self) -> int:
        return self.n * (self.mu + 1)

    def initial(self) -> SafraTree:
        ages = fresh_ages()
        root = WorkNode(states=set(self.automaton.initial), index=0, path=(), age=next(ages))
        grow_left_spine(root, self.index, ages)
        assign_bucket_names(root, self.mu)
        return freeze(root)

    def b_hit_label(self, path: tuple[int, ...], i: int) -> int:
        return max((m for m in self.index.mini(path) if m < i), default=0)

    def reset_states(self, path: tuple[int, ...], i: int) -> frozenset[int]:
        key = (path, i)
        if key not in self._resets:
            states: frozenset[int] = frozenset()
            for j in self.index.newly_covered(path, i):
                states |= self.G(j)
            self._resets[key] = states
        return self._resets[key]

    def witness_empty(self, path: tuple[int, ...]) -> bool:
        return not self.index.mini(path)

    def complete(self, root: WorkNode, ages: Iterator[int]) -> None:
        grow_left_spine(root, self.index, ages)
        structural_sort(root)

    def assign_names(self, root: WorkNode) -> None:
        assign_bucket_names(root, self.mu)

    def step_with_trace(self, tree: SafraTree, letter: int) -> tuple[SafraTree, list[tuple[int, int]]]:
        """The transition plus the ``(old name, new name)`` renamings it performed."""
        root = self.transform(tree, letter)
        if root is None:
            return EMPTY_TREE, []
        renamed = [
            (node.old_name, node.name)
            for node in root.preorder()
            if node.old_name is not None and node.name != node.old_name
        ]
        return freeze(root), renamed

    def violations(self, tree: SafraTree) -> list[str]:
        return check_rsts(tree, self.index, self.n, self.mu)


def initial_improved(a: OmegaAutomaton) -> SafraTree:
    return ImprovedDeterminizer(a).initial()


def improved_step(a: OmegaAutomaton, tree: SafraTree, letter: int) -> SafraTree:
    return ImprovedDeterminizer(a).step(tree, letter)


def determinize_improved(a: OmegaAutomaton, cap: int = DEFAULT_CAP) -> DeterminizationResult:
    return ImprovedDeterminizer(a).determinize(cap)
