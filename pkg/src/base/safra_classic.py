"""The baseline construction: Safra trees with obligations chosen from the whole index set."""

from __future__ import annotations

import itertools
from collections.abc import Iterator

from src.base.determinize import DEFAULT_CAP, BaseDeterminizer, DeterminizationResult
from src.base.safra_tree import Color, SafraTree, TreeNode, WorkNode
from src.classes import OmegaAutomaton


class ClassicDeterminizer(BaseDeterminizer):
    """Names are recycled smallest-first; new siblings go to the right."""

    algo = "classic"

    def __init__(self, a: OmegaAutomaton):
        super().__init__(a)
        self.indices = frozenset(range(1, self.k + 1))

    @property
    def index_size(self) -> int:
        """Nominal index size ``n*k``.

        Recycled names are not bounded by it: a deep chain of sprouted leaves can
        hold more nodes than ``n*k``. ``determinize`` sizes the output Rabin
        condition by the larger of this and the largest name actually used.
        """
        return self.n * self.k

    def initial(self) -> SafraTree:
        return SafraTree(TreeNode(name=1, states=self.automaton.initial, color=Color.RED, index=0))

    def sprout(self, leaf: WorkNode, ages: Iterator[int]) -> None:
        remaining = self.indices.difference(leaf.path)
        if remaining:
            leaf.add_child(leaf.states, max(remaining), next(ages))

    def b_hit_label(self, path: tuple[int, ...], i: int) -> int:
        return max(j for j in range(i) if j == 0 or j not in path)

    def reset_states(self, path: tuple[int, ...], i: int) -> frozenset[int]:
        return self.G(i)

    def witness_empty(self, path: tuple[int, ...]) -> bool:
        return self.indices.issubset(path)

    def assign_names(self, root: WorkNode) -> None:
        used = {node.old_name for node in root.preorder() if not node.is_new}
        unused = (i for i in itertools.count(1) if i not in used)
        for node in root.preorder():
            node.name = next(unused) if node.is_new else node.old_name
            node.color = self.color_of(node)


def initial_classic(a: OmegaAutomaton) -> SafraTree:
    return ClassicDeterminizer(a).initial()


def classic_step(a: OmegaAutomaton, tree: SafraTree, letter: int) -> SafraTree:
    return ClassicDeterminizer(a).step(tree, letter)


def determinize_classic(a: OmegaAutomaton, cap: int = DEFAULT_CAP) -> DeterminizationResult:
    return ClassicDeterminizer(a).determinize(cap)
