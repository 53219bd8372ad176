"""Exploration shared by the Safra-style determinizers.

A determinizer turns a Streett-like automaton into a deterministic Rabin
automaton whose states are Safra trees. Subclasses decide how obligations are
chosen, whether leaves sprout or grow, and how nodes are named; the step
pipeline and the breadth-first exploration live here.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator
from typing import ClassVar

from loguru import logger
from pydantic import BaseModel, PrivateAttr, computed_field

from src.base.automaton import as_streett, require_valid, subset_step
from src.base.safra_tree import (
    EMPTY_TREE,
    Color,
    SafraTree,
    WorkNode,
    decompose_spines,
    fresh_ages,
    freeze,
    horizontal_merge,
    prune,
    thaw,
    vertical_merge,
)
from src.classes import (
    AcceptanceCondition,
    AcceptancePair,
    Algorithm,
    DeterminizeSettings,
    DetStateModel,
    OmegaAutomaton,
)
from src.exceptions import ExplorationLimitError, InvalidAutomatonError

DEFAULT_CAP = DeterminizeSettings().cap


class DeterminizationResult(BaseModel):
    """A deterministic Rabin automaton plus what each of its states stands for.

    ``trees`` holds the Safra tree behind every output state; it stays empty
    for constructions whose states are not trees.
    """

    automaton: OmegaAutomaton
    algo: Algorithm
    labels: list[str]
    _trees: list[SafraTree] = PrivateAttr(default_factory=list)

    def __init__(self, trees: list[SafraTree] | None = None, **data):
        super().__init__(**data)
        self._trees = list(trees or [])

    @property
    def trees(self) -> list[SafraTree]:
        return self._trees

    @computed_field
    @property
    def states(self) -> int:
        return self.automaton.states

    @computed_field
    @property
    def index_size(self) -> int:
        return self.automaton.k

    @computed_field
    @property
    def max_nodes(self) -> int:
        return max((len(t) for t in self._trees), default=0)

    @computed_field
    @property
    def max_spine(self) -> int:
        return max((len(s) for t in self._trees for s in decompose_spines(t.root)), default=0)

    def dictionary(self) -> list[DetStateModel]:
        """Id, canonical label and tree of every output state."""
        return [
            DetStateModel(state=state, label=label, tree=self._trees[state].to_model() if self._trees else None)
            for state, label in enumerate(self.labels)
        ]

    def dictionary_lines(self) -> str:
        """The state dictionary as JSON lines."""
        return "".join(entry.model_dump_json() + "\n" for entry in self.dictionary())


def prepare_streett(a: OmegaAutomaton) -> OmegaAutomaton:
    """Validate ``a`` and bring it into simplified Streett form with at least one pair."""
    require_valid(a)
    if a.type == "rabin":
        raise InvalidAutomatonError("Streett determinization needs buchi, genbuchi, parity or streett input")
    streett = as_streett(a)
    if streett.k == 0:
        logger.debug("No acceptance pairs; adding the vacuous pair <{}, Q>")
        vacuous = AcceptancePair(G=frozenset(), B=frozenset(range(streett.states)))
        streett = streett.with_acceptance(AcceptanceCondition(type="streett", pairs=(vacuous,)))
    return streett


def rabin_pairs(trees: list[SafraTree], index_size: int) -> tuple[AcceptancePair, ...]:
    """Pair ``i``: G holds trees with a green node named ``i``; B those with a red or no node named ``i``."""
    green = [t.names_with(Color.GREEN) for t in trees]
    red = [t.names_with(Color.RED) for t in trees]
    present = [t.names() for t in trees]
    pairs = []
    for i in range(1, index_size + 1):
        g = frozenset(s for s in range(len(trees)) if i in green[s])
        b = frozenset(s for s in range(len(trees)) if i in red[s] or i not in present[s])
        pairs.append(AcceptancePair(G=g, B=b))
    return tuple(pairs)


def literal_pairs(a: OmegaAutomaton) -> OmegaAutomaton:
    """Swap G and B of every pair of a determinization output.

    The result matches the acceptance clause read literally, where a state
    with a green node named ``i`` lands in B(i); it is the complement of the
    intended language whenever the output is total.
    """
    if a.type != "rabin":
        raise InvalidAutomatonError(f"literal_pairs expects rabin acceptance, got {a.type}")
    swapped = tuple(AcceptancePair(G=p.B, B=p.G) for p in a.acceptance.pairs)
    return a.with_acceptance(AcceptanceCondition(type="rabin", pairs=swapped))


class BaseDeterminizer(ABC):
    algo: ClassVar[Algorithm]

    def __init__(self, a: OmegaAutomaton):
        self.source = a
        self.automaton = prepare_streett(a)
        self.n = self.automaton.states
        self.k = self.automaton.k
        self.b_family = self.automaton.acceptance.b_family()
        self.g_family = self.automaton.acceptance.g_family()

    def B(self, i: int) -> frozenset[int]:
        return self.b_family[i - 1]

    def G(self, i: int) -> frozenset[int]:
        return self.g_family[i - 1]

    @property
    @abstractmethod
    def index_size(self) -> int:
        """Number of names the construction may use."""
        raise NotImplementedError

    @abstractmethod
    def initial(self) -> SafraTree:
        raise NotImplementedError

    @abstractmethod
    def b_hit_label(self, path: tuple[int, ...], i: int) -> int:
        """Label of the sibling receiving states of a child labelled ``i`` that visit ``B(i)``."""
        raise NotImplementedError

    @abstractmethod
    def reset_states(self, path: tuple[int, ...], i: int) -> frozenset[int]:
        """States that reset a child labelled ``i`` of a node with index path ``path``."""
        raise NotImplementedError

    @abstractmethod
    def witness_empty(self, path: tuple[int, ...]) -> bool:
        """True when a node with this index path has no positive obligation left."""
        raise NotImplementedError

    @abstractmethod
    def assign_names(self, root: WorkNode) -> None:
        """Set ``name`` and ``color`` on every node of the finished working tree."""
        raise NotImplementedError

    def sprout(self, leaf: WorkNode, ages: Iterator[int]) -> None:
        """Expansion of a leaf; nothing by default."""

    def complete(self, root: WorkNode, ages: Iterator[int]) -> None:
        """Work done after the merges and the green marking; nothing by default."""

    def color_of(self, node: WorkNode) -> Color:
        if node.is_new:
            return Color.RED
        return Color.GREEN if node.green else Color.YELLOW

    def expand(self, root: WorkNode, ages: Iterator[int]) -> None:
        # Only nodes present before expansion are visited, parents before children.
        for node in list(root.preorder()):
            if not node.states:
                continue
            if not node.children:
                self.sprout(node, ages)
                continue
            for child in list(node.children):
                if child.index == 0 or not child.states:
                    continue
                hit = child.states & self.B(child.index)
                if hit:
                    child.remove_states(hit)
                    node.add_child(hit, self.b_hit_label(node.path, child.index), next(ages))
                reset = child.states & self.reset_states(node.path, child.index)
                if reset:
                    child.remove_states(reset)
                    node.add_child(reset, child.index, next(ages))

    def mark_green(self, root: WorkNode) -> None:
        for node in root.preorder():
            if node.is_new or node.children:
                continue
            node.green = node.had_children or self.witness_empty(node.path)

    def transform(self, tree: SafraTree, letter: int) -> WorkNode | None:
        """Run one transition on a working copy; ``None`` stands for the empty tree."""
        if tree.root is None:
            return None
        ages = fresh_ages()
        root = thaw(tree.root, ages)
        for node in root.preorder():
            node.states = set(subset_step(self.automaton, node.states, letter))
        if not root.states:
            return None
        prune(root)
        self.expand(root, ages)
        prune(root)
        horizontal_merge(root)
        vertical_merge(root)
        self.mark_green(root)
        self.complete(root, ages)
        self.assign_names(root)
        return root

    def step(self, tree: SafraTree, letter: int) -> SafraTree:
        root = self.transform(tree, letter)
        return EMPTY_TREE if root is None else freeze(root)

    def determinize(self, cap: int = DEFAULT_CAP) -> DeterminizationResult:
        """Breadth-first closure of ``step`` from the initial tree.

        Raises
        ------
        ExplorationLimitError
            If more than ``cap`` distinct trees are reached.
        """
        initial = self.initial()
        ids: dict[SafraTree, int] = {initial: 0}
        trees = [initial]
        rows = []
        for tree in trees:
            row = []
            for letter in range(self.automaton.alphabet_size):
                successor = self.step(tree, letter)
                if successor not in ids:
                    if len(trees) >= cap:
                        logger.warning(f"{self.algo} determinization stopped at {len(trees)} states")
                        raise ExplorationLimitError(cap)
                    ids[successor] = len(trees)
                    trees.append(successor)
                row.append(frozenset({ids[successor]}))
            rows.append(tuple(row))

        largest = max((max(t.names(), default=0) for t in trees), default=0)
        index_size = max(self.index_size, largest)
        automaton = OmegaAutomaton(
            alphabet_size=self.automaton.alphabet_size,
            states=len(trees),
            initial=frozenset({0}),
            transitions=tuple(rows),
            acceptance=AcceptanceCondition(type="rabin", pairs=rabin_pairs(trees, index_size)),
        )
        logger.info(f"{self.algo} determinization: {len(trees)} states, index size {index_size}")
        return DeterminizationResult(
            automaton=automaton,
            algo=self.algo,
            labels=[t.serialize() for t in trees],
            trees=trees,
        )
