from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt

AcceptanceType = Literal["buchi", "genbuchi", "streett", "parity", "rabin"]
Algorithm = Literal["classic", "improved", "rabin"]

StateSet = frozenset[NonNegativeInt]


class AcceptancePair(BaseModel):
    """One indexed entry of an acceptance condition.

    Buchi and generalized Buchi conditions only use ``B``; Streett, parity and
    Rabin conditions use both sets.
    """

    model_config = ConfigDict(frozen=True)

    G: StateSet = frozenset()
    B: StateSet = frozenset()


class AcceptanceCondition(BaseModel):
    """Tagged acceptance condition with 1-based pair indices ``I = [1..k]``."""

    model_config = ConfigDict(frozen=True)

    type: AcceptanceType
    pairs: tuple[AcceptancePair, ...] = ()

    @property
    def k(self) -> int:
        return len(self.pairs)

    def pair(self, i: int) -> AcceptancePair:
        """Return pair ``i`` (1-based)."""
        if not 1 <= i <= self.k:
            raise IndexError(f"pair index {i} outside [1..{self.k}]")
        return self.pairs[i - 1]

    @property
    def final(self) -> frozenset[int]:
        """Final set of a Buchi condition."""
        return self.pairs[0].B if self.pairs else frozenset()

    def b_family(self) -> tuple[frozenset[int], ...]:
        return tuple(p.B for p in self.pairs)

    def g_family(self) -> tuple[frozenset[int], ...]:
        return tuple(p.G for p in self.pairs)

    def state_sets(self) -> Iterator[tuple[str, int, frozenset[int]]]:
        """Yield ``(set name, index, states)`` for every set the condition uses."""
        uses_g = self.type in ("streett", "parity", "rabin")
        for i, p in enumerate(self.pairs, start=1):
            if uses_g:
                yield "G", i, p.G
            yield "B", i, p.B

    @classmethod
    def buchi(cls, final: Iterable[int]) -> AcceptanceCondition:
        return cls(type="buchi", pairs=(AcceptancePair(B=frozenset(final)),))

    @classmethod
    def genbuchi(cls, b_sets: Iterable[Iterable[int]]) -> AcceptanceCondition:
        return cls(type="genbuchi", pairs=tuple(AcceptancePair(B=frozenset(b)) for b in b_sets))

    @classmethod
    def from_pairs(
        cls, type: AcceptanceType, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]
    ) -> AcceptanceCondition:
        return cls(type=type, pairs=tuple(AcceptancePair(G=frozenset(g), B=frozenset(b)) for g, b in pairs))

    @classmethod
    def streett(cls, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> AcceptanceCondition:
        return cls.from_pairs("streett", pairs)

    @classmethod
    def parity(cls, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> AcceptanceCondition:
        return cls.from_pairs("parity", pairs)

    @classmethod
    def rabin(cls, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> AcceptanceCondition:
        return cls.from_pairs("rabin", pairs)


class OmegaAutomaton(BaseModel):
    """An omega-automaton over letters ``0..alphabet_size-1`` and states ``0..states-1``.

    ``transitions[q][a]`` is the successor set of state ``q`` on letter ``a``.
    Semantic well-formedness is reported by ``src.base.automaton.validate``
    rather than enforced here, so that malformed automata can be inspected.
    """

    model_config = ConfigDict(frozen=True)

    alphabet_size: NonNegativeInt
    states: NonNegativeInt
    initial: StateSet
    transitions: tuple[tuple[StateSet, ...], ...]
    acceptance: AcceptanceCondition

    @property
    def n(self) -> int:
        return self.states

    @property
    def k(self) -> int:
        return self.acceptance.k

    @property
    def type(self) -> AcceptanceType:
        return self.acceptance.type

    def successors(self, q: int, letter: int) -> frozenset[int]:
        return self.transitions[q][letter]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield every transition ``(q, letter, q')`` in ascending order."""
        for q, row in enumerate(self.transitions):
            for letter, targets in enumerate(row):
                for target in sorted(targets):
                    yield q, letter, target

    def with_acceptance(self, acceptance: AcceptanceCondition) -> OmegaAutomaton:
        return self.model_copy(update={"acceptance": acceptance})

    @classmethod
    def from_edges(
        cls,
        alphabet_size: int,
        states: int,
        initial: Iterable[int],
        edges: Iterable[tuple[int, int, int]],
        acceptance: AcceptanceCondition,
    ) -> OmegaAutomaton:
        """Build an automaton from a transition list.

        Raises
        ------
        ValueError
            If a transition leaves a state or uses a letter outside the declared ranges.
        """
        table: list[list[set[int]]] = [[set() for _ in range(alphabet_size)] for _ in range(states)]
        for q, letter, target in edges:
            if not (0 <= q < states and 0 <= letter < alphabet_size):
                raise ValueError(f"transition ({q}, {letter}, {target}) outside {states} states / {alphabet_size} letters")
            table[q][letter].add(target)
        return cls(
            alphabet_size=alphabet_size,
            states=states,
            initial=frozenset(initial),
            transitions=tuple(tuple(frozenset(t) for t in row) for row in table),
            acceptance=acceptance,
        )


class UltimatelyPeriodicWord(BaseModel):
    """The infinite word ``prefix · loop^ω``."""

    model_config = ConfigDict(frozen=True)

    prefix: tuple[NonNegativeInt, ...] = ()
    loop: Annotated[tuple[NonNegativeInt, ...], Field(min_length=1)]

    @property
    def length(self) -> int:
        """Number of product positions, ``|u| + |v|``."""
        return len(self.prefix) + len(self.loop)

    def letter_at(self, position: int) -> int:
        if position < len(self.prefix):
            return self.prefix[position]
        return self.loop[position - len(self.prefix)]

    def next_position(self, position: int) -> int:
        if position + 1 < self.length:
            return position + 1
        return len(self.prefix)

    def letters(self) -> tuple[int, ...]:
        return self.prefix + self.loop

    def __str__(self) -> str:
        return f"{' '.join(map(str, self.prefix))};{' '.join(map(str, self.loop))}"


class DeterminizeSettings(BaseModel):
    """Defaults shared by the CLI and the server tools."""

    algo: Algorithm = "improved"
    cap: Annotated[int, Field(gt=0, description="Maximum number of explored deterministic states")] = 200_000


class ErrorModel(BaseModel):
    error: str


class AutomatonPathModel(BaseModel):
    path: Annotated[str, Field(description="Path of a text-format automaton file")]
    alias: Annotated[str, Field(description="Alias for cached automaton.")] = "default"


class AutomatonCacheModel(BaseModel):
    status: Literal["loaded", "error"]
    alias: Annotated[str, Field(description="alias of the cached automaton.")]
    uri: Annotated[
        str,
        Field(description="uri of the cached automaton. To be referenced with automaton://<alias>"),
    ]
    states: int = 0
    alphabet_size: int = 0
    acceptance: AcceptanceType | None = None


class AutomatonSourceModel(BaseModel):
    uri: Annotated[str | None, Field(description="URI of cached automaton like 'automaton://default'")] = None
    text: Annotated[str | None, Field(description="Automaton in the text format")] = None


class DeterminizeRequest(AutomatonSourceModel, DeterminizeSettings):
    """Request model for determinization."""

    alias: Annotated[str | None, Field(description="Cache the result under this alias")] = None


class DeterminizeResultModel(BaseModel):
    algo: Algorithm
    states: int
    index_size: int
    automaton: Annotated[str, Field(description="Deterministic Rabin automaton in the text format")]
    uri: str | None = None


class MembershipRequest(AutomatonSourceModel):
    word: Annotated[str, Field(description="Ultimately periodic word 'u;v', letters as integers")]


class MembershipResultModel(BaseModel):
    word: str
    accepted: bool


class EquivalenceRequest(BaseModel):
    uri_a: str
    uri_b: str
    samples: Annotated[int, Field(ge=0)] = 200
    maxlen: Annotated[int, Field(ge=1)] = 4
    exhaustive: Annotated[int | None, Field(ge=1)] = None
    seed: int = 0


class EquivalenceResultModel(BaseModel):
    equivalent: bool
    tested: int
    counterexample: str | None = None


class ItsResultModel(BaseModel):
    paths: int
    nodes: int
    tree: Annotated[str, Field(description="Indented rendering, one node per line")]


class SafraNodeModel(BaseModel):
    """JSON form of one Safra tree node and its subtree."""

    name: int
    color: Literal["green", "red", "yellow"]
    index: int
    states: list[int]
    children: list[SafraNodeModel] = []


class DetStateModel(BaseModel):
    """One line of the state dictionary written next to a determinization output."""

    state: int
    label: str
    tree: SafraNodeModel | None = None
