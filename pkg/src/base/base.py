import networkx as nx

from src.classes import OmegaAutomaton, UltimatelyPeriodicWord

ProductNode = tuple[int, int]


class ProductGraph:
    """Product of an automaton with the positions of an ultimately periodic word.

    Nodes are ``(state, position)`` pairs reachable from ``(q0, 0)`` for the
    initial states ``q0``; position ``p`` reads ``word.letter_at(p)`` and moves
    to ``word.next_position(p)``, which wraps from the end of the loop back to
    ``|u|``.
    """

    def __init__(self, automaton: OmegaAutomaton, word: UltimatelyPeriodicWord):
        self.automaton = automaton
        self.word = word
        self.initial_nodes: list[ProductNode] = [(q, 0) for q in sorted(automaton.initial)]
        self.graph: nx.DiGraph = self.create_graph()

    def create_graph(self) -> nx.DiGraph:
        """Build the reachable part of the product as a NetworkX digraph."""
        G = nx.DiGraph()
        stack = list(self.initial_nodes)
        for q, p in stack:
            G.add_node((q, p), state=q, position=p)
        while stack:
            q, p = stack.pop()
            nxt = self.word.next_position(p)
            for target in self.automaton.successors(q, self.word.letter_at(p)):
                node = (target, nxt)
                if node not in G:
                    G.add_node(node, state=target, position=nxt)
                    stack.append(node)
                G.add_edge((q, p), node)
        return G

    def lift(self, states: frozenset[int]) -> set[ProductNode]:
        """Return the product nodes whose automaton state lies in ``states``."""
        return {node for node, q in self.graph.nodes(data="state") if q in states}

    def states_of(self, nodes) -> frozenset[int]:
        return frozenset(self.graph.nodes[node]["state"] for node in nodes)


def _quote(value: object) -> str:
    text = str(value).replace('"', '\\"')
    return f'"{text}"'


def automaton_graph(a: OmegaAutomaton) -> nx.MultiDiGraph:
    """Transition graph of ``a`` with DOT-ready attributes.

    Each state is labelled with its id and the acceptance sets it belongs to
    (``G1``, ``B2``, ...); letters label the edges.
    """
    G = nx.MultiDiGraph(name=f"{a.type}_automaton")
    membership: dict[int, list[str]] = {q: [] for q in range(a.states)}
    for set_name, i, states in a.acceptance.state_sets():
        for q in states:
            membership.setdefault(q, []).append(f"{set_name}{i}")
    for q in range(a.states):
        label = "\\n".join([str(q), " ".join(membership[q])]) if membership[q] else str(q)
        G.add_node(f"s{q}", label=_quote(label), shape="circle")
    for q in sorted(a.initial):
        G.add_node(f"init{q}", shape="point", label=_quote(""))
        G.add_edge(f"init{q}", f"s{q}")
    for q, letter, target in a.edges():
        G.add_edge(f"s{q}", f"s{target}", label=_quote(letter))
    return G


def to_dot(G: nx.Graph) -> str:
    """Render a graph built with quoted attributes as DOT text."""
    return nx.nx_pydot.to_pydot(G).to_string()
