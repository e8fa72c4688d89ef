# graph_cuts.py

# Import necessary libraries
from collections import namedtuple  # For lightweight immutable edge records
from dataclasses import dataclass, field  # For the immutable multigraph container
from fractions import Fraction  # For exact cut weights
from functools import cached_property  # For lazily built edge lookups
import networkx as nx  # For connected component analysis
from design_errors import EmptyNodeSet  # For empty node set errors

# Edge record: endpoints u, v and a stable edge id
Edge = namedtuple('Edge', ['u', 'v', 'id'])

# 1. Multigraph Module
@dataclass(frozen=True)
class Multigraph:
    """
    Undirected multigraph on nodes 0..n-1 with stable edge ids.

    Parallel edges are distinct ids. Self-loops are rejected because they lie on no cut.
    After induced_subgraph, parent_labels[i] is the parent id of node i and edges keep
    their parent ids.
    """
    n: int
    edges: tuple
    parent_labels: tuple = field(default=None)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("Node count must be nonnegative.")
        edges = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, 'edges', edges)
        seen = set()
        for e in edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"Edge {e.id} has an endpoint outside 0..{self.n - 1}.")
            if e.u == e.v:
                raise ValueError(f"Edge {e.id} is a self-loop on node {e.u}.")
            if e.id in seen:
                raise ValueError(f"Duplicate edge id {e.id}.")
            seen.add(e.id)

    @classmethod
    def from_pairs(cls, n, pairs):
        """Build a graph whose edge ids follow the order of `pairs`."""
        return cls(n, tuple(Edge(u, v, i) for i, (u, v) in enumerate(pairs)))

    @property
    def nodes(self):
        return frozenset(range(self.n))

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def edge_ids(self):
        return tuple(e.id for e in self.edges)

    @cached_property
    def _by_id(self):
        return {e.id: e for e in self.edges}

    def edge(self, edge_id):
        """Return the Edge with the given id."""
        return self._by_id[edge_id]


def _crosses(edge, S):
    return (edge.u in S) != (edge.v in S)


def _inside(edge, within):
    return within is None or (edge.u in within and edge.v in within)


# 2. Cut Primitives Module
def cut_edges(G, S, within=None):
    """
    Return the ids of edges with exactly one endpoint in S, sorted by id.

    Args:
    - G (Multigraph): The graph.
    - S (iterable of int): The node set.
    - within (frozenset or None): If given, only edges with both ends in `within` count.

    Returns:
    - list: Sorted edge ids of the cut.
    """
    S = frozenset(S)
    return sorted(e.id for e in G.edges if _inside(e, within) and _crosses(e, S))


def cut_weight(G, S, w=None, within=None):
    """
    Sum of w over cut_edges(G, S); w=None counts edges.

    Args:
    - G (Multigraph): The graph.
    - S (iterable of int): The node set.
    - w (mapping or sequence or None): Nonnegative weight indexed by edge id.
    - within (frozenset or None): Restrict to edges of G[within].

    Returns:
    - int or Fraction: The cut weight.
    """
    S = frozenset(S)
    if w is None:
        return sum(1 for e in G.edges if _inside(e, within) and _crosses(e, S))
    return sum((Fraction(w[e.id]) for e in G.edges if _inside(e, within) and _crosses(e, S)), Fraction(0))


def count_crossing(G, edge_ids, S):
    """Number of edges among `edge_ids` crossing S."""
    S = frozenset(S)
    return sum(1 for i in edge_ids if _crosses(G.edge(i), S))


def induced_subgraph(G, S):
    """
    Extract G[S] with nodes relabelled densely; edges keep their parent ids.

    Raises:
    - EmptyNodeSet: If S is empty.
    """
    S = sorted(set(S))
    if not S:
        raise EmptyNodeSet("Induced subgraph needs a nonempty node set.")
    if S == list(range(G.n)):
        return G
    relabel = {v: i for i, v in enumerate(S)}
    edges = tuple(Edge(relabel[e.u], relabel[e.v], e.id) for e in G.edges if e.u in relabel and e.v in relabel)
    labels = tuple(G.parent_labels[v] for v in S) if G.parent_labels else tuple(S)
    return Multigraph(len(S), edges, labels)


def components(G, removed=()):
    """
    Connected components of G minus the removed edge ids.

    Returns:
    - list: frozensets of nodes, ordered by their smallest node.
    """
    removed = set(removed)
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from((e.u, e.v) for e in G.edges if e.id not in removed)
    parts = [frozenset(c) for c in nx.connected_components(H)]
    return sorted(parts, key=min)


# 3. Enumeration Helpers
def all_subsets(nodes):
    """Yield every subset of `nodes` in bitmask order (bit i is the i-th smallest node)."""
    ordered = sorted(nodes)
    for mask in range(1 << len(ordered)):
        yield frozenset(v for i, v in enumerate(ordered) if mask >> i & 1)


def proper_subsets(nodes):
    """All subsets except the empty set and `nodes` itself, in bitmask order."""
    full = frozenset(nodes)
    return (S for S in all_subsets(full) if S and S != full)


def format_node_set(S, names=None):
    """Render a node set as {a,b,c} in id order."""
    return '{' + ','.join(names[v] if names else str(v) for v in sorted(S)) + '}'


def format_edge(G, edge_id, names=None):
    e = G.edge(edge_id)
    if names:
        return f"{names[e.u]}-{names[e.v]}"
    return f"{e.u}-{e.v}"

