# max_flow_cuts.py

# Import necessary libraries
import logging
import math  # For the common denominator of rational capacities
from dataclasses import dataclass  # For cut result containers
from fractions import Fraction  # For exact cut values
import networkx as nx  # For the max-flow residual network
from networkx.algorithms.flow import edmonds_karp  # For BFS augmenting-path max flow
from graph_cuts import all_subsets, cut_weight  # For cut weights and brute-force enumeration
from design_errors import InvariantViolation, OverlappingTerminals, SizeLimitExceeded  # For domain errors

# Global configuration
SOURCE = 'source'  # Contracted node for pinned sources
SINK = 'sink'  # Contracted node for pinned sinks
DEFAULT_MAX_NODES = 20

# 1. Result Containers
@dataclass(frozen=True)
class MinCutResult:
    value: Fraction
    side: frozenset


@dataclass(frozen=True)
class DeficientCut:
    """Maximiser of f(T) - w(delta(T)) over s-t cuts; `side` always contains s."""
    value: Fraction
    side: frozenset


def _side_key(side):
    return tuple(sorted(side))


def _exact_weights(G, w):
    weights = {e.id: Fraction(1) if w is None else Fraction(w[e.id]) for e in G.edges}
    if any(value < 0 for value in weights.values()):
        raise ValueError("Edge weights must be nonnegative.")
    return weights


# 2. Minimum Cut Module
def min_cut(G, w, sources, sinks):
    """
    Minimum weight cut with pinned sources and sinks.

    Pinned nodes are contracted into a super-source and super-sink, rational weights are
    scaled to integers, and the returned side is the set reachable from the sources in the
    residual network, the unique minimal source side among minimum cuts.

    Args:
    - G (Multigraph): The graph.
    - w (mapping or sequence or None): Nonnegative weights by edge id; None for unit.
    - sources (iterable of int): Nodes forced into the side.
    - sinks (iterable of int): Nodes forced out of the side.

    Returns:
    - MinCutResult: Exact value and source side.

    Raises:
    - ValueError: If sources or sinks is empty.
    - OverlappingTerminals: If sources and sinks intersect.
    """
    sources, sinks = frozenset(sources), frozenset(sinks)
    if not sources or not sinks:
        raise ValueError("Sources and sinks must be nonempty.")
    if sources & sinks:
        raise OverlappingTerminals(f"Nodes {sorted(sources & sinks)} are pinned on both sides.")
    weights = _exact_weights(G, w)
    scale = math.lcm(*(value.denominator for value in weights.values())) if weights else 1

    def contracted(v):
        if v in sources:
            return SOURCE
        return SINK if v in sinks else v

    network = nx.DiGraph()
    network.add_nodes_from([SOURCE, SINK])
    for e in G.edges:
        a, b = contracted(e.u), contracted(e.v)
        capacity = int(weights[e.id] * scale)
        if a == b or capacity == 0:
            continue
        for x, y in ((a, b), (b, a)):
            if network.has_edge(x, y):
                network[x][y]['capacity'] += capacity
            else:
                network.add_edge(x, y, capacity=capacity)

    residual = edmonds_karp(network, SOURCE, SINK, capacity='capacity')
    open_arcs = nx.subgraph_view(residual, filter_edge=lambda x, y: residual[x][y]['capacity'] - residual[x][y]['flow'] > 0)
    reachable = nx.descendants(open_arcs, SOURCE)
    side = sources | frozenset(v for v in reachable if v not in (SOURCE, SINK))
    value = cut_weight(G, side, weights)
    if value * scale != residual.graph['flow_value']:
        raise InvariantViolation(f"Cut value {value} does not match flow value {Fraction(residual.graph['flow_value'], scale)}.")
    return MinCutResult(value, side)


# 3. Maximum Deficiency Cut Module
def max_deficiency_st_cut(reqs, G, w, s, t):
    """
    Maximise f^SNDP(T) - w(delta(T)) over all s-t cuts T.

    For every pair i both orientations {s_i, s}|{t_i, t} and {s_i, t}|{t_i, s} are scored as
    r_i - mincut, skipping contradictory pinnings. The cut separating no pair scores
    -mincut(s, t). Ties go to the lexicographically smallest side.

    Args:
    - reqs (SndpRequirements): The requirements defining f^SNDP.
    - G (Multigraph): The graph.
    - w (mapping or sequence or None): Edge weights; None for unit.
    - s (int): Node kept in the returned side.
    - t (int): Node kept out of the returned side.

    Returns:
    - DeficientCut: The maximum value and a maximiser containing s.
    """
    if s == t:
        raise ValueError("s and t must differ.")
    candidates = [(0, frozenset([s]), frozenset([t]))]
    for si, ti, r in reqs:
        for A, B in (({si, s}, {ti, t}), ({si, t}, {ti, s})):
            A, B = frozenset(A), frozenset(B)
            if A & B:
                continue
            candidates.append((r, A, B))

    best = None
    for requirement, A, B in candidates:
        result = min_cut(G, w, A, B)
        side = result.side if s in result.side else G.nodes - result.side
        cut = DeficientCut(requirement - result.value, side)
        if best is None or cut.value > best.value or (cut.value == best.value and _side_key(cut.side) < _side_key(best.side)):
            best = cut
    logging.debug(f"Max deficiency {s}-{t} cut has value {best.value}.")
    return best


def max_deficiency_st_cut_brute_force(f, G, w, s, t, within=None, max_nodes=DEFAULT_MAX_NODES):
    """
    Enumerate s-t cuts T inside `within` and maximise f(T) - w(delta_{G[within]}(T)).

    Raises:
    - SizeLimitExceeded: If the ground set exceeds max_nodes.
    """
    within = G.nodes if within is None else frozenset(within)
    if len(within) > max_nodes:
        raise SizeLimitExceeded(f"Brute-force cut scan is capped at {max_nodes} nodes.")
    best = None
    for T in all_subsets(within):
        if s not in T or t in T:
            continue
        value = f(T) - cut_weight(G, T, w, within=within)
        if best is None or value > best.value or (value == best.value and _side_key(T) < _side_key(best.side)):
            best = DeficientCut(Fraction(value), T)
    return best
