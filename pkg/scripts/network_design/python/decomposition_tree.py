# decomposition_tree.py

# Import necessary libraries
import logging
from dataclasses import dataclass  # For tree node containers
from fractions import Fraction  # For exact deficiencies
from joblib import Parallel, delayed  # For parallel per-edge deficiency queries
from graph_cuts import components, count_crossing, cut_edges, cut_weight, format_node_set, proper_subsets  # For cut primitives
from cut_requirements import SndpRequirements, deficiency, restrict, sndp_function, symmetrize  # For restrictions
from max_flow_cuts import DeficientCut, max_deficiency_st_cut, max_deficiency_st_cut_brute_force  # For max-deficiency s-t cuts
from design_errors import InvariantViolation, SizeLimitExceeded  # For domain errors

# Global configuration
DEFAULT_MAX_NODES = 20  # Cap for brute-force splits of non-SNDP functions
DEFAULT_MAX_PARTS = 16  # Cap on leaves for gamma_eval
DEFAULT_N_JOBS = 1

# 1. Tree Containers
@dataclass(frozen=True, eq=False)
class DecompNode:
    """
    Tree node labelled (fn, S).

    Internal nodes split S into split_cut and S - split_cut along a maximum deficiency cut;
    `boundary` holds the edges of G[S] crossing the split.
    """
    fn: object
    S: frozenset
    children: tuple = ()
    split_cut: frozenset = None
    deficiency: Fraction = None
    boundary: tuple = ()

    @property
    def is_leaf(self):
        return not self.children


@dataclass(frozen=True)
class Decomposition:
    leaves: tuple
    forced_edges: frozenset

    @property
    def partition(self):
        return [V for _, V in self.leaves]


def _better(candidate, best):
    if best is None or candidate.value > best.value:
        return True
    return candidate.value == best.value and tuple(sorted(candidate.side)) < tuple(sorted(best.side))


# 2. Maximum Deficiency Split Module
def _split_with_oracle(root, G, node_fn, S):
    s = min(S)
    best = None
    for t in sorted(S - {s}):
        cut = max_deficiency_st_cut(root.sndp, G, None, s, t)
        candidate = DeficientCut(cut.value, cut.side & S)
        if _better(candidate, best):
            best = candidate
    local = deficiency(node_fn, G, None, best.side, within=S)
    if local != best.value:
        raise InvariantViolation(f"Global deficiency {best.value} does not transfer to {sorted(best.side)} (got {local}).")
    return best


def _split_brute_force(node_fn, G, S, max_nodes):
    s = min(S)
    best = None
    for t in sorted(S - {s}):
        candidate = max_deficiency_st_cut_brute_force(node_fn, G, None, s, t, within=S, max_nodes=max_nodes)
        if _better(candidate, best):
            best = candidate
    return best


def build_decomposition_tree(f, G, max_nodes=DEFAULT_MAX_NODES):
    """
    Canonical decomposition tree of a symmetric, normalised, weakly supermodular f.

    A node (h, S) is split along a maximum deficiency cut of (h, G[S]) while that deficiency
    is positive. With requirement pairs attached, every split is found by global s-t
    max-deficiency queries on (f, G) intersected with S; otherwise by enumerating the s-t
    cuts of G[S] for s = min(S) and every other t.

    Args:
    - f (CutFunction or SndpRequirements): The root function.
    - G (Multigraph): The graph.
    - max_nodes (int): Cap for the enumeration path.

    Returns:
    - DecompNode: The root.

    Raises:
    - SizeLimitExceeded: If f has no requirement pairs and G has more than max_nodes nodes.
    """
    if isinstance(f, SndpRequirements):
        f = symmetrize(sndp_function(f, G.n))
    if f.sndp is None and G.n > max_nodes:
        raise SizeLimitExceeded(f"Brute-force decomposition is capped at {max_nodes} nodes, got {G.n}.")

    def build(node_fn, S, depth):
        if len(S) < 2:
            return DecompNode(node_fn, S)
        best = _split_with_oracle(f, G, node_fn, S) if f.sndp is not None else _split_brute_force(node_fn, G, S, max_nodes)
        if best.value <= 0:
            return DecompNode(node_fn, S)
        A, B = best.side, S - best.side
        logging.debug(f"Depth {depth}: splitting {sorted(S)} at {sorted(A)} with deficiency {best.value}.")
        children = (build(restrict(node_fn, G, A), A, depth + 1), build(restrict(node_fn, G, B), B, depth + 1))
        return DecompNode(node_fn, S, children, A, best.value, tuple(cut_edges(G, A, within=S)))

    tree = build(f, f.domain, 0)
    logging.info(f"Decomposition tree built with {sum(1 for node, _ in walk(tree) if node.is_leaf)} leaves.")
    return tree


def walk(tree):
    """Yield (node, ancestors) in pre-order, children left to right."""
    stack = [(tree, ())]
    while stack:
        node, ancestors = stack.pop()
        yield node, ancestors
        for child in reversed(node.children):
            stack.append((child, ancestors + (node,)))


def leaf_instances(tree):
    """Leaves (f_i, V_i) left to right, and the forced edges collected from every split."""
    leaves = tuple((node.fn, node.S) for node, _ in walk(tree) if node.is_leaf)
    forced = frozenset(e for node, _ in walk(tree) for e in node.boundary)
    return Decomposition(leaves, forced)


def format_tree(tree, names=None):
    lines = []
    for node, ancestors in walk(tree):
        depth = len(ancestors)
        if node.is_leaf:
            lines.append(f"leaf {depth} S={format_node_set(node.S, names)}")
        else:
            lines.append(f"node {depth} S={format_node_set(node.S, names)} split=A={format_node_set(node.split_cut, names)} def={node.deficiency}")
    return lines


# 3. Succinct Description Module
def _edge_has_small_cut(reqs, G, edge_id):
    e = G.edge(edge_id)
    return max_deficiency_st_cut(reqs, G, None, e.u, e.v).value > 0


def small_cut_boundary_partition(reqs, G, n_jobs=DEFAULT_N_JOBS):
    """
    Edges lying on some small cut, and the components of G without them.

    Returns:
    - tuple: (frozenset Z of edge ids, list of node sets ordered by smallest node).
    """
    edge_ids = sorted(G.edge_ids)
    if n_jobs == 1:
        flags = [_edge_has_small_cut(reqs, G, e) for e in edge_ids]
    else:
        flags = Parallel(n_jobs=n_jobs)(delayed(_edge_has_small_cut)(reqs, G, e) for e in edge_ids)
    Z = frozenset(e for e, flag in zip(edge_ids, flags) if flag)
    return Z, components(G, Z)


def gamma_eval(f, G, partition, i, S, max_parts=DEFAULT_MAX_PARTS):
    """
    max over unions X of the other parts of f(S + X) - |delta_Z(S + X)|, with Z the edges
    between different parts; 0 when S is empty or the whole part.

    Raises:
    - SizeLimitExceeded: If the partition has more than max_parts parts.
    """
    if isinstance(f, SndpRequirements):
        f = symmetrize(sndp_function(f, G.n))
    parts = [frozenset(p) for p in partition]
    if len(parts) > max_parts:
        raise SizeLimitExceeded(f"gamma evaluation is capped at {max_parts} parts, got {len(parts)}.")
    S = frozenset(S)
    home = parts[i]
    if not S <= home:
        raise ValueError("S must lie inside the selected part.")
    if not S or S == home:
        return 0
    label = {v: j for j, part in enumerate(parts) for v in part}
    between = tuple(e.id for e in G.edges if label[e.u] != label[e.v])
    others = [part for j, part in enumerate(parts) if j != i]
    best = None
    for mask in range(1 << len(others)):
        T = S.union(*(part for j, part in enumerate(others) if mask >> j & 1))
        value = f(T) - count_crossing(G, between, T)
        best = value if best is None else max(best, value)
    return best


# 4. Leaf Feasibility Module
def satisfies_leaf_instances(decomposition, G, x):
    """
    True iff x is 1 on the forced edges and x(delta_{G[V_i]}(T)) >= f_i(T) for every leaf.

    Args:
    - decomposition (Decomposition): Leaves and forced edges.
    - G (Multigraph): The graph.
    - x (mapping): Edge values by id (a 0/1 indicator for an edge set).
    """
    if any(x[e] != 1 for e in decomposition.forced_edges):
        return False
    for fn, V in decomposition.leaves:
        for T in proper_subsets(V):
            if cut_weight(G, T, x, within=V) < fn(T):
                return False
    return True


def separating_small_cut(f, G, A, B, max_nodes=DEFAULT_MAX_NODES):
    """First cut S (bitmask order) with A inside, B outside and positive deficiency, or None."""
    if G.n > max_nodes:
        raise SizeLimitExceeded(f"Small-cut search is capped at {max_nodes} nodes, got {G.n}.")
    A, B = frozenset(A), frozenset(B)
    for S in proper_subsets(G.nodes):
        if A <= S and not (B & S) and deficiency(f, G, None, S) > 0:
            return S
    return None
