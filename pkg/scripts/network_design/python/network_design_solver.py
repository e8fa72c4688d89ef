# network_design_solver.py

# Import necessary libraries
import logging
import math  # For integer cost scaling
from dataclasses import dataclass, field  # For instance and report containers
from fractions import Fraction  # For exact costs
from itertools import combinations  # For fault-set enumeration
import numpy as np  # For the vectorised subset scan
from scipy.special import comb  # For exact enumeration bounds
from joblib import Parallel, delayed  # For parallel subset scans
from graph_cuts import Edge, Multigraph, components, cut_edges, cut_weight, proper_subsets  # For graph primitives
from cut_requirements import (GraceProfile, SndpRequirements, grace_function, kecss_function,  # For requirement families
                              sndp_function, symmetrize)
from max_flow_cuts import min_cut  # For the k-edge-connectivity test
from cut_lp import HALF, has_half_edge, separation_oracle_brute_force, separation_oracle_crsndp, solve_crlp  # For the LP rounds
from design_errors import AssertionHalfEdge, InvariantViolation, IterationLimit, NotKConnected, SizeLimitExceeded  # For domain errors

# Global configuration
CUT_RELATIVE = 'cut'
PATH_RELATIVE = 'path'
DEFAULT_MAX_EDGES = 24  # Largest edge count for exact enumeration
DEFAULT_MAX_NODES = 20
DEFAULT_PATH_ENUMERATION_CAP = 10_000_000
DEFAULT_N_JOBS = 1
SCAN_CHUNK = 1 << 14  # Subsets per vectorised block
ROW_BLOCK = 256  # Cut rows per feasibility pass

# 1. Instance and Result Containers
@dataclass(frozen=True, eq=False)
class Instance:
    """
    Network design instance: graph, edge costs and one requirement family.

    `requirement` is the symmetric normalised cut function. `family` is 'sndp', 'kecss' or
    'grace'; `reqs`, `k` and `profile` hold the family's parameters.
    """
    graph: Multigraph
    costs: tuple
    requirement: object
    family: str = 'sndp'
    reqs: SndpRequirements = None
    k: int = None
    profile: GraceProfile = None
    node_names: tuple = ()

    def __post_init__(self):
        costs = tuple(Fraction(c) for c in self.costs)
        if len(costs) != self.graph.m or sorted(self.graph.edge_ids) != list(range(self.graph.m)):
            raise ValueError("Costs must be given for edge ids 0..m-1.")
        if any(c < 0 for c in costs):
            raise ValueError("Edge costs must be nonnegative.")
        object.__setattr__(self, 'costs', costs)
        if not self.node_names:
            object.__setattr__(self, 'node_names', tuple(f"v{i}" for i in range(self.graph.n)))
        if self.reqs is not None and any(v >= self.graph.n for v in self.reqs.terminals):
            raise ValueError("Requirement terminals must be nodes of the graph.")

    def cost_of(self, edges):
        return sum((self.costs[e] for e in edges), Fraction(0))


def sndp_instance(graph, costs, reqs, node_names=()):
    reqs = reqs if isinstance(reqs, SndpRequirements) else SndpRequirements(tuple(reqs))
    requirement = symmetrize(sndp_function(reqs, graph.n))
    return Instance(graph, tuple(costs), requirement, 'sndp', reqs=reqs, node_names=tuple(node_names))


def kecss_instance(graph, costs, k, node_names=()):
    requirement = symmetrize(kecss_function(k, graph.n))
    return Instance(graph, tuple(costs), requirement, 'kecss', reqs=requirement.sndp, k=k, node_names=tuple(node_names))


def grace_instance(graph, costs, profile, node_names=()):
    requirement = symmetrize(grace_function(profile, graph.n))
    return Instance(graph, tuple(costs), requirement, 'grace', profile=profile, node_names=tuple(node_names))


@dataclass(frozen=True)
class RoundRecord:
    free_edges: int
    chosen: tuple
    objective: Fraction


@dataclass(frozen=True)
class Solution:
    edges: frozenset
    cost: Fraction
    lp_bound: Fraction
    trace: tuple = ()


@dataclass(frozen=True)
class CutWitness:
    """Cut S with |delta_H(S)| = provided < required = min{f(S), |delta_G(S)|}."""
    side: frozenset
    required: int
    provided: Fraction


@dataclass(frozen=True)
class PathWitness:
    """Faults with |faults| < r that disconnect pair `pair_index` in H but not in G."""
    pair_index: int
    faults: tuple
    pair: tuple


@dataclass(frozen=True)
class ComponentWitness:
    """A small component of G - faults that is not a component of H - faults, or vice versa."""
    faults: tuple
    component: frozenset


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness: object = field(default=None)


def _validate_subset(inst, H):
    H = frozenset(H)
    unknown = H - set(inst.graph.edge_ids)
    if unknown:
        raise ValueError(f"Edges {sorted(unknown)} are not in the graph.")
    return H


def _indicator(inst, H):
    return {e: Fraction(1) if e in H else Fraction(0) for e in inst.graph.edge_ids}


def _violated_cut(inst, H, n_jobs=DEFAULT_N_JOBS, max_nodes=DEFAULT_MAX_NODES):
    if inst.reqs is not None:
        return separation_oracle_crsndp(inst.reqs, inst.graph, (), _indicator(inst, H), n_jobs=n_jobs)
    return separation_oracle_brute_force(inst.requirement, inst.graph, (), _indicator(inst, H), max_nodes=max_nodes)


# 2. Iterative Rounding Module
def crndp_alg(inst, iteration_limit_factor=10, n_jobs=DEFAULT_N_JOBS, max_nodes=DEFAULT_MAX_NODES):
    """
    Iterative rounding for cut-relative network design.

    Each round solves the residual LP with the bought edges fixed to 1 and buys every
    free edge with x_e >= 1/2, until the bought set has no violated cut.

    Args:
    - inst (Instance): The instance.
    - iteration_limit_factor (int): Cut budget factor for each LP.
    - n_jobs (int): joblib workers for the separation oracle.
    - max_nodes (int): Cap for the brute-force oracle of non-SNDP families.

    Returns:
    - Solution: Bought edges, their cost, the LP bound and the per-round trace.

    Raises:
    - AssertionHalfEdge: If an extreme point has no edge at 1/2 or more.
    - IterationLimit: If more than m rounds are needed.
    """
    G = inst.graph
    bought = frozenset()
    trace = []
    lp_bound = None
    for _ in range(G.m + 1):
        if _violated_cut(inst, bought, n_jobs, max_nodes) is None:
            break
        solution = solve_crlp(inst.requirement, G, inst.costs, fixed=bought, iteration_limit_factor=iteration_limit_factor,
                              n_jobs=n_jobs, max_nodes=max_nodes)
        if lp_bound is None:
            lp_bound = solution.objective
        if not has_half_edge(solution):
            raise AssertionHalfEdge(f"Extreme point over {len(solution.free_edges)} free edges has no edge at 1/2.")
        chosen = tuple(e for e in solution.free_edges if solution.x[e] >= HALF)
        bought |= frozenset(chosen)
        trace.append(RoundRecord(len(solution.free_edges), chosen, solution.objective))
        logging.debug(f"Round {len(trace)}: LP {solution.objective}, bought {list(chosen)}.")
    else:
        raise IterationLimit(f"Rounding did not finish within {G.m} rounds.")

    lp_bound = Fraction(0) if lp_bound is None else lp_bound
    cost = inst.cost_of(bought)
    if cost > 2 * lp_bound:
        raise InvariantViolation(f"Rounded cost {cost} exceeds twice the LP bound {lp_bound}.")
    logging.info(f"Rounding finished in {len(trace)} rounds: cost {cost}, LP bound {lp_bound}.")
    return Solution(bought, cost, lp_bound, tuple(trace))


# 3. Feasibility Verification Module
def check_cut_relative(inst, H, n_jobs=DEFAULT_N_JOBS, max_nodes=DEFAULT_MAX_NODES):
    """Check |delta_H(S)| >= min{f(S), |delta_G(S)|} for every cut S."""
    H = _validate_subset(inst, H)
    cut = _violated_cut(inst, H, n_jobs, max_nodes)
    if cut is None:
        return FeasibilityReport(True)
    return FeasibilityReport(False, CutWitness(cut.side, cut.rhs, cut.lhs))


def _component_labels(parts):
    return {v: i for i, part in enumerate(parts) for v in part}


def check_path_relative(inst, H, enumeration_cap=DEFAULT_PATH_ENUMERATION_CAP):
    """
    Check that every fault set F with |F| < r_i which leaves s_i, t_i connected in G also
    leaves them connected in H.

    Fault sets are scanned by size, then lexicographically; the first failure is the witness.

    Args:
    - inst (Instance): An instance with requirement pairs.
    - H (iterable of int): Candidate edge set.
    - enumeration_cap (int): Cap on the number of (pair, fault set) checks.

    Returns:
    - FeasibilityReport: With a PathWitness when infeasible.

    Raises:
    - SizeLimitExceeded: If the enumeration exceeds the cap.
    """
    if inst.reqs is None:
        raise ValueError("Path-relative feasibility needs requirement pairs.")
    H = _validate_subset(inst, H)
    G = inst.graph
    edge_ids = sorted(G.edge_ids)
    total = sum(comb(G.m, j, exact=True) for _, _, r in inst.reqs for j in range(r))
    if total > enumeration_cap:
        raise SizeLimitExceeded(f"Path-relative check needs {total} fault sets, cap is {enumeration_cap}.")
    missing = [e for e in edge_ids if e not in H]
    for size in range(inst.reqs.max_requirement):
        live = [(i, s, t) for i, (s, t, r) in enumerate(inst.reqs) if r > size]
        for faults in combinations(edge_ids, size):
            in_g = _component_labels(components(G, faults))
            in_h = _component_labels(components(G, list(faults) + missing))
            for i, s, t in live:
                if in_g[s] == in_g[t] and in_h[s] != in_h[t]:
                    return FeasibilityReport(False, PathWitness(i, faults, (s, t)))
    return FeasibilityReport(True)


def check_graceful_degradation(inst, H, enumeration_cap=DEFAULT_PATH_ENUMERATION_CAP):
    """
    Check the component-preservation form of graceful degradation.

    For every fault set F with tau(|F|) > 0, the components S of G - F with size (or pi)
    at most tau(|F|) must be exactly those of H - F.
    """
    if inst.profile is None:
        raise ValueError("Graceful degradation needs a tolerance profile.")
    H = _validate_subset(inst, H)
    G = inst.graph
    profile = inst.profile
    levels = [ell for ell in range(len(profile.tau)) if profile.level(ell) > 0 and ell <= G.m]
    total = sum(comb(G.m, ell, exact=True) for ell in levels)
    if total > enumeration_cap:
        raise SizeLimitExceeded(f"Graceful check needs {total} fault sets, cap is {enumeration_cap}.")
    edge_ids = sorted(G.edge_ids)
    missing = [e for e in edge_ids if e not in H]
    for ell in levels:
        threshold = profile.level(ell)
        for faults in combinations(edge_ids, ell):
            small_g = {c for c in components(G, faults) if profile.size(c) <= threshold}
            small_h = {c for c in components(G, list(faults) + missing) if profile.size(c) <= threshold}
            if small_g != small_h:
                component = min(small_g ^ small_h, key=lambda c: tuple(sorted(c)))
                return FeasibilityReport(False, ComponentWitness(faults, component))
    return FeasibilityReport(True)


# 4. Exact Brute-Force Module
def _scaled_costs(inst):
    scale = math.lcm(*(c.denominator for c in inst.costs)) if inst.costs else 1
    return np.array([int(c * scale) for c in inst.costs], dtype=np.int64), scale


def _mask_edges(mask, edge_ids):
    return tuple(e for j, e in enumerate(edge_ids) if mask >> j & 1)


def _scan_cut_chunk(start, stop, incidence, required, weights, edge_ids):
    masks = np.arange(start, stop, dtype=np.int64)
    chosen = (masks[:, None] >> np.arange(len(edge_ids), dtype=np.int64)) & 1
    # At most len(masks) x ROW_BLOCK products are held at once; failed subsets drop out early
    for first in range(0, incidence.shape[0], ROW_BLOCK):
        block = slice(first, first + ROW_BLOCK)
        keep = ((chosen @ incidence[block].T) >= required[block]).all(axis=1)
        masks, chosen = masks[keep], chosen[keep]
        if not len(masks):
            return None
    totals = chosen @ weights
    cheapest = totals.min()
    winners = masks[totals == cheapest]
    return int(cheapest), min(_mask_edges(int(mask), edge_ids) for mask in winners)


def _cut_table(inst, max_nodes):
    G = inst.graph
    if G.n > max_nodes:
        raise SizeLimitExceeded(f"Cut enumeration is capped at {max_nodes} nodes, got {G.n}.")
    edge_ids = sorted(G.edge_ids)
    position = {e: j for j, e in enumerate(edge_ids)}
    rows, required = [], []
    for S in proper_subsets(G.nodes):
        if 0 not in S:
            continue
        need = min(inst.requirement(S), cut_weight(G, S))
        if need <= 0:
            continue
        row = np.zeros(len(edge_ids), dtype=np.int8)
        row[[position[e] for e in cut_edges(G, S)]] = 1
        rows.append(row)
        required.append(need)
    incidence = np.array(rows, dtype=np.int8).reshape(len(rows), len(edge_ids))
    return incidence, np.array(required, dtype=np.int64)


def exact_opt(inst, model=CUT_RELATIVE, max_edges=DEFAULT_MAX_EDGES, max_nodes=DEFAULT_MAX_NODES,
              n_jobs=DEFAULT_N_JOBS, enumeration_cap=DEFAULT_PATH_ENUMERATION_CAP):
    """
    Minimum-cost feasible edge set by enumerating all 2^m subsets.

    Ties go to the lexicographically smallest sorted edge-id tuple.

    Args:
    - inst (Instance): The instance.
    - model (str): CUT_RELATIVE or PATH_RELATIVE.
    - max_edges (int): Cap on m.
    - max_nodes (int): Cap on n for the cut table.
    - n_jobs (int): joblib workers for the cut-relative scan.
    - enumeration_cap (int): Fault-set cap for path-relative checks.

    Returns:
    - tuple: (cost, frozenset of edge ids).

    Raises:
    - SizeLimitExceeded: If m exceeds max_edges.
    """
    G = inst.graph
    if G.m > max_edges:
        raise SizeLimitExceeded(f"Exact search is capped at {max_edges} edges, got {G.m}.")
    edge_ids = sorted(G.edge_ids)
    if model == CUT_RELATIVE:
        incidence, required = _cut_table(inst, max_nodes)
        weights, scale = _scaled_costs(inst)
        bounds = [(start, min(start + SCAN_CHUNK, 1 << G.m)) for start in range(0, 1 << G.m, SCAN_CHUNK)]
        if n_jobs == 1:
            found = [_scan_cut_chunk(a, b, incidence, required, weights, edge_ids) for a, b in bounds]
        else:
            found = Parallel(n_jobs=n_jobs)(delayed(_scan_cut_chunk)(a, b, incidence, required, weights, edge_ids) for a, b in bounds)
        cost, best = min(result for result in found if result is not None)
        return Fraction(cost, scale), frozenset(best)
    if model != PATH_RELATIVE:
        raise ValueError(f"Unknown model: {model}")

    best = None
    for mask in range(1 << G.m):
        edges = _mask_edges(mask, edge_ids)
        key = (inst.cost_of(edges), edges)
        if best is not None and key >= best:
            continue
        if check_path_relative(inst, edges, enumeration_cap).feasible:
            best = key
    return best[0], frozenset(best[1])


# 5. Reduction Module
def kecss_reduction(G, costs, k, node_names=()):
    """
    Build the s-t instance whose cut-relative solutions are k-ECSS solutions of G.

    Adds a source and a sink joined to every node by cost-0 edges and asks for k + n
    edge-disjoint s-t paths.

    Raises:
    - NotKConnected: If G is not k-edge-connected.
    """
    for v in range(1, G.n):
        if min_cut(G, None, {0}, {v}).value < k:
            raise NotKConnected(f"Nodes 0 and {v} are separated by fewer than {k} edges.")
    s, t = G.n, G.n + 1
    names = list(node_names) or [f"v{i}" for i in range(G.n)]
    source, sink = 's', 't'
    while source in names:
        source += "'"
    while sink in names or sink == source:
        sink += "'"
    edges = list(G.edges)
    edges += [Edge(s, v, G.m + v) for v in range(G.n)]
    edges += [Edge(v, t, G.m + G.n + v) for v in range(G.n)]
    reduced = Multigraph(G.n + 2, tuple(edges))
    new_costs = list(costs) + [0] * (2 * G.n)
    return sndp_instance(reduced, new_costs, [(s, t, k + G.n)], names + [source, sink])
