# test_network_design_solver.py

# Import necessary libraries
from fractions import Fraction
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from joblib import parallel_backend
from graph_cuts import Multigraph, cut_edges
from cut_requirements import GraceProfile, residual, small_cuts
from network_design_solver import (CUT_RELATIVE, PATH_RELATIVE, ComponentWitness, CutWitness, PathWitness,
                                   check_cut_relative, check_graceful_degradation, check_path_relative, crndp_alg,
                                   exact_opt, grace_instance, kecss_instance, kecss_reduction, sndp_instance)
from design_errors import NotKConnected, SizeLimitExceeded
from strategies import (H1, H_OPT, S, SW, T, U, W, WT, crossing, cut_relative_feasible, edge_subsets,
                        grace_instances, multigraphs, node_subsets, seeded_instance, sndp_instances)

CORPUS_SEEDS = range(500)


# 1. Instances
def test_costs_must_cover_every_edge(triangle):
    with pytest.raises(ValueError):
        sndp_instance(triangle, [1, 1], [(0, 1, 1)])


def test_costs_must_be_nonnegative(triangle):
    with pytest.raises(ValueError):
        sndp_instance(triangle, [1, -1, 1], [(0, 1, 1)])


def test_terminals_must_be_graph_nodes(triangle):
    with pytest.raises(ValueError):
        sndp_instance(triangle, [1, 1, 1], [(0, 5, 1)])


def test_default_node_names(triangle):
    assert sndp_instance(triangle, [1, 1, 1], []).node_names == ('v0', 'v1', 'v2')


# 2. Iterative rounding
def test_rounding_on_the_example(nolam):
    solution = crndp_alg(nolam)
    assert solution.lp_bound == 3
    assert solution.cost == 5
    assert solution.edges == frozenset(nolam.graph.edge_ids)
    assert len(solution.trace) == 1
    assert solution.trace[0].objective == 3
    assert check_cut_relative(nolam, solution.edges).feasible


def test_rounding_on_a_path(path_instance):
    solution = crndp_alg(path_instance)
    assert solution.cost == 3
    assert solution.lp_bound == 3
    assert solution.edges == frozenset({0, 1, 2})


def test_rounding_keeps_every_triangle_edge_for_three_connectivity(triangle_kecss):
    solution = crndp_alg(triangle_kecss)
    assert solution.edges == frozenset({0, 1, 2})
    assert solution.lp_bound == 3


def test_rounding_without_requirements_buys_nothing(triangle):
    solution = crndp_alg(sndp_instance(triangle, [1, 1, 1], []))
    assert solution.edges == frozenset()
    assert solution.cost == 0
    assert solution.lp_bound == 0
    assert solution.trace == ()


def test_rounding_for_graceful_degradation(triangle):
    inst = grace_instance(triangle, [1, 1, 1], GraceProfile((1,)))
    solution = crndp_alg(inst)
    assert solution.lp_bound == Fraction(3, 2)
    assert solution.cost == 3


# 3. Feasibility checkers
def test_h1_is_cut_relative_infeasible(nolam):
    report = check_cut_relative(nolam, H1)
    assert not report.feasible
    assert report.witness == CutWitness(frozenset({S, U, W}), 2, 1)


def test_optimal_set_is_cut_relative_feasible(nolam):
    assert check_cut_relative(nolam, H_OPT).feasible


def test_h1_is_path_relative_feasible(nolam):
    assert check_path_relative(nolam, H1).feasible


def test_path_relative_witness(nolam):
    report = check_path_relative(nolam, {SW, WT})
    assert not report.feasible
    assert report.witness == PathWitness(0, (SW,), (S, T))


def test_checkers_reject_unknown_edges(nolam):
    with pytest.raises(ValueError):
        check_cut_relative(nolam, {99})


def test_path_check_needs_requirement_pairs(triangle):
    inst = grace_instance(triangle, [1, 1, 1], GraceProfile((1,)))
    with pytest.raises(ValueError):
        check_path_relative(inst, {0})


def test_path_check_respects_the_enumeration_cap(nolam):
    with pytest.raises(SizeLimitExceeded):
        check_path_relative(nolam, H1, enumeration_cap=3)


def test_graceful_check_on_a_path():
    G = Multigraph.from_pairs(3, [(0, 1), (1, 2)])
    inst = grace_instance(G, [1, 1], GraceProfile((1,)))
    report = check_graceful_degradation(inst, {0})
    assert not report.feasible
    assert report.witness == ComponentWitness((), frozenset({2}))
    assert check_graceful_degradation(inst, {0, 1}).feasible


def test_graceful_check_needs_a_profile(nolam):
    with pytest.raises(ValueError):
        check_graceful_degradation(nolam, H1)


# 4. Exact optimum
def test_exact_cut_relative_optimum(nolam):
    assert exact_opt(nolam, CUT_RELATIVE) == (4, frozenset({0, 1, 2, 4, 5}))


def test_exact_path_relative_optimum_with_unit_costs(nolam_unit):
    cost, edges = exact_opt(nolam_unit, PATH_RELATIVE)
    assert cost == 4
    assert check_path_relative(nolam_unit, edges).feasible


def test_exact_optimum_without_requirements(triangle):
    inst = sndp_instance(triangle, [1, 2, 3], [])
    assert exact_opt(inst, CUT_RELATIVE) == (0, frozenset())
    assert exact_opt(inst, PATH_RELATIVE) == (0, frozenset())


def test_exact_optimum_with_rational_costs():
    G = Multigraph.from_pairs(2, [(0, 1), (0, 1)])
    inst = sndp_instance(G, [Fraction(1, 3), Fraction(1, 2)], [(0, 1, 1)])
    assert exact_opt(inst) == (Fraction(1, 3), frozenset({0}))


def test_exact_optimum_is_the_same_with_workers(nolam):
    with parallel_backend('threading'):
        assert exact_opt(nolam, n_jobs=2) == exact_opt(nolam)


def test_exact_optimum_on_a_long_path():
    n = 16
    inst = sndp_instance(Multigraph.from_pairs(n, [(v, v + 1) for v in range(n - 1)]), [1] * (n - 1), [(0, n - 1, 1)])
    assert exact_opt(inst) == (n - 1, frozenset(range(n - 1)))


def test_exact_optimum_respects_the_edge_cap(nolam):
    with pytest.raises(SizeLimitExceeded):
        exact_opt(nolam, max_edges=5)


def test_exact_optimum_rejects_unknown_models(nolam):
    with pytest.raises(ValueError):
        exact_opt(nolam, 'flow')


# 5. k-ECSS reduction
def test_reduction_of_k4(k4):
    inst = kecss_reduction(k4, [1] * 6, 2)
    assert inst.graph.n == 6 and inst.graph.m == 14
    assert inst.reqs.pairs == ((4, 5, 6),)
    assert inst.node_names[-2:] == ('s', 't')
    assert inst.costs[6:] == (0,) * 8


def test_reduction_of_a_triangle(triangle):
    inst = kecss_reduction(triangle, [1, 1, 1], 2)
    assert inst.graph.n == 5 and inst.graph.m == 9
    assert inst.reqs.pairs == ((3, 4, 5),)


def test_reduction_needs_a_k_connected_graph():
    with pytest.raises(NotKConnected):
        kecss_reduction(Multigraph.from_pairs(2, [(0, 1)]), [1], 2)


def test_reduction_avoids_name_clashes(triangle):
    inst = kecss_reduction(triangle, [1, 1, 1], 2, ('s', 't', 'x'))
    assert inst.node_names == ('s', 't', 'x', "s'", "t'")


TWO_CONNECTED = {
    'double edge': (2, [(0, 1), (0, 1)]),
    'triangle': (3, [(0, 1), (1, 2), (0, 2)]),
    'square': (4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    'diamond': (4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]),
    'k4': (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
}


def _feasibility_table(inst):
    """Cut-relative feasibility of every edge subset, indexed by bitmask over edge ids."""
    G = inst.graph
    everything = frozenset(G.edge_ids)
    rows, need = [], []
    for side in node_subsets(range(G.n)):
        required = min(inst.requirement(side), crossing(G, everything, side))
        if required > 0:
            rows.append([int((e.u in side) != (e.v in side)) for e in sorted(G.edges, key=lambda e: e.id)])
            need.append(required)
    masks = np.arange(1 << G.m)
    chosen = (masks[:, None] >> np.arange(G.m)) & 1
    return ((chosen @ np.array(rows).T) >= np.array(need)).all(axis=1)


@pytest.mark.parametrize("name", sorted(TWO_CONNECTED))
def test_reduced_solutions_are_two_connected_spanning_subgraphs(name):
    n, pairs = TWO_CONNECTED[name]
    G = Multigraph.from_pairs(n, pairs)
    inst = kecss_reduction(G, [1] * G.m, 2)
    table = _feasibility_table(inst)
    terminal_edges = (1 << inst.graph.m) - (1 << G.m)
    inner_nodes = range(n)
    for mask in range(1 << inst.graph.m):
        inner = frozenset(e for e in range(G.m) if mask >> e & 1)
        two_connected = all(crossing(G, inner, side) >= 2 for side in node_subsets(inner_nodes) if 0 < len(side) < n)
        assert bool(table[mask]) == (mask & terminal_edges == terminal_edges and two_connected)


@pytest.mark.parametrize("name", ['double edge', 'triangle'])
def test_reduced_solutions_agree_with_the_checker(name):
    n, pairs = TWO_CONNECTED[name]
    G = Multigraph.from_pairs(n, pairs)
    inst = kecss_reduction(G, [1] * G.m, 2)
    table = _feasibility_table(inst)
    for mask, H in enumerate(edge_subsets(inst.graph)):
        assert check_cut_relative(inst, H).feasible == bool(table[mask])


@pytest.mark.parametrize("name", ["double edge", "triangle"])
def test_reduced_path_relative_solutions_agree_with_the_table(name):
    n, pairs = TWO_CONNECTED[name]
    G = Multigraph.from_pairs(n, pairs)
    inst = kecss_reduction(G, [1] * G.m, 2)
    table = _feasibility_table(inst)
    for mask, H in enumerate(edge_subsets(inst.graph)):
        assert check_path_relative(inst, H).feasible == bool(table[mask])


@settings(max_examples=20)
@given(multigraphs(max_nodes=5, max_edges=6), st.integers(1, 2))
def test_kecss_cut_and_path_relative_models_agree(G, k):
    inst = kecss_instance(G, [1] * G.m, k)
    for H in edge_subsets(G):
        assert check_path_relative(inst, H).feasible == cut_relative_feasible(inst, H)


# 6. Model relationships
@settings(max_examples=25)
@given(sndp_instances(max_nodes=5, max_edges=6), st.data())
def test_cut_checker_matches_enumeration(inst, data):
    H = data.draw(st.frozensets(st.sampled_from(inst.graph.edge_ids)) if inst.graph.m else st.just(frozenset()))
    report = check_cut_relative(inst, H)
    assert report.feasible == cut_relative_feasible(inst, H)
    if not report.feasible:
        side = report.witness.side
        assert crossing(inst.graph, H, side) == report.witness.provided < report.witness.required


@settings(max_examples=25)
@given(sndp_instances(max_nodes=5, max_edges=7))
def test_cut_relative_solutions_are_path_relative(inst):
    _, edges = exact_opt(inst, CUT_RELATIVE)
    assert check_path_relative(inst, edges).feasible
    assert exact_opt(inst, PATH_RELATIVE)[0] <= exact_opt(inst, CUT_RELATIVE)[0]


@settings(max_examples=15)
@given(grace_instances(max_nodes=5, max_edges=6))
def test_graceful_degradation_is_cut_relative_feasibility(inst):
    for H in edge_subsets(inst.graph):
        assert check_graceful_degradation(inst, H).feasible == check_cut_relative(inst, H).feasible


@settings(max_examples=15)
@given(grace_instances(max_nodes=5, max_edges=6, weighted=True))
def test_graceful_degradation_with_node_weights_is_cut_relative_feasibility(inst):
    for H in edge_subsets(inst.graph):
        assert check_graceful_degradation(inst, H).feasible == check_cut_relative(inst, H).feasible


@settings(max_examples=20)
@given(sndp_instances(max_nodes=5, max_edges=7))
def test_small_cuts_are_the_same_in_every_round(inst):
    f, G = inst.requirement, inst.graph
    solution = crndp_alg(inst)
    original = small_cuts(f, G)
    bought = frozenset()
    for record in solution.trace:
        bought |= frozenset(record.chosen)
        remaining = Multigraph(G.n, tuple(e for e in G.edges if e.id not in bought))
        assert small_cuts(residual(f, G, bought), remaining) == original
    # Every edge of a small cut is needed
    for side in original:
        assert set(cut_edges(G, side)) <= solution.edges


@settings(max_examples=20)
@given(sndp_instances(max_nodes=5, max_edges=7))
def test_rounding_is_a_two_approximation(inst):
    solution = crndp_alg(inst)
    assert check_cut_relative(inst, solution.edges).feasible
    assert solution.cost <= 2 * solution.lp_bound
    assert solution.lp_bound <= exact_opt(inst)[0]


@pytest.mark.slow
@pytest.mark.parametrize("seed", CORPUS_SEEDS)
def test_rounding_corpus(seed):
    inst = seeded_instance(seed)
    solution = crndp_alg(inst)
    assert check_cut_relative(inst, solution.edges).feasible
    assert solution.cost <= 2 * solution.lp_bound
    assert solution.lp_bound <= exact_opt(inst)[0]
    assert check_path_relative(inst, solution.edges).feasible


@pytest.mark.slow
@settings(max_examples=60)
@given(grace_instances(max_nodes=5, max_edges=8))
def test_graceful_degradation_corpus(inst):
    for H in edge_subsets(inst.graph):
        assert check_graceful_degradation(inst, H).feasible == check_cut_relative(inst, H).feasible
