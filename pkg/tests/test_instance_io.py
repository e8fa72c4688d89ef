# test_instance_io.py

# Import necessary libraries
from fractions import Fraction
import pytest
from graph_cuts import Multigraph
from cut_requirements import GraceProfile
from instance_io import (format_edge_list, format_instance, load_instance, nolam_instance, parse_instance,
                         parse_solution, random_instance)
from network_design_solver import grace_instance, kecss_instance
from design_errors import MixedFamilies, NonDecreasingTau, ParseError, SelfLoop
from strategies import H_OPT, SU, SW, UW

NOLAM_TEXT = """\
# five-node example
nodes 5 s u v w t
edge s u 1
edge s v 1
edge u w 1
edge v w 1
edge s w 0
edge w t 1   # the bridge
req s t 2
"""


def _same_instance(a, b):
    return (a.graph == b.graph and a.costs == b.costs and a.node_names == b.node_names and a.family == b.family
            and a.reqs == b.reqs and a.k == b.k and a.profile == b.profile)


# 1. Parsing
def test_parse_the_example():
    inst = parse_instance(NOLAM_TEXT)
    assert inst.node_names == ('s', 'u', 'v', 'w', 't')
    assert inst.graph.n == 5 and inst.graph.m == 6
    assert inst.costs == (1, 1, 1, 1, 0, 1)
    assert inst.reqs.pairs == ((0, 4, 2),)
    assert _same_instance(inst, nolam_instance())


def test_nodes_are_numbered_in_first_appearance_order():
    inst = parse_instance("edge b a 1\nedge a c 2\nreq c b 1\n")
    assert inst.node_names == ('b', 'a', 'c')
    assert inst.reqs.pairs == ((2, 0, 1),)


def test_declared_nodes_without_names_get_placeholders():
    inst = parse_instance("nodes 4 a b\nedge a b 1\nreq a b 1\n")
    assert inst.graph.n == 4
    assert inst.node_names == ('a', 'b', '#2', '#3')
    assert format_instance(inst) == "nodes 4 a b\nedge a b 1\nreq a b 1\n"


def test_rational_and_decimal_costs_are_exact():
    inst = parse_instance("edge a b 1/3\nedge b c 0.25\nreq a c 1\n")
    assert inst.costs == (Fraction(1, 3), Fraction(1, 4))


def test_kecss_and_grace_directives():
    kecss = parse_instance("edge a b 1\nedge b c 1\nedge a c 1\nkecss 2\n")
    assert kecss.family == 'kecss' and kecss.k == 2
    grace = parse_instance("edge a b 1\ngrace 2 1 0\n")
    assert grace.family == 'grace' and grace.profile.tau == (2, 1, 0)
    assert grace.reqs is None


def test_a_file_without_requirements_is_an_empty_sndp_instance():
    inst = parse_instance("edge a b 1\n")
    assert inst.family == 'sndp' and len(inst.reqs) == 0


@pytest.mark.parametrize("text, error, line", [
    ("edge a b 1\nedge c c 1\n", SelfLoop, 2),
    ("req a b 1\nkecss 2\n", MixedFamilies, 2),
    ("edge a b 1\n\ngrace 1 2\n", NonDecreasingTau, 3),
    ("edge a b 1\nlink a b\n", ParseError, 2),
    ("edge a b cheap\n", ParseError, 1),
    ("edge a b -1\n", ParseError, 1),
    ("edge a b 1/0\n", ParseError, 1),
    ("edge a b\n", ParseError, 1),
    ("req a b 0\n", ParseError, 1),
    ("req a a 1\n", ParseError, 1),
    ("kecss 1\nkecss 2\n", ParseError, 2),
    ("edge a b 1\nnodes 2 a b\n", ParseError, 2),
    ("nodes 1 a\nedge a b 1\n", ParseError, 2),
    ("nodes 2 a a\n", ParseError, 1),
])
def test_malformed_files_report_the_line(text, error, line):
    with pytest.raises(error) as info:
        parse_instance(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_load_instance_reads_a_file(tmp_path):
    path = tmp_path / 'example.txt'
    path.write_text(NOLAM_TEXT, encoding='utf-8')
    assert _same_instance(load_instance(str(path)), nolam_instance())


# 2. Printing
def test_example_survives_printing():
    inst = nolam_instance()
    assert _same_instance(parse_instance(format_instance(inst)), inst)


def test_kecss_and_grace_instances_survive_printing(triangle):
    kecss = kecss_instance(triangle, [1, 2, 3], 2, ('a', 'b', 'c'))
    grace = grace_instance(triangle, [Fraction(1, 3), 0, 5], GraceProfile((2, 1)), ('a', 'b', 'c'))
    for inst in (kecss, grace):
        assert _same_instance(parse_instance(format_instance(inst)), inst)


def test_random_instance_survives_printing():
    inst = random_instance(6, 9, 3, 3, seed=4)
    assert _same_instance(parse_instance(format_instance(inst)), inst)


def test_profiles_with_a_size_measure_cannot_be_printed(triangle):
    inst = grace_instance(triangle, [1, 1, 1], GraceProfile((1,), pi=len))
    with pytest.raises(ValueError):
        format_instance(inst)


def test_edge_list_lines(nolam):
    assert format_edge_list(nolam, {SW, SU}) == ["edge s u 1", "edge s w 0"]


# 3. Solution files
def test_parse_solution_accepts_both_line_forms(nolam):
    text = "cost=5 lp=3 ratio=1.6667\nedge s u 1\nu w\nedge s w 0\n"
    assert parse_solution(text, nolam) == frozenset({SU, UW, SW})


def test_solver_output_parses_back(nolam):
    text = '\n'.join(["cost=4"] + format_edge_list(nolam, H_OPT))
    assert parse_solution(text, nolam) == H_OPT


def test_repeated_pairs_pick_parallel_edges_in_order():
    inst = parse_instance("edge a b 1\nedge b a 2\nreq a b 1\n")
    assert parse_solution("a b\n", inst) == frozenset({0})
    assert parse_solution("a b\nb a\n", inst) == frozenset({0, 1})
    with pytest.raises(ParseError):
        parse_solution("a b\na b\na b\n", inst)


@pytest.mark.parametrize("text", ["s x\n", "s\n", "s t\n", "edge s u 1 2\n"])
def test_malformed_solutions_are_rejected(nolam, text):
    with pytest.raises(ParseError):
        parse_solution(text, nolam)


# 4. Generators
def test_example_with_unit_costs():
    assert nolam_instance(unit_costs=True).costs == (1,) * 6
    assert nolam_instance().costs[SW] == 0


def test_random_instances_are_reproducible():
    a = random_instance(5, 7, 2, 3, seed=11)
    b = random_instance(5, 7, 2, 3, seed=11)
    assert _same_instance(a, b)
    assert a.graph.m == 7 and len(a.reqs) == 2
    assert all(0 <= c <= 9 for c in a.costs)
    assert all(1 <= r <= 3 and s != t for s, t, r in a.reqs)
    assert a.node_names == ('v0', 'v1', 'v2', 'v3', 'v4')


@pytest.mark.parametrize("args", [(1, 3, 1, 1), (3, -1, 1, 1), (3, 3, -1, 1), (3, 3, 1, 0)])
def test_random_instance_rejects_bad_arguments(args):
    with pytest.raises(ValueError):
        random_instance(*args, seed=0)


def test_random_instance_without_edges():
    inst = random_instance(3, 0, 1, 2, seed=1)
    assert inst.graph == Multigraph(3, ())
    assert inst.costs == ()
