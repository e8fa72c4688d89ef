# instance_io.py

# Import necessary libraries
import logging
from collections import defaultdict  # For parallel edge lookup in solution files
from fractions import Fraction  # For exact costs
import numpy as np  # For the seeded random instance generator
from graph_cuts import Multigraph  # For graph construction
from cut_requirements import GraceProfile  # For tolerance profiles
from network_design_solver import grace_instance, kecss_instance, sndp_instance  # For instance construction
from design_errors import MixedFamilies, NonDecreasingTau, ParseError, SelfLoop  # For file errors

# Global configuration
PLACEHOLDER_PREFIX = '#'  # Names of declared but unnamed nodes; never valid in a file
MAX_RANDOM_COST = 9

# 1. Instance Parsing Module
def _parse_int(token, lineno, what, minimum):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}.", lineno) from None
    if value < minimum:
        raise ParseError(f"{what} must be at least {minimum}, got {value}.", lineno)
    return value


def _parse_cost(token, lineno):
    try:
        cost = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Cost must be a decimal or p/q rational, got {token!r}.", lineno) from None
    if cost < 0:
        raise ParseError(f"Cost must be nonnegative, got {token}.", lineno)
    return cost


def parse_instance(text):
    """
    Parse an instance file.

    Grammar (one directive per line, `#` starts a comment):
    nodes <count> [<name> ...] | edge <u> <v> <cost> | req <s> <t> <r> | kecss <k> | grace <t0> ... <tj>

    Args:
    - text (str): File contents.

    Returns:
    - Instance: With dense node ids in first-appearance order.

    Raises:
    - ParseError: With the offending line number.
    - MixedFamilies, NonDecreasingTau, SelfLoop: Specific ParseError cases.
    """
    names, index = [], {}
    declared = None
    pairs, costs, reqs = [], [], []
    kecss, tau = None, None
    family = None

    def node(name, lineno):
        if name not in index:
            if declared is not None and len(names) >= declared:
                raise ParseError(f"More than the {declared} declared nodes.", lineno)
            index[name] = len(names)
            names.append(name)
        return index[name]

    def claim(kind, lineno):
        nonlocal family
        if family is not None and family != kind:
            raise MixedFamilies(f"'{kind}' cannot follow '{family}' requirements.", lineno)
        family = kind

    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        if directive == 'nodes':
            if declared is not None or names:
                raise ParseError("'nodes' must come first and only once.", lineno)
            if not args:
                raise ParseError("'nodes' needs a count.", lineno)
            declared = _parse_int(args[0], lineno, "Node count", 0)
            if len(set(args[1:])) != len(args[1:]):
                raise ParseError("Duplicate node names.", lineno)
            for name in args[1:]:
                node(name, lineno)
        elif directive == 'edge':
            if len(args) != 3:
                raise ParseError("Expected 'edge <u> <v> <cost>'.", lineno)
            if args[0] == args[1]:
                raise SelfLoop(f"Edge {args[0]}-{args[1]} is a self-loop.", lineno)
            pairs.append((node(args[0], lineno), node(args[1], lineno)))
            costs.append(_parse_cost(args[2], lineno))
        elif directive == 'req':
            if len(args) != 3:
                raise ParseError("Expected 'req <s> <t> <r>'.", lineno)
            claim('req', lineno)
            if args[0] == args[1]:
                raise ParseError("Requirement endpoints must differ.", lineno)
            reqs.append((node(args[0], lineno), node(args[1], lineno), _parse_int(args[2], lineno, "Requirement", 1)))
        elif directive == 'kecss':
            if len(args) != 1:
                raise ParseError("Expected 'kecss <k>'.", lineno)
            claim('kecss', lineno)
            if kecss is not None:
                raise ParseError("'kecss' given twice.", lineno)
            kecss = _parse_int(args[0], lineno, "k", 1)
        elif directive == 'grace':
            if not args:
                raise ParseError("Expected 'grace <t0> <t1> ...'.", lineno)
            claim('grace', lineno)
            if tau is not None:
                raise ParseError("'grace' given twice.", lineno)
            tau = [_parse_int(token, lineno, "Tolerance", 0) for token in args]
            for level in range(len(tau) - 1):
                if tau[level + 1] > tau[level]:
                    raise NonDecreasingTau(f"Tolerance rises from {tau[level]} to {tau[level + 1]} at level {level + 1}.", lineno)
        else:
            raise ParseError(f"Unknown directive {directive!r}.", lineno)

    n = declared if declared is not None else len(names)
    names += [f"{PLACEHOLDER_PREFIX}{i}" for i in range(len(names), n)]
    graph = Multigraph.from_pairs(n, pairs)
    if family == 'kecss':
        inst = kecss_instance(graph, costs, kecss, names)
    elif family == 'grace':
        inst = grace_instance(graph, costs, GraceProfile(tuple(tau)), names)
    else:
        inst = sndp_instance(graph, costs, reqs, names)
    logging.info(f"Parsed instance with {graph.n} nodes, {graph.m} edges and family {inst.family}.")
    return inst


def load_instance(file_path):
    try:
        with open(file_path, 'r', encoding='utf-8') as handle:
            inst = parse_instance(handle.read())
        logging.info(f"Successfully loaded instance from {file_path}")
        return inst
    except Exception as e:
        logging.error(f"Failed to load instance: {e}")
        raise


# 2. Instance Printing Module
def format_instance(inst):
    """Render an instance in the file grammar; parse_instance(format_instance(inst)) rebuilds it."""
    names = inst.node_names
    declared = [name for name in names if not name.startswith(PLACEHOLDER_PREFIX)]
    lines = [' '.join(['nodes', str(inst.graph.n)] + declared)]
    for e in sorted(inst.graph.edges, key=lambda e: e.id):
        lines.append(f"edge {names[e.u]} {names[e.v]} {inst.costs[e.id]}")
    if inst.family == 'kecss':
        lines.append(f"kecss {inst.k}")
    elif inst.family == 'grace':
        if inst.profile.pi is not None:
            raise ValueError("Profiles with a custom pi cannot be written to a file.")
        lines.append('grace ' + ' '.join(str(t) for t in inst.profile.tau))
    else:
        lines.extend(f"req {names[s]} {names[t]} {r}" for s, t, r in inst.reqs)
    return '\n'.join(lines) + '\n'


def format_edge_list(inst, edges):
    names = inst.node_names
    return [f"edge {names[inst.graph.edge(e).u]} {names[inst.graph.edge(e).v]} {inst.costs[e]}" for e in sorted(edges)]


# 3. Solution Parsing Module
def parse_solution(text, inst):
    """
    Parse an edge list: lines `edge <u> <v> [<cost>]` or `<u> <v>`.

    Lines of the form key=value are skipped. Repeated pairs pick parallel edges in id order.

    Returns:
    - frozenset: Edge ids.
    """
    index = {name: i for i, name in enumerate(inst.node_names)}
    parallel = defaultdict(list)
    for e in sorted(inst.graph.edges, key=lambda e: e.id):
        parallel[frozenset((e.u, e.v))].append(e.id)
    used = defaultdict(int)
    chosen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens or '=' in tokens[0]:
            continue
        if tokens[0] == 'edge':
            tokens = tokens[1:]
        if len(tokens) not in (2, 3):
            raise ParseError("Expected '<u> <v>' or 'edge <u> <v> [<cost>]'.", lineno)
        try:
            key = frozenset((index[tokens[0]], index[tokens[1]]))
        except KeyError as missing:
            raise ParseError(f"Unknown node {missing.args[0]!r}.", lineno) from None
        if used[key] >= len(parallel[key]):
            raise ParseError(f"No remaining edge {tokens[0]}-{tokens[1]} in the instance.", lineno)
        chosen.add(parallel[key][used[key]])
        used[key] += 1
    return frozenset(chosen)


# 4. Instance Generators Module
def nolam_instance(unit_costs=False):
    """
    Five-node instance s, u, v, w, t with edges su, sv, uw, vw, sw, wt and requirement
    (s, t, 2); sw costs 0 unless unit_costs.
    """
    names = ('s', 'u', 'v', 'w', 't')
    pairs = [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3), (3, 4)]
    costs = [1, 1, 1, 1, 1 if unit_costs else 0, 1]
    return sndp_instance(Multigraph.from_pairs(5, pairs), costs, [(0, 4, 2)], names)


def random_instance(n, m, reqs, rmax, seed):
    """
    Seeded random SNDP instance.

    Args:
    - n (int): Node count, at least 2.
    - m (int): Edge count; endpoints uniform over distinct pairs, parallel edges allowed.
    - reqs (int): Number of requirement pairs.
    - rmax (int): Largest requirement; values uniform on 1..rmax.
    - seed (int): Seed for numpy's default_rng.

    Returns:
    - Instance: With integer costs in 0..9 and node names v0..v(n-1).
    """
    if n < 2 or m < 0 or reqs < 0 or rmax < 1:
        raise ValueError("Need n >= 2, m >= 0, reqs >= 0 and rmax >= 1.")
    rng = np.random.default_rng(seed)

    def distinct_pair():
        u = int(rng.integers(n))
        v = int(rng.integers(n - 1))
        return u, v + 1 if v >= u else v

    pairs = [distinct_pair() for _ in range(m)]
    costs = [int(c) for c in rng.integers(0, MAX_RANDOM_COST + 1, size=m)]
    requirements = [distinct_pair() + (int(rng.integers(1, rmax + 1)),) for _ in range(reqs)]
    return sndp_instance(Multigraph.from_pairs(n, pairs), costs, requirements, tuple(f"v{i}" for i in range(n)))
