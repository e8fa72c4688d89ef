# cut_lp.py

# Import necessary libraries
import logging
from dataclasses import dataclass, field  # For LP containers
from fractions import Fraction  # For exact simplex arithmetic
from joblib import Parallel, delayed  # For parallel per-edge oracle scans
from graph_cuts import cut_edges, cut_weight, format_node_set, proper_subsets  # For cut primitives
from cut_requirements import sndp_eval  # For right-hand sides of violated cuts
from max_flow_cuts import min_cut  # For pinned minimum cuts in the separation oracle
from design_errors import Infeasible, InvariantViolation, IterationLimit, SizeLimitExceeded  # For domain errors

# Global configuration
DEFAULT_ITERATION_LIMIT_FACTOR = 10  # Cut budget is factor * m * k
DEFAULT_MAX_NODES = 20  # Largest graph for the brute-force separation oracle
DEFAULT_N_JOBS = 1
HALF = Fraction(1, 2)

# 1. LP Containers
@dataclass(frozen=True)
class Constraint:
    """Row sum(coefficients) >= rhs over free edge ids; `side` records the cut it came from."""
    coefficients: tuple
    rhs: Fraction
    side: frozenset = None


@dataclass(frozen=True)
class LinearProgram:
    """
    min sum c_e x_e subject to the constraint rows and 0 <= x_e <= 1.

    Args:
    - variables (tuple): Free edge ids, one variable each.
    - costs (dict): Nonnegative cost per variable.
    - constraints (tuple): Constraint rows.
    """
    variables: tuple
    costs: dict
    constraints: tuple = ()

    def __post_init__(self):
        live = set(self.variables)
        for row in self.constraints:
            stray = [e for e, _ in row.coefficients if e not in live]
            if stray:
                raise ValueError(f"Constraint references edges {stray} that are not variables.")


@dataclass(frozen=True)
class FractionalSolution:
    """Exact point x by edge id; fixed edges carry 1."""
    x: dict
    objective: Fraction
    fixed: frozenset = frozenset()
    working_lp: LinearProgram = field(default=None, compare=False)

    @property
    def free_edges(self):
        return tuple(sorted(e for e in self.x if e not in self.fixed))


@dataclass(frozen=True)
class ViolatedCut:
    side: frozenset
    rhs: int
    lhs: Fraction


# 2. Exact Simplex Core
def _pivot(table, rhs, basis, row, col):
    pivot = table[row][col]
    table[row] = [value / pivot for value in table[row]]
    rhs[row] = rhs[row] / pivot
    support = [k for k, value in enumerate(table[row]) if value]
    for other in range(len(table)):
        factor = table[other][col]
        if other == row or not factor:
            continue
        current = table[other]
        pivot_row = table[row]
        for k in support:
            current[k] -= factor * pivot_row[k]
        rhs[other] -= factor * rhs[row]
    basis[row] = col


def _run_simplex(table, rhs, basis, cost, allowed):
    """Minimise cost over the current tableau with Bland's smallest-index rule."""
    while True:
        in_basis = set(basis)
        entering = None
        for col in allowed:
            if col in in_basis:
                continue
            reduced = cost[col] - sum(cost[basis[i]] * table[i][col] for i in range(len(table)) if table[i][col])
            if reduced < 0:
                entering = col
                break
        if entering is None:
            return
        leaving = None
        for i in range(len(table)):
            if table[i][entering] > 0:
                ratio = rhs[i] / table[i][entering]
                if leaving is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    leaving, best = i, ratio
        if leaving is None:
            raise InvariantViolation("Working LP is unbounded despite box bounds.")
        _pivot(table, rhs, basis, leaving, entering)


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _check_vertex(lp, x):
    n = len(lp.variables)
    index = {e: j for j, e in enumerate(lp.variables)}
    tight = []
    for row in lp.constraints:
        if sum(a * x[e] for e, a in row.coefficients) == row.rhs:
            dense = [Fraction(0)] * n
            for e, a in row.coefficients:
                dense[index[e]] = Fraction(a)
            tight.append(dense)
    for e, j in index.items():
        if x[e] == 0 or x[e] == 1:
            unit = [Fraction(0)] * n
            unit[j] = Fraction(1)
            tight.append(unit)
    if _rank(tight) < n:
        raise InvariantViolation("Simplex returned a point that is not a vertex.")


def solve_vertex_lp(lp):
    """
    Find an optimal vertex of the working LP with a two-phase exact simplex.

    Each row a.x >= b becomes a.x - s + y = b with an artificial y when b > 0, and
    -a.x + s = -b otherwise. Box rows x + u = 1 start with u basic.

    Args:
    - lp (LinearProgram): The working LP.

    Returns:
    - FractionalSolution: Optimal basic solution over lp.variables.

    Raises:
    - Infeasible: If Phase 1 ends with a positive artificial total.
    """
    n = len(lp.variables)
    rows = lp.constraints
    needs_artificial = [row.rhs > 0 for row in rows]
    artificial_cols = {}
    width = 2 * n + len(rows)
    for r, flag in enumerate(needs_artificial):
        if flag:
            artificial_cols[r] = width
            width += 1
    index = {e: j for j, e in enumerate(lp.variables)}

    table, rhs, basis, initial = [], [], [], []
    for j in range(n):
        line = [Fraction(0)] * width
        line[j] = Fraction(1)
        line[n + j] = Fraction(1)
        table.append(line)
        rhs.append(Fraction(1))
        basis.append(n + j)
        initial.append(n + j)
    for r, row in enumerate(rows):
        line = [Fraction(0)] * width
        sign = 1 if needs_artificial[r] else -1
        for e, a in row.coefficients:
            line[index[e]] = sign * Fraction(a)
        line[2 * n + r] = Fraction(-sign)
        if needs_artificial[r]:
            line[artificial_cols[r]] = Fraction(1)
            basis.append(artificial_cols[r])
            initial.append(artificial_cols[r])
        else:
            basis.append(2 * n + r)
            initial.append(2 * n + r)
        table.append(line)
        rhs.append(sign * Fraction(row.rhs))

    artificial = set(artificial_cols.values())
    if artificial:
        phase_one = [Fraction(1) if col in artificial else Fraction(0) for col in range(width)]
        _run_simplex(table, rhs, basis, phase_one, range(width))
        shortfall = sum(rhs[i] for i in range(len(basis)) if basis[i] in artificial)
        if shortfall > 0:
            certificate = []
            for r in range(len(rows)):
                multiplier = sum(phase_one[basis[i]] * table[i][initial[n + r]] for i in range(len(table)))
                if multiplier:
                    certificate.append(r)
            raise Infeasible(f"Working LP is infeasible (artificial total {shortfall}).", certificate)
        for i in reversed(range(len(basis))):
            if basis[i] not in artificial:
                continue
            col = next((k for k in range(width) if k not in artificial and table[i][k]), None)
            if col is None:
                del table[i], rhs[i], basis[i]
            else:
                _pivot(table, rhs, basis, i, col)

    phase_two = [Fraction(0)] * width
    for e, j in index.items():
        phase_two[j] = Fraction(lp.costs[e])
    _run_simplex(table, rhs, basis, phase_two, [col for col in range(width) if col not in artificial])

    values = [Fraction(0)] * width
    for i, col in enumerate(basis):
        values[col] = rhs[i]
    x = {e: values[j] for e, j in index.items()}
    objective = sum((Fraction(lp.costs[e]) * x[e] for e in lp.variables), Fraction(0))
    _check_vertex(lp, x)
    return FractionalSolution(x, objective, frozenset(), lp)


# 3. Separation Oracle Module
def _box_weights(G, fixed, x):
    return {e: Fraction(1) if e in fixed else Fraction(x[e]) for e in G.edge_ids}


def _violated(G, reqs, S, lhs):
    rhs = min(sndp_eval(reqs, S), cut_weight(G, S))
    if not lhs < rhs:
        raise InvariantViolation(f"Min cut {sorted(S)} below its pair requirement is not violated.")
    return ViolatedCut(S, rhs, lhs)


def _scan_edge(reqs, G, weights, edge_id):
    e = G.edge(edge_id)
    for si, ti, r in reqs:
        for A, B in (({si, e.u}, {ti, e.v}), ({si, e.v}, {ti, e.u})):
            if A & B:
                continue
            result = min_cut(G, weights, A, B)
            if result.value < r:
                return _violated(G, reqs, result.side, result.value)
    return None


def separation_oracle_crsndp(reqs, G, fixed, x, n_jobs=DEFAULT_N_JOBS):
    """
    Find a cut with x(delta_G(S)) < min{f^SNDP(S), |delta_G(S)|}, or None.

    Every edge a = uv with x_a < 1 and every pair i are tried with both pinnings
    {s_i, u}|{t_i, v} and {s_i, v}|{t_i, u}; a min cut below r_i is violated. The first hit
    in (edge id, i, orientation) order is returned even when edges are scanned in parallel.

    Args:
    - reqs (SndpRequirements): The requirements.
    - G (Multigraph): The graph.
    - fixed (iterable of int): Edges whose capacity is taken as 1.
    - x (mapping): Point to separate, by edge id.
    - n_jobs (int): joblib workers for the per-edge scan.

    Returns:
    - ViolatedCut or None
    """
    fixed = frozenset(fixed)
    weights = _box_weights(G, fixed, x)
    candidates = [e for e in sorted(G.edge_ids) if weights[e] < 1]
    if n_jobs == 1:
        for edge_id in candidates:
            cut = _scan_edge(reqs, G, weights, edge_id)
            if cut is not None:
                return cut
        return None
    found = Parallel(n_jobs=n_jobs)(delayed(_scan_edge)(reqs, G, weights, e) for e in candidates)
    return next((cut for cut in found if cut is not None), None)


def separation_oracle_brute_force(f, G, fixed, x, max_nodes=DEFAULT_MAX_NODES):
    """Scan every cut in bitmask order for a violated constraint of a general f."""
    if G.n > max_nodes:
        raise SizeLimitExceeded(f"Brute-force separation is capped at {max_nodes} nodes, got {G.n}.")
    weights = _box_weights(G, frozenset(fixed), x)
    for S in proper_subsets(G.nodes):
        rhs = min(f(S), cut_weight(G, S))
        lhs = cut_weight(G, S, weights)
        if lhs < rhs:
            return ViolatedCut(S, rhs, lhs)
    return None


# 4. Cutting-Plane Module
def _cut_row(G, S, full_rhs, fixed, free):
    boundary = cut_edges(G, S)
    rhs = Fraction(full_rhs) - sum(1 for e in boundary if e in fixed)
    if rhs <= 0:
        return None
    coefficients = tuple((e, Fraction(1)) for e in boundary if e in free)
    return Constraint(coefficients, rhs, frozenset(S))


def solve_crlp(f, G, costs, fixed=(), iteration_limit_factor=DEFAULT_ITERATION_LIMIT_FACTOR,
               n_jobs=DEFAULT_N_JOBS, max_nodes=DEFAULT_MAX_NODES):
    """
    Extreme-point optimum of the cut-relative LP with the edges in `fixed` set to 1.

    Seeds the working LP with terminal singleton cuts, then alternates vertex solves and
    separation until the vertex is feasible for every cut constraint
    x(delta_{G'}(S)) >= min{f(S), |delta_G(S)|} - |delta_fixed(S)|.

    Args:
    - f (CutFunction): Symmetric normalised requirement; f.sndp selects the min-cut oracle.
    - G (Multigraph): The full graph.
    - costs (sequence or mapping): Edge costs by id.
    - fixed (iterable of int): Edges already bought.
    - iteration_limit_factor (int): Cut budget factor.
    - n_jobs (int): joblib workers for the oracle.
    - max_nodes (int): Cap for the brute-force oracle.

    Returns:
    - FractionalSolution: x on all edges (fixed ones at 1) and the objective over free edges.

    Raises:
    - IterationLimit: If the cut budget is exhausted.
    """
    fixed = frozenset(fixed)
    free = tuple(e for e in sorted(G.edge_ids) if e not in fixed)
    free_set = frozenset(free)
    reqs = f.sndp
    if reqs is not None:
        oracle = lambda x: separation_oracle_crsndp(reqs, G, fixed, x, n_jobs=n_jobs)
        seeds = sorted(reqs.terminals)
        k = len(reqs)
    else:
        oracle = lambda x: separation_oracle_brute_force(f, G, fixed, x, max_nodes=max_nodes)
        seeds = list(range(G.n))
        k = G.n
    limit = iteration_limit_factor * max(G.m, 1) * max(k, 1)

    constraints = []
    for v in seeds:
        S = frozenset([v])
        row = _cut_row(G, S, min(f(S), cut_weight(G, S)), fixed, free_set)
        if row is not None:
            constraints.append(row)
    variable_costs = {e: Fraction(costs[e]) for e in free}

    previous = None
    for iteration in range(limit + 1):
        lp = LinearProgram(free, variable_costs, tuple(constraints))
        solution = solve_vertex_lp(lp)
        if previous is not None and solution.objective < previous:
            raise InvariantViolation(f"Working LP optimum dropped from {previous} to {solution.objective}.")
        previous = solution.objective
        x = {e: Fraction(1) for e in fixed}
        x.update(solution.x)
        cut = oracle(x)
        if cut is None:
            logging.debug(f"Cutting-plane loop converged after {iteration} cuts with objective {solution.objective}.")
            return FractionalSolution(x, solution.objective, fixed, lp)
        row = _cut_row(G, cut.side, cut.rhs, fixed, free_set)
        if row is None:
            raise InvariantViolation(f"Violated cut {sorted(cut.side)} yields no residual constraint.")
        logging.debug(f"Adding cut {sorted(cut.side)}: {cut.lhs} < {cut.rhs}.")
        constraints.append(row)
    raise IterationLimit(f"No feasible vertex after {limit} cuts.")


def has_half_edge(solution):
    """True if some free edge has x_e >= 1/2."""
    return any(solution.x[e] >= HALF for e in solution.free_edges)


def format_working_lp(lp, names=None):
    """One line per row: `cut <node list> >= <rhs>`."""
    return [f"cut {format_node_set(row.side, names)} >= {row.rhs}" for row in lp.constraints if row.side is not None]
