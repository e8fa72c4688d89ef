# network_design_analysis.py

# Import necessary libraries
import argparse  # For the command-line surface
import logging
import os  # For locating the default configuration file
import sys  # For exit codes and stderr
import yaml  # For configuration management
from graph_cuts import format_edge, format_node_set  # For report formatting
from cut_lp import format_working_lp, solve_crlp  # For the LP command
from network_design_solver import (CUT_RELATIVE, PATH_RELATIVE, CutWitness, PathWitness,  # For solving and verification
                                   check_cut_relative, check_graceful_degradation, check_path_relative,
                                   crndp_alg, exact_opt, kecss_reduction)
from decomposition_tree import build_decomposition_tree, format_tree, leaf_instances  # For the decomposition command
from instance_io import format_edge_list, format_instance, load_instance, nolam_instance, parse_solution, random_instance  # For files
from design_errors import NetworkDesignError  # For error reporting

# Global configuration
DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'network_design_analysis_config.yaml')
EXIT_OK, EXIT_INFEASIBLE, EXIT_ERROR = 0, 1, 2
GRACEFUL = 'graceful'

# 1. Utility Functions Module
def load_config(config_file=DEFAULT_CONFIG_FILE):
    """
    Load configuration settings from a YAML file and merge them over the defaults.

    Args:
    - config_file (str): Path to the YAML file.

    Returns:
    - config (dict): Configuration with every section present.
    """
    default_config = {
        'logging': {'level': 'WARNING'},
        'lp': {'iteration_limit_factor': 10},
        'brute_force': {'max_nodes': 20, 'max_edges': 24, 'path_enumeration_cap': 10_000_000},
        'parallel_processing': {'n_jobs': 1},
    }
    try:
        with open(config_file, 'r') as file:
            loaded = yaml.safe_load(file) or {}
        config = {section: {**values, **(loaded.get(section) or {})} for section, values in default_config.items()}
        logging.info(f"Configuration loaded from {config_file}.")
        return config
    except FileNotFoundError:
        logging.warning(f"Configuration file {config_file} not found; using defaults.")
        return default_config


def log_exception(exception):
    logging.error(f"An error occurred: {exception}")


def configure_logging(level):
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING),
                        format='%(asctime)s - %(levelname)s - %(message)s')


# 2. Command Handlers Module
def _ratio(cost, lp_bound):
    if lp_bound == 0:
        return "1.0000"
    return f"{float(cost / lp_bound):.4f}"


def command_solve(args, config):
    inst = load_instance(args.file)
    solution = crndp_alg(inst, iteration_limit_factor=config['lp']['iteration_limit_factor'],
                         n_jobs=config['parallel_processing']['n_jobs'], max_nodes=config['brute_force']['max_nodes'])
    print(f"cost={solution.cost} lp={solution.lp_bound} ratio={_ratio(solution.cost, solution.lp_bound)}")
    for line in format_edge_list(inst, solution.edges):
        print(line)
    return EXIT_OK


def command_lp(args, config):
    inst = load_instance(args.file)
    solution = solve_crlp(inst.requirement, inst.graph, inst.costs, iteration_limit_factor=config['lp']['iteration_limit_factor'],
                          n_jobs=config['parallel_processing']['n_jobs'], max_nodes=config['brute_force']['max_nodes'])
    print(f"lp={solution.objective}")
    names = inst.node_names
    for e in sorted(solution.x):
        edge = inst.graph.edge(e)
        print(f"edge {names[edge.u]} {names[edge.v]}: {solution.x[e]}")
    if args.dump_lp:
        for line in format_working_lp(solution.working_lp, inst.node_names):
            print(line)
    return EXIT_OK


def _describe_witness(inst, witness):
    names = inst.node_names
    if isinstance(witness, CutWitness):
        return f"witness cut S={format_node_set(witness.side, names)} required={witness.required} provided={witness.provided}"
    faults = '{' + ','.join(format_edge(inst.graph, e, names) for e in witness.faults) + '}'
    if isinstance(witness, PathWitness):
        s, t = witness.pair
        return f"witness pair={witness.pair_index + 1} {names[s]}-{names[t]} faults={faults}"
    return f"witness faults={faults} component={format_node_set(witness.component, names)}"


def command_verify(args, config):
    inst = load_instance(args.file)
    with open(args.solution, 'r', encoding='utf-8') as handle:
        H = parse_solution(handle.read(), inst)
    if args.model == CUT_RELATIVE:
        report = check_cut_relative(inst, H, n_jobs=config['parallel_processing']['n_jobs'],
                                    max_nodes=config['brute_force']['max_nodes'])
    elif args.model == PATH_RELATIVE:
        report = check_path_relative(inst, H, enumeration_cap=config['brute_force']['path_enumeration_cap'])
    else:
        report = check_graceful_degradation(inst, H, enumeration_cap=config['brute_force']['path_enumeration_cap'])
    if report.feasible:
        print("feasible")
        return EXIT_OK
    print("infeasible")
    print(_describe_witness(inst, report.witness))
    return EXIT_INFEASIBLE


def command_exact(args, config):
    inst = load_instance(args.file)
    cost, edges = exact_opt(inst, args.model, max_edges=config['brute_force']['max_edges'],
                            max_nodes=config['brute_force']['max_nodes'], n_jobs=config['parallel_processing']['n_jobs'],
                            enumeration_cap=config['brute_force']['path_enumeration_cap'])
    print(f"cost={cost}")
    for line in format_edge_list(inst, edges):
        print(line)
    return EXIT_OK


def command_decompose(args, config):
    inst = load_instance(args.file)
    tree = build_decomposition_tree(inst.requirement, inst.graph, max_nodes=config['brute_force']['max_nodes'])
    for line in format_tree(tree, inst.node_names):
        print(line)
    decomposition = leaf_instances(tree)
    print("partition: " + ' | '.join(format_node_set(V, inst.node_names) for V in decomposition.partition))
    print("Z: " + ' '.join(format_edge(inst.graph, e, inst.node_names) for e in sorted(decomposition.forced_edges)))
    return EXIT_OK


def command_gen(args, config):
    if args.kind == 'nolam':
        inst = nolam_instance(unit_costs=args.unit_costs)
    elif args.kind == 'kecss':
        if args.graph is None or args.k is None:
            raise ValueError("gen kecss needs --graph and --k.")
        base = load_instance(args.graph)
        inst = kecss_reduction(base.graph, base.costs, args.k, base.node_names)
    else:
        missing = [flag for flag in ('n', 'm', 'reqs', 'rmax', 'seed') if getattr(args, flag) is None]
        if missing:
            raise ValueError(f"gen random needs --{' --'.join(missing)}.")
        inst = random_instance(args.n, args.m, args.reqs, args.rmax, args.seed)
    sys.stdout.write(format_instance(inst))
    return EXIT_OK


# 3. Command-Line Module
def build_parser():
    parser = argparse.ArgumentParser(description="Cut-relative survivable network design toolkit.")
    parser.add_argument('--config', default=DEFAULT_CONFIG_FILE, help="YAML configuration file.")
    parser.add_argument('--verbose', action='store_true', help="Log at INFO level.")
    commands = parser.add_subparsers(dest='command', required=True)

    solve = commands.add_parser('solve', help="Run iterative rounding.")
    solve.add_argument('file')
    solve.set_defaults(handler=command_solve)

    lp = commands.add_parser('lp', help="Solve the LP relaxation to an extreme point.")
    lp.add_argument('file')
    lp.add_argument('--dump-lp', action='store_true', help="Print the working cut constraints.")
    lp.set_defaults(handler=command_lp)

    verify = commands.add_parser('verify', help="Check an edge set.")
    verify.add_argument('file')
    verify.add_argument('--solution', required=True)
    verify.add_argument('--model', choices=[CUT_RELATIVE, PATH_RELATIVE, GRACEFUL], default=CUT_RELATIVE)
    verify.set_defaults(handler=command_verify)

    exact = commands.add_parser('exact', help="Brute-force optimum.")
    exact.add_argument('file')
    exact.add_argument('--model', choices=[CUT_RELATIVE, PATH_RELATIVE], default=CUT_RELATIVE)
    exact.set_defaults(handler=command_exact)

    decompose = commands.add_parser('decompose', help="Print the canonical decomposition tree.")
    decompose.add_argument('file')
    decompose.set_defaults(handler=command_decompose)

    gen = commands.add_parser('gen', help="Write an instance to stdout.")
    gen.add_argument('kind', choices=['nolam', 'kecss', 'random'])
    gen.add_argument('--unit-costs', action='store_true')
    gen.add_argument('--graph')
    for flag in ('k', 'n', 'm', 'reqs', 'rmax', 'seed'):
        gen.add_argument(f'--{flag}', type=int)
    gen.set_defaults(handler=command_gen)
    return parser


def run(argv):
    """
    Parse the command line and run one command.

    Args:
    - argv (list of str): Arguments without the program name.

    Returns:
    - int: 0 on success or feasible, 1 on an infeasible verdict, 2 on errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_OK if exit_request.code == 0 else EXIT_ERROR
    config = load_config(args.config)
    configure_logging('INFO' if args.verbose else config['logging']['level'])
    try:
        return args.handler(args, config)
    except (NetworkDesignError, ValueError, OSError) as e:
        log_exception(e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
