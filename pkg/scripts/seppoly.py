"""
seppoly main run script: separability polytopes of partitions and states, three-qubit classes,
circuit evolution and the partition lattice.
"""

import argparse
from pathlib import Path

from src.cli_utils import common_parser, setup_run
from src.defs import EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_GUARD
from src.exceptions import DocumentError, ValidationError, GuardExceededError
from src.io_utils import (load_json, document_kind, parse_partition_doc, parse_state_doc, parse_circuit_doc,
                          polytope_report, classification_report, evolution_report, dump_json, report_table,
                          write_dot, DOC_STATE)
from src.logging_utils import get_logger
from src.partitions import (enumerate_partitions, compare, join, meet, parse_partition, bell_number)
from src.quantum import compute_profile
from src.dynamics import run_circuit, profile_seeded_run
from src.simplicial import build_polytope


# -------------------------
# Definitions
# -------------------------

LATTICE_OPERATIONS = ["enumerate", "compare", "join", "meet"]

# -------------------------
# Setup
# -------------------------

# Get the project root directory
PROJECT_ROOT = Path(__file__).resolve().parent.parent  # Two levels up from scripts/


# -------------------------
# Functions
# -------------------------

def build_parser():

    parser = argparse.ArgumentParser(prog="seppoly", description="Separability polytopes of multipartite states.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    polytope = subparsers.add_parser("polytope", parents=[common_parser()],
                                     help="Polytope report for partition or state documents.")
    polytope.add_argument("files", nargs="+", help="PartitionDoc or StateDoc JSON files.")
    polytope.add_argument("--dot", default=None, metavar="PATH", help="Write the 1-skeleton as DOT.")

    classify = subparsers.add_parser("classify", parents=[common_parser()], help="Three-qubit class.")
    classify.add_argument("files", nargs="+", help="PartitionDoc or StateDoc JSON files over 3 parties.")

    evolve = subparsers.add_parser("evolve", parents=[common_parser()], help="Evolve a polytope through a circuit.")
    evolve.add_argument("initial", help="PartitionDoc or StateDoc JSON file.")
    evolve.add_argument("circuit", help="CircuitDoc JSON file.")
    evolve.add_argument("--dot-dir", default=None, metavar="DIR", help="Write one DOT file per step.")

    lattice = subparsers.add_parser("lattice", parents=[common_parser()], help="Partition lattice operations.")
    lattice.add_argument("operation", choices=LATTICE_OPERATIONS)
    lattice.add_argument("operands", nargs="+",
                         help="Party count for enumerate; two partitions ('01|2' or '[[0,1],[2]]') otherwise.")
    lattice.add_argument("-n", type=int, default=None, help="Party count of the partitions (inferred by default).")

    return parser

def load_antichain(path, args, settings):
    """
    Antichain from a partition document, or the certified maximal partitions of a state document.
    :return: (PartitionAntichain, labels, SeparabilityProfile or None)
    """

    obj = load_json(path)
    if document_kind(obj) == DOC_STATE:
        rho, witnesses, labels = parse_state_doc(obj, args.seed)
        tolerances = settings['tolerances']
        profile = compute_profile(rho, witnesses, tol=tolerances['ppt'], factor_tol=tolerances['factorization'],
                                  witness_tol=tolerances['witness'], max_parties=settings['profile_parties'])
        return profile.certified_maximal, labels, profile

    a, labels = parse_partition_doc(obj)
    return a, labels, None

def _single_or_list(reports):
    return reports[0] if len(reports) == 1 else reports

def cmd_polytope(args, settings):

    reports = []
    for i, path in enumerate(args.files):
        a, labels, profile = load_antichain(path, args, settings)
        reports.append(polytope_report(a, labels, profile))

        if args.dot is not None:
            dot_path = Path(args.dot)
            if len(args.files) > 1:
                dot_path = dot_path.with_name(f"{dot_path.stem}_{i}{dot_path.suffix}")
            write_dot(build_polytope(a), dot_path, labels=labels)

    return _single_or_list(reports)

def cmd_classify(args, settings):

    reports = []
    for path in args.files:
        a, labels, profile = load_antichain(path, args, settings)
        reports.append(classification_report(a, labels, profile))
    return _single_or_list(reports)

def cmd_evolve(args, settings):

    circuit = parse_circuit_doc(load_json(args.circuit))
    obj = load_json(args.initial)
    schmidt_tol = settings['tolerances']['schmidt']

    if document_kind(obj) == DOC_STATE:
        rho, witnesses, labels = parse_state_doc(obj, args.seed)
        tolerances = settings['tolerances']
        trace = profile_seeded_run(rho, witnesses, circuit, schmidt_tol, tol=tolerances['ppt'],
                                   factor_tol=tolerances['factorization'], witness_tol=tolerances['witness'],
                                   max_parties=settings['profile_parties'])
    else:
        a, labels = parse_partition_doc(obj)
        trace = run_circuit(a, circuit, schmidt_tol)

    if args.dot_dir is not None:
        dot_dir = Path(args.dot_dir)
        write_dot(trace.composed.source, dot_dir / "step_00.dot", name="step_00", labels=labels)
        for step in trace.steps:
            name = f"step_{step.index + 1:02d}"
            write_dot(step.after, dot_dir / f"{name}.dot", name=name, labels=labels)

    return evolution_report(trace, labels)

def _lattice_partitions(args):

    if len(args.operands) != 2:
        raise DocumentError(f"{args.operation} takes two partitions, got {len(args.operands)}")
    first, second = (parse_partition(text) for text in args.operands)
    n = args.n if args.n is not None else max(first.n, second.n)
    return parse_partition(args.operands[0], n), parse_partition(args.operands[1], n)

def cmd_lattice(args, settings):

    if args.operation == "enumerate":
        try:
            n = int(args.operands[0])
        except ValueError as e:
            raise DocumentError(f"Party count expected, got {args.operands[0]!r}") from e
        partitions = [p.to_lists() for p in enumerate_partitions(n, settings['enumeration_parties'])]
        get_logger().info(f"{len(partitions)} partitions of {n} parties (Bell number {bell_number(n)})")
        return {'n': n, 'count': len(partitions), 'partitions': partitions}

    p, q = _lattice_partitions(args)
    if args.operation == "compare":
        return {'p': p.to_lists(), 'q': q.to_lists(), 'relation': compare(p, q).value}
    result = join(p, q) if args.operation == "join" else meet(p, q)
    return {'p': p.to_lists(), 'q': q.to_lists(), args.operation: result.to_lists(), 'text': str(result)}

COMMANDS = {
    "polytope": cmd_polytope,
    "classify": cmd_classify,
    "evolve": cmd_evolve,
    "lattice": cmd_lattice,
}

def main(argv=None):
    """
    Run one subcommand and print its report on standard output.
    :param argv: Argument list, sys.argv[1:] when None.
    :return: Exit code (0 ok, 1 parse error, 2 validation error, 3 guard exceeded).
    """

    args = build_parser().parse_args(argv)

    try:
        settings = setup_run(PROJECT_ROOT, args)
        report = COMMANDS[args.command](args, settings)
    except GuardExceededError as e:
        get_logger().error(f"Guard exceeded: {e}")
        return EXIT_GUARD
    except ValidationError as e:
        get_logger().error(f"Invalid input: {e}")
        return EXIT_VALIDATION
    except DocumentError as e:
        get_logger().error(f"Cannot parse input: {e}")
        return EXIT_PARSE

    if args.format == "table":
        print(report_table(report))
    else:
        print(dump_json(report, settings['indent']))
    return EXIT_OK


if __name__ == "__main__":

    exit(main())
