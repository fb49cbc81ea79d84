#-*- coding:utf-8 -*-
""" :mod:`limid.cli`
====================

The ``limid`` command.

.. code-block:: sh

    $ limid gen partition --numbers 1,1 --idealized | limid solve -
    0.666666666667
    $ limid solve diagram.json --epsilon 0.1 --stats-out stats.json
    $ limid eval diagram.json --strategy strategy.json
    $ limid bench --suite suite.json --timeout 60 --report report.csv

Results go to standard output, logs and errors to standard error. The exit
code is 0 on success, 2 on invalid input, 3 when a resource limit is hit and
4 on numerical failure.
"""
from __future__ import unicode_literals, print_function

import io
import os
import sys
import logging
import argparse

from limid import __version__
from limid.exceptions import LimidError
from limid.model import diagram_summary
from limid.model.evaluate import expected_utility
from limid.preprocess import Minimize
from limid.transform import MakeParentless
from limid.ordering import ORDERINGS, MIN_FILL
from limid.lve import LVESolver, DEFAULT_TRANSFORM_THRESHOLD
from limid.fptas import ApproxSolver
from limid.oracle import brute_force_meu, DEFAULT_STRATEGY_CAP
from limid.generators import gen_urn, gen_partition, gen_sat, parse_dimacs, RandomDiagram
from limid.generators.protocol import DEFAULT_WIDTH_CAP
from limid.generators.urn import VARIANTS
from limid.export import (dumps, parse_diagram, serialize_diagram, parse_strategy, serialize_strategy,
                          serialize_stats)
from limid.bench import load_suite, run_bench, write_report

_logger = logging.getLogger("limid.cli")

EXIT_OK = 0
EXIT_INPUT = 2


def read_text(path):
    """ content of `path`, ``-`` is the standard input """
    if path == "-":
        return sys.stdin.read()
    with io.open(path, encoding="utf-8") as infile:
        return infile.read()


def write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with io.open(path, "w", encoding="utf-8") as outfile:
        outfile.write(text)


def print_value(value):
    print("%.12g" % value)


def cmd_solve(args):
    diagram = parse_diagram(read_text(args.file))
    options = {
        "ordering": args.order,
        "minimize": not args.no_minimize,
        "transform": not args.no_transform,
        "transform_threshold": args.transform_threshold,
        "max_set_size": args.max_set_size,
        "timeout": args.timeout,
    }
    if args.epsilon:
        result = ApproxSolver()(diagram, epsilon=args.epsilon, **options)
    else:
        result = LVESolver()(diagram, **options)
    print_value(result.meu)
    if args.stats_out:
        write_text(args.stats_out, serialize_stats(result, diagram, args.epsilon or None))
    if args.strategy_out:
        write_text(args.strategy_out, serialize_strategy(result.strategy, diagram))
    return EXIT_OK


def cmd_eval(args):
    diagram = parse_diagram(read_text(args.file))
    strategy = parse_strategy(read_text(args.strategy), diagram)
    print_value(expected_utility(diagram, strategy))
    return EXIT_OK


def cmd_minimize(args):
    diagram = parse_diagram(read_text(args.file))
    write_text(args.output, serialize_diagram(Minimize()(diagram)))
    return EXIT_OK


def cmd_transform(args):
    diagram = parse_diagram(read_text(args.file))
    transformed, _ = MakeParentless()(diagram, threshold=args.threshold)
    write_text(args.output, serialize_diagram(transformed))
    return EXIT_OK


def cmd_oracle(args):
    diagram = parse_diagram(read_text(args.file))
    print_value(brute_force_meu(diagram, cap=args.cap).meu)
    return EXIT_OK


def cmd_info(args):
    write_text("-", dumps(diagram_summary(parse_diagram(read_text(args.file)))))
    return EXIT_OK


def cmd_gen(args):
    if args.family == "random":
        diagram = RandomDiagram()(args.seed, d=args.d, c=args.c, omega_d=args.omega_d, omega_c=args.omega_c,
                                  width_cap=args.width_cap)
    elif args.family == "urn":
        diagram = gen_urn(args.n, variant=args.variant)
    elif args.family == "partition":
        try:
            numbers = [int(tok) for tok in args.numbers.split(",") if tok.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError("--numbers expects comma separated integers")
        diagram = gen_partition(numbers, idealized=args.idealized)
    else:
        diagram = gen_sat(parse_dimacs(read_text(args.cnf)), q=args.q)
    write_text(args.output, serialize_diagram(diagram))
    return EXIT_OK


def cmd_bench(args):
    suite = load_suite(args.suite)
    report = run_bench(suite, args.timeout, epsilon=args.epsilon, compare_epsilon=args.compare_epsilon,
                       base_dir=os.path.dirname(os.path.abspath(args.suite)))
    out = io.StringIO()
    write_report(report, out, compare=bool(args.compare_epsilon))
    write_text(args.report, out.getvalue())
    return EXIT_OK


def argparser():
    parser = argparse.ArgumentParser(prog="limid", description="Solve limited memory influence diagrams")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logs")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    solve = commands.add_parser("solve", help="maximum expected utility and an optimal strategy")
    solve.add_argument("file", help="diagram document, - for standard input")
    solve.add_argument("--order", choices=ORDERINGS, default=MIN_FILL, help="elimination order heuristic")
    solve.add_argument("--epsilon", type=float, default=0., help="approximate within 1 + epsilon")
    solve.add_argument("--stats-out", metavar="PATH", help="write run statistics")
    solve.add_argument("--strategy-out", metavar="PATH", help="write the strategy found")
    solve.add_argument("--no-transform", action="store_true", help="keep decisions with many policies")
    solve.add_argument("--no-minimize", action="store_true", help="keep barren nodes and nonrequisite arcs")
    solve.add_argument("--transform-threshold", type=int, default=DEFAULT_TRANSFORM_THRESHOLD, metavar="N",
                       help="replace decisions with more than N policies (default: %(default)s)")
    solve.add_argument("--max-set-size", type=int, default=0, metavar="N", help="abort above N valuations in a set")
    solve.add_argument("--timeout", type=float, default=0., metavar="SECONDS", help="abort after SECONDS")
    solve.set_defaults(func=cmd_solve)

    evaluate = commands.add_parser("eval", help="expected utility of a strategy")
    evaluate.add_argument("file", help="diagram document, - for standard input")
    evaluate.add_argument("--strategy", required=True, metavar="PATH", help="strategy document")
    evaluate.set_defaults(func=cmd_eval)

    minimize = commands.add_parser("minimize", help="remove barren nodes and nonrequisite arcs")
    minimize.add_argument("file", help="diagram document, - for standard input")
    minimize.add_argument("-o", "--output", default="-", help="output document (default: standard output)")
    minimize.set_defaults(func=cmd_minimize)

    transform = commands.add_parser("transform", help="replace decisions with parents by parentless ones")
    transform.add_argument("file", help="diagram document, - for standard input")
    transform.add_argument("-o", "--output", default="-", help="output document (default: standard output)")
    transform.add_argument("--threshold", type=int, default=0, metavar="N",
                           help="only replace decisions with more than N policies")
    transform.set_defaults(func=cmd_transform)

    oracle = commands.add_parser("oracle", help="maximum expected utility by enumeration")
    oracle.add_argument("file", help="diagram document, - for standard input")
    oracle.add_argument("--cap", type=int, default=DEFAULT_STRATEGY_CAP, metavar="N",
                        help="refuse more than N strategies (default: %(default)s)")
    oracle.set_defaults(func=cmd_oracle)

    info = commands.add_parser("info", help="figures describing a diagram")
    info.add_argument("file", help="diagram document, - for standard input")
    info.set_defaults(func=cmd_info)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", default="-", help="output document (default: standard output)")
    gen = commands.add_parser("gen", help="generate a diagram")
    families = gen.add_subparsers(dest="family", metavar="FAMILY")
    families.required = True
    rnd = families.add_parser("random", parents=[output], help="random diagram with bounded families")
    rnd.add_argument("--d", type=int, default=3, help="number of decisions")
    rnd.add_argument("--c", type=int, default=5, help="number of chance variables")
    rnd.add_argument("--omega-d", type=int, default=8, help="bound on decision family domains")
    rnd.add_argument("--omega-c", type=int, default=16, help="bound on chance family domains")
    rnd.add_argument("--width-cap", type=int, default=DEFAULT_WIDTH_CAP, help="bound on the width estimate")
    rnd.add_argument("--seed", type=int, default=0)
    urn = families.add_parser("urn", parents=[output], help="the urn game")
    urn.add_argument("--n", type=int, required=True, help="number of players")
    urn.add_argument("--variant", type=int, default=1, choices=VARIANTS, help="information variant")
    partition = families.add_parser("partition", parents=[output], help="diagram of a number partitioning instance")
    partition.add_argument("--numbers", required=True, help="comma separated positive integers")
    partition.add_argument("--idealized", action="store_true", help="exact weights instead of rounded ones")
    sat = families.add_parser("sat", parents=[output], help="diagram of a CNF formula")
    sat.add_argument("--cnf", required=True, metavar="PATH", help="DIMACS file, - for standard input")
    sat.add_argument("--q", type=int, default=1, help="number of replicas")
    gen.set_defaults(func=cmd_gen)

    bench = commands.add_parser("bench", help="run a benchmark suite")
    bench.add_argument("--suite", required=True, metavar="PATH", help="suite document")
    bench.add_argument("--timeout", type=float, required=True, metavar="SECONDS", help="deadline per instance")
    bench.add_argument("--report", default="-", metavar="PATH", help="CSV report (default: standard output)")
    bench.add_argument("--epsilon", type=float, default=0., help="solve approximately")
    bench.add_argument("--compare-epsilon", type=float, default=0., metavar="E",
                       help="compare with the approximation for E")
    bench.set_defaults(func=cmd_bench)
    return parser


def configure_logging(verbose, quiet):
    level = logging.WARNING
    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s:%(name)s: %(message)s")


def run_cli(argv=None):
    """ Run the command line, returns the exit code """
    parser = argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code
    configure_logging(args.verbose, args.quiet)
    try:
        return args.func(args)
    except LimidError as err:
        _logger.debug("failure", exc_info=True)
        sys.stderr.write("limid: error: %s\n" % err)
        return err.exit_code
    except (IOError, OSError, argparse.ArgumentTypeError) as err:
        sys.stderr.write("limid: error: %s\n" % err)
        return EXIT_INPUT


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
