#-*- coding:utf-8 -*-
""" :mod:`limid.bench`
======================

Benchmark harness.

A suite is a JSON list of rows. A row has an ``id``, a number of instances
``N`` and either a list of diagram ``files`` or a ``generator``:

.. code-block:: json

    [{"id": "1", "N": 10,
      "generator": {"family": "random", "d": 3, "c": 5, "omega_d": 8, "omega_c": 16, "seed": 0}},
     {"id": "urn", "N": 1, "generator": {"family": "urn", "n": 3, "variant": 5}},
     {"id": "files", "files": ["a.json", "b.json"]}]

Random rows use the seeds ``seed, seed + 1, ..., seed + N - 1``. Every
instance is solved with a deadline; instances missing it count as unsolved.
The report gives, per row, the percentage of solved instances, the mean and
standard deviation of the solving time, the largest set of valuations met
and the largest number of strategies. When a second configuration is given
(an approximation with `compare_epsilon`), it also gives the relative time
and cardinality changes ``(T' - T) / T`` and ``(C' - C) / C``, averaged over
the instances both configurations solved.

>>> relative_change([2., 4.], [1., 4.])
(-0.25, 0.25)
"""
from __future__ import unicode_literals, division
from builtins import range
import six

import io
import os
import csv
import time
import logging

import numpy as np

from limid.exceptions import DocumentError, ResourceLimitError
from limid.model import strategy_count
from limid.export import loads, parse_diagram
from limid.lve import LVESolver
from limid.fptas import ApproxSolver
from limid.generators import gen_urn, gen_partition, gen_sat, parse_dimacs, gen_random, RandomParams

_logger = logging.getLogger("limid.bench")

COLUMNS = ["id", "N", "solved_pct", "mean_time_ms", "std_time_ms", "max_set_card",
           "strategy_count", "d", "c", "v", "omega_d", "omega_c"]
COMPARE_COLUMNS = ["solved_pct_compare", "delta_t_mean", "delta_t_std", "delta_c_mean", "delta_c_std"]


class Instance(object):
    """ A named diagram of a suite row """
    def __init__(self, name, diagram):
        self.name = name
        self.diagram = diagram


class Run(object):
    """ Outcome of one solver on one instance """
    def __init__(self, solved, time_ms=0., max_set_card=0, meu=None):
        self.solved = solved
        self.time_ms = time_ms
        self.max_set_card = max_set_card
        self.meu = meu


def load_suite(path):
    """ rows of a suite file """
    with io.open(path, encoding="utf-8") as suite_file:
        rows = loads(suite_file.read())
    if not isinstance(rows, list):
        raise DocumentError("a suite is a list of rows")
    for pos, row in enumerate(rows):
        if not isinstance(row, dict) or "id" not in row:
            raise DocumentError("a row is an object with an 'id'", "[%d]" % pos)
        if ("files" in row) == ("generator" in row):
            raise DocumentError("a row has either 'files' or a 'generator'", "[%d]" % pos)
    return rows


def row_instances(row, base_dir="."):
    """ instances of a suite row """
    if "files" in row:
        for name in row["files"]:
            path = os.path.join(base_dir, name)
            with io.open(path, encoding="utf-8") as diagram_file:
                yield Instance(name, parse_diagram(diagram_file.read()))
        return
    options = dict(row["generator"])
    family = options.pop("family", "random")
    count = int(row.get("N", 1))
    if family == "random":
        seed = int(options.pop("seed", 0))
        for i in range(count):
            params = RandomParams(seed=seed + i, **options)
            yield Instance("seed-%d" % params.seed, gen_random(params))
        return
    if family == "urn":
        diagram = gen_urn(int(options["n"]), int(options.get("variant", 1)))
    elif family == "partition":
        diagram = gen_partition(options["numbers"], bool(options.get("idealized", True)))
    elif family == "sat":
        with io.open(os.path.join(base_dir, options["file"]), encoding="utf-8") as cnf_file:
            diagram = gen_sat(parse_dimacs(cnf_file.read()), int(options.get("q", 1)))
    else:
        raise DocumentError("unknown generator family %r" % family, "generator.family")
    for i in range(count):
        yield Instance("%s-%d" % (family, i), diagram)


def solve_instance(solver, diagram, timeout, **options):
    """ :class:`Run` of `solver` on `diagram`, a missed deadline or an
    exceeded cap makes the instance unsolved """
    start = time.time()
    try:
        result = solver(diagram, timeout=timeout, **options)
    except ResourceLimitError as err:
        _logger.info("unsolved: %s" % err)
        return Run(False, 1000. * (time.time() - start))
    return Run(True, 1000. * (time.time() - start), result.stats.get("max_set_cardinality", 0), result.meu)


def relative_change(base, other):
    """ mean and population standard deviation of ``(o - b) / b`` over the
    pairs with a nonzero base """
    changes = [(o - b) / b for b, o in zip(base, other) if b]
    if not changes:
        return 0., 0.
    return float(np.mean(changes)), float(np.std(changes))


def run_row(row, timeout, epsilon=0., compare_epsilon=0., base_dir="."):
    """ report line of one suite row """
    solver = ApproxSolver() if epsilon else LVESolver()
    options = {"epsilon": epsilon} if epsilon else {}
    runs, compared, counts = [], [], []
    for instance in row_instances(row, base_dir):
        counts.append(strategy_count(instance.diagram))
        run = solve_instance(solver, instance.diagram, timeout, **options)
        runs.append(run)
        if compare_epsilon:
            compared.append(solve_instance(ApproxSolver(), instance.diagram, timeout, epsilon=compare_epsilon))
        _logger.info("row %s, %s: solved=%s in %.1fms" % (row["id"], instance.name, run.solved, run.time_ms))
    solved = [run for run in runs if run.solved]
    times = [run.time_ms for run in solved]
    line = {
        "id": row["id"],
        "N": len(runs),
        "solved_pct": 100. * len(solved) / len(runs) if runs else 0.,
        "mean_time_ms": float(np.mean(times)) if times else 0.,
        "std_time_ms": float(np.std(times)) if times else 0.,
        "max_set_card": max([run.max_set_card for run in solved] or [0]),
        "strategy_count": max(counts or [0]),
    }
    generator = row.get("generator", {})
    if generator.get("family", "random") == "random" and "files" not in row:
        params = RandomParams(**dict((k, v) for k, v in six.iteritems(generator) if k != "family"))
        line.update((key, value) for key, value in six.iteritems(params.as_dict()) if key in COLUMNS)
    if compare_epsilon:
        solved_compared = [run for run in compared if run.solved]
        line["solved_pct_compare"] = 100. * len(solved_compared) / len(compared) if compared else 0.
        both = [(run, other) for run, other in zip(runs, compared) if run.solved and other.solved]
        line["delta_t_mean"], line["delta_t_std"] = relative_change([r.time_ms for r, _ in both],
                                                                    [o.time_ms for _, o in both])
        line["delta_c_mean"], line["delta_c_std"] = relative_change([r.max_set_card for r, _ in both],
                                                                    [o.max_set_card for _, o in both])
    return line


def run_bench(suite, timeout, epsilon=0., compare_epsilon=0., base_dir="."):
    """ Report lines of every row of `suite` (a list of rows).

    :param timeout: deadline of each solver run in seconds, 0 for none
    :param epsilon: solve with the approximation when nonzero
    :param compare_epsilon: also run the approximation with this epsilon
        and report the relative changes
    """
    report = []
    for row in suite:
        line = run_row(row, timeout, epsilon, compare_epsilon, base_dir)
        _logger.info("row %s: %.0f%% solved, %.1f +- %.1f ms"
                     % (line["id"], line["solved_pct"], line["mean_time_ms"], line["std_time_ms"]))
        report.append(line)
    return report


def write_report(report, out, compare=False):
    """ write report lines as CSV to the file object `out` """
    columns = COLUMNS + (COMPARE_COLUMNS if compare else [])
    writer = csv.DictWriter(out, fieldnames=columns, restval="", extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for line in report:
        writer.writerow(line)
