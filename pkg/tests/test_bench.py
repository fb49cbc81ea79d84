from __future__ import unicode_literals

import io
import csv
import json
import unittest

import pytest

from limid.exceptions import DocumentError
from limid.cli import run_cli
from limid.lve import LVESolver
from limid.export import serialize_diagram
from limid.generators.urn import gen_urn
from limid.bench import COLUMNS, COMPARE_COLUMNS, load_suite, row_instances, solve_instance, relative_change
from limid.bench import run_row, run_bench, write_report


def write_suite(tmpdir, rows):
    path = tmpdir.join("suite.json")
    path.write(json.dumps(rows))
    return str(path)


class TestRows(unittest.TestCase):

    def test_should_expand_random_rows_into_consecutive_seeds(self):
        row = {"id": "1", "N": 3, "generator": {"family": "random", "d": 1, "c": 2, "seed": 10}}
        assert [instance.name for instance in row_instances(row)] == ["seed-10", "seed-11", "seed-12"]

    def test_should_repeat_family_instances(self):
        row = {"id": "urn", "N": 3, "generator": {"family": "urn", "n": 2, "variant": 1}}
        instances = list(row_instances(row))
        assert len(instances) == 3
        assert instances[0].diagram.decisions == ["D1", "D2"]

    def test_should_reject_unknown_families(self):
        with pytest.raises(DocumentError):
            list(row_instances({"id": "x", "generator": {"family": "chess"}}))

    def test_should_count_missed_deadlines_as_unsolved(self):
        run = solve_instance(LVESolver(), gen_urn(12, variant=2), 1e-9)
        assert not run.solved
        run = solve_instance(LVESolver(), gen_urn(2, variant=1), 0.)
        assert run.solved and run.meu > 0.

    def test_should_average_relative_changes(self):
        assert relative_change([1., 2.], [1., 2.]) == (0., 0.)
        assert relative_change([0., 2.], [5., 3.]) == (0.5, 0.)
        assert relative_change([], []) == (0., 0.)


def test_trivial_rows_are_all_solved():
    line = run_row({"id": "urn", "N": 3, "generator": {"family": "urn", "n": 3, "variant": 5}}, timeout=60.)
    assert line["N"] == 3
    assert line["solved_pct"] == 100.
    assert line["strategy_count"] == 8 * 64 * 64
    assert line["max_set_card"] >= 1


def test_random_rows_report_their_parameters():
    row = {"id": "7", "N": 2, "generator": {"family": "random", "d": 2, "c": 3, "omega_d": 8, "omega_c": 16}}
    line = run_row(row, timeout=60., compare_epsilon=0.1)
    assert (line["d"], line["c"], line["v"], line["omega_d"], line["omega_c"]) == (2, 3, 4, 8, 16)
    for column in COMPARE_COLUMNS:
        assert column in line


def test_compared_rows_report_the_approximate_solve_rate():
    row = {"id": "urn", "N": 2, "generator": {"family": "urn", "n": 2, "variant": 1}}
    line = run_row(row, timeout=60., compare_epsilon=0.1)
    assert line["solved_pct"] == 100.
    assert line["solved_pct_compare"] == 100.
    assert "solved_pct_compare" not in run_row(row, timeout=60.)


def test_suites_from_files(tmpdir):
    tmpdir.join("urn.json").write(serialize_diagram(gen_urn(2, variant=2)))
    path = write_suite(tmpdir, [{"id": "files", "files": ["urn.json"]}])
    report = run_bench(load_suite(path), 60., base_dir=str(tmpdir))
    assert report[0]["solved_pct"] == 100.
    assert report[0]["strategy_count"] == 32


def test_invalid_suites(tmpdir):
    for rows in ({"id": "1"}, [{"N": 1}], [{"id": "1", "files": [], "generator": {}}], [{"id": "1"}]):
        with pytest.raises(DocumentError):
            load_suite(write_suite(tmpdir, rows))


def test_report_columns():
    out = io.StringIO()
    write_report([{"id": "1", "N": 1, "solved_pct": 100.}], out, compare=True)
    header = next(csv.reader(io.StringIO(out.getvalue())))
    assert header == COLUMNS + COMPARE_COLUMNS


def test_bench_command(tmpdir, capsys):
    path = write_suite(tmpdir, [{"id": "urn", "N": 2, "generator": {"family": "urn", "n": 2, "variant": 1}}])
    code = run_cli(["bench", "--suite", path, "--timeout", "60", "--compare-epsilon", "0.1"])
    out, _ = capsys.readouterr()
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["id"] == "urn"
    assert float(rows[0]["solved_pct"]) == 100.
    assert "delta_t_mean" in rows[0]
