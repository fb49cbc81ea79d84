from __future__ import unicode_literals

import io
import json

import pytest

from limid import __version__
from limid.cli import run_cli
from limid.export import parse_diagram, serialize_diagram
from limid.generators.urn import gen_urn


@pytest.fixture
def urn_file(tmpdir):
    path = tmpdir.join("urn.json")
    path.write(serialize_diagram(gen_urn(2, variant=5)))
    return str(path)


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_partition_pipeline(capsys, monkeypatch):
    code, out, _ = run(capsys, "gen", "partition", "--numbers", "1,1", "--idealized")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out, _ = run(capsys, "solve", "-")
    assert (code, out) == (0, "0.666666666667\n")


def test_solve_matches_the_oracle(capsys, urn_file):
    _, solved, _ = run(capsys, "solve", urn_file, "--order", "rev-topo")
    _, oracle, _ = run(capsys, "oracle", urn_file)
    assert float(solved) == pytest.approx(float(oracle), abs=1e-9)


def test_approximate_solve_writes_stats(capsys, urn_file, tmpdir):
    stats_path = str(tmpdir.join("stats.json"))
    code, out, _ = run(capsys, "solve", urn_file, "--epsilon", "0.1", "--stats-out", stats_path)
    assert code == 0
    with io.open(stats_path, encoding="utf-8") as stats_file:
        stats = json.load(stats_file)
    assert stats["epsilon"] == 0.1
    assert stats["meu"] == pytest.approx(float(out), rel=1e-11)
    assert stats["strategy_count"] == 8 * 64


def test_eval_reads_the_strategy_written_by_solve(capsys, urn_file, tmpdir):
    strategy_path = str(tmpdir.join("strategy.json"))
    _, solved, _ = run(capsys, "solve", urn_file, "--strategy-out", strategy_path)
    code, evaluated, _ = run(capsys, "eval", urn_file, "--strategy", strategy_path)
    assert code == 0
    assert float(evaluated) == pytest.approx(float(solved), abs=1e-9)


def test_minimize_and_transform_write_diagrams(capsys, urn_file, tmpdir):
    minimal_path = str(tmpdir.join("minimal.json"))
    assert run(capsys, "minimize", urn_file, "-o", minimal_path)[0] == 0
    with io.open(minimal_path, encoding="utf-8") as minimal_file:
        minimal = parse_diagram(minimal_file.read())
    assert minimal.parents("D2") == ("X1",)
    code, out, _ = run(capsys, "transform", urn_file, "--threshold", "8")
    assert code == 0
    assert parse_diagram(out).parents("D1") == ("X0",)
    assert "D2#d1" in parse_diagram(out).decisions


def test_info_summarizes(capsys, urn_file):
    code, out, _ = run(capsys, "info", urn_file)
    assert code == 0
    assert json.loads(out)["strategy_count"] == 8 * 64


def test_gen_families(capsys, tmpdir):
    cnf = tmpdir.join("formula.cnf")
    cnf.write("p cnf 2 2\n1 2 0\n-1 0\n")
    code, out, _ = run(capsys, "gen", "sat", "--cnf", str(cnf), "--q", "2")
    assert code == 0
    assert len(parse_diagram(out).decisions) == 4
    code, out, _ = run(capsys, "gen", "random", "--d", "2", "--c", "3", "--seed", "4")
    assert code == 0
    assert len(parse_diagram(out).decisions) == 2
    code, out, _ = run(capsys, "gen", "urn", "--n", "3", "--variant", "2")
    assert parse_diagram(out).parents("D3") == ("D2",)


def test_exit_codes(capsys, urn_file, tmpdir):
    bad = tmpdir.join("bad.json")
    bad.write("{not json")
    code, out, err = run(capsys, "solve", str(bad))
    assert code == 2 and out == ""
    assert err.startswith("limid: error: ")
    assert run(capsys, "solve", str(tmpdir.join("missing.json")))[0] == 2
    assert run(capsys, "gen", "partition", "--numbers", "1,x")[0] == 2
    assert run(capsys, "gen", "partition", "--numbers", "0,1")[0] == 2
    assert run(capsys, "solve", urn_file, "--order", "random")[0] == 2
    assert run(capsys, "oracle", urn_file, "--cap", "10")[0] == 3
    assert run(capsys, "solve", urn_file, "--max-set-size", "1")[0] == 3


def test_version(capsys):
    code = run_cli(["--version"])
    out, err = capsys.readouterr()
    assert code == 0
    assert __version__ in out + err
