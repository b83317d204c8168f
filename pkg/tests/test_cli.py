import json

from discg.cli import main
from discg.instances import format_instance, random_min_cut
from discg.setfunc import TableFunction


def test_solve(tmp_path, capsys):
    inst = tmp_path / "cut.txt"
    inst.write_text(format_instance(random_min_cut(6, 3)))
    trace = tmp_path / "trace.csv"
    assert main(["solve", str(inst), "--out", str(trace)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["F(X*)"] == summary["brute_force"]
    assert trace.read_text().startswith("round,agent,objective")


def test_solve_table_with_losses(tmp_path, capsys):
    inst = tmp_path / "t.txt"
    inst.write_text(format_instance(TableFunction(2, [0, -1, 2, 0])))
    assert main(["solve", str(inst), "--graph", "er", "--p-edge", "1", "--loss-probs", "0.5", "--seed", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["X*"] == [1]


def test_solve_nonconvergence_exit_code(tmp_path, capsys):
    inst = tmp_path / "cut.txt"
    inst.write_text(format_instance(random_min_cut(8, 1)))
    assert main(["solve", str(inst), "--max-rounds", "1"]) == 2


def test_verify(tmp_path):
    out = tmp_path / "v.csv"
    assert main(["verify", "--instances", "6", "--sizes", "2,3,4", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("kind,n,seed") and len(rows) == 7


def test_scaling_and_losses_outputs(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["scaling", "--sizes", "3,4", "--instances", "3", "--out", str(out)]) == 0
    first = out.read_text()
    assert main(["scaling", "--sizes", "3,4", "--instances", "3", "--out", str(out)]) == 0
    assert out.read_text() == first
    assert (tmp_path / "s.runs.csv").exists()
    out2 = tmp_path / "l.csv"
    assert main(["losses", "--n", "5", "--p-edge", "0.5", "--loss-probs", "0.2,0.6",
                 "--instances", "3", "--out", str(out2)]) == 0
    assert len(out2.read_text().splitlines()) == 3
