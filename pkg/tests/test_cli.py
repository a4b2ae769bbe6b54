import json
import subprocess
import sys

import pytest

from superschur.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_weights_leq(capsys):
    assert run(["weights", "leq", "1,1|0", "2,0|0"], capsys) == (0, "true\n")
    assert run(["weights", "leq", "1,0|1,0", "2,0|0,0", "--strong"], capsys) == (0, "false\n")


def test_weights_decompose(capsys):
    code, out = run(["weights", "decompose", "--gens", "1|0", "--lmax", "1"], capsys)
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [(r["a"], r["b"], r["weights"]) for r in recs] == [(1, 0, ["1|0"]), (0, 1, ["0|1"])]


def test_weights_pred(capsys):
    assert run(["weights", "pred", "--lambda", "2|1", "--alpha", "0,0", "--q", "3"], capsys) == (0, "0|3\n")
    code, out = run(["weights", "pred", "--random", "20", "--seed", "4"], capsys)
    assert code == 0 and len(out.splitlines()) == 20


def test_weights_filtration(capsys):
    code, out = run(["weights", "filtration", "--gens", "2,0|0"], capsys)
    assert (code, out) == (0, "2,0|0\n1,1|0\n")


def test_bad_input_exit_codes(capsys):
    assert main(["weights", "leq", "1|0", "1,0|0"]) == 2
    assert main(["weights", "pred", "--lambda", "2|1", "--alpha", "0,1", "--q", "3"]) == 2
    assert main(["bidet", "basis", "--lambda", "0,1|0"]) == 2
    assert main(["bidet", "basis", "--lambda", "1|0", "--p", "4"]) == 2
    assert main(["dist", "commute", "--q", "3", "--p", "5"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["weights", "nonsense"])
    assert exc.value.code == 2


def test_bidet_basis(capsys):
    code, out = run(["bidet", "basis", "--lambda", "1,0|0", "--m", "2", "--n", "1", "--p", "3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 64 and rep["rank"] == 64
    assert rep["elapsed_ms"] is None
    code, out = run(["bidet", "basis", "--lambda", "0|0", "--m", "1", "--n", "1"], capsys)
    assert json.loads(out)["count"] == 4


def test_bidet_straighten(capsys):
    code, out = run(["bidet", "straighten", "--mu", "1,1|", "--rows-plus", "1/2", "--cols-plus", "1/2"], capsys)
    rec = json.loads(out)
    assert code == 0
    assert len(rec["expansion"]) == 1 and rec["expansion"][0]["coeff"] == "1"


def test_bidet_trace_check_csv(capsys):
    code, out = run(["bidet", "trace-check", "--size", "2", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "l,k,status"


def test_dist_commute_and_mutation(capsys):
    code, out = run(["dist", "commute", "--q", "3", "--module", "V2W1"], capsys)
    assert code == 0 and '"fail"' not in out
    code, out = run(["dist", "commute", "--q", "3", "--i", "1", "--j", "2", "--a", "1", "--target", "2"], capsys)
    assert code == 1 and json.loads(out)["counterexample"]


def test_dist_kernel_and_witness(capsys):
    code, out = run(["dist", "kernel", "--l", "0", "--q", "3", "--kmax", "2"], capsys)
    assert code == 0
    code, out = run(["dist", "witness", "--l", "0", "--q", "3", "--u", "e12", "--alpha", "1,2"], capsys)
    assert code == 0 and json.loads(out)["z"] == "v1(x)v1(x)v2(x)v2(x)w1"
    code, out = run(["dist", "witness", "--l", "0", "--rational", "--u", "e12*(e1)", "--N", "3"], capsys)
    assert code == 0
    code, out = run(["dist", "kernel", "--l", "1", "--rational"], capsys)
    assert code == 0


def test_dist_random_witness_suite(capsys):
    code, out = run(["dist", "witness", "--l", "1", "--q", "5", "--m", "2", "--n", "1",
                     "--random", "5", "--seed", "3"], capsys)
    assert code == 0 and len(out.splitlines()) == 5


def test_reports_are_reproducible(capsys, tmp_path):
    argv = ["dist", "witness", "--l", "0", "--q", "3", "--random", "6", "--seed", "9"]
    _, first = run(argv, capsys)
    _, second = run(argv, capsys)
    assert first == second
    out = tmp_path / "r.json"
    assert main(argv + ["--out", str(out)]) == 0
    assert out.read_text() == first


def test_parallel_output_matches_serial(capsys):
    argv = ["dist", "commute", "--q", "3", "--module", "V1W1"]
    _, serial = run(argv, capsys)
    _, parallel = run(argv + ["--jobs", "2"], capsys)
    assert serial == parallel


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superschur", "weights", "dominant", "3,3|-1,-5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "true\n"
