import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from rspin.cli import run

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_verify(work, capsys):
    assert cli(capsys, "construct", "--family", "B", "--r", "3", "-o", "b3.alg")[0] == 0
    code, out, _ = cli(capsys, "verify", "b3.alg")
    assert code == 0 and "all axioms pass" in out
    assert out.count(" pass ") == 10


def test_verify_json(work, capsys):
    cli(capsys, "construct", "--family", "E", "--r", "2", "--kappa", "-1/2", "-o", "e.alg")
    code, out, _ = cli(capsys, "verify", "e.alg", "--json")
    assert code == 0 and '"passed": true' in out


def test_distinct_d9(work, capsys):
    cli(capsys, "construct", "--family", "D", "--r", "9", "-o", "d9.alg")
    code, out, _ = cli(capsys, "distinct", "d9.alg")
    assert code == 0
    assert "beta_9 = 14" in out and out.strip().endswith("distinct")


def test_not_distinct_exit_1(work, capsys):
    cli(capsys, "construct", "--family", "F", "--r", "4", "-o", "f.alg")
    assert cli(capsys, "distinct", "f.alg")[0] == 1


def test_span_check_sequence(capsys):
    code, out, _ = cli(capsys, "span-check", "--sequence", "1,2,3,4,5,6")
    assert code == 1
    assert "inconsistent: characteristic polynomial not squarefree" in out
    assert "never prove" in out
    code, out, _ = cli(capsys, "span-check", "--sequence", "8, 64, 512, 4096")
    assert code == 0 and "consistent (order 1, horizon 4)" in out


def test_span_check_file(work, capsys):
    cli(capsys, "construct", "--family", "A", "--r", "4", "-o", "a.alg")
    code, out, _ = cli(capsys, "span-check", "a.alg", "--horizon", "8")
    assert code == 0
    assert "alpha+: consistent (order 1, horizon 8)" in out


@pytest.mark.parametrize("family,r,horizon,golden", [("A", "2", "3", "a2_invariants_h3.json"),
                                                      ("B", "3", "2", "b3_invariants_h2.json")])
def test_invariants_json_golden(work, capsys, family, r, horizon, golden):
    cli(capsys, "construct", "--family", family, "--r", r, "-o", "x.alg")
    code, out, _ = cli(capsys, "invariants", "x.alg", "--json", "--horizon", horizon)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_invariants_table(work, capsys):
    cli(capsys, "construct", "--family", "A", "--r", "2", "-o", "a.alg")
    code, out, _ = cli(capsys, "invariants", "a.alg", "--horizon", "2")
    assert code == 0
    assert "-1/4" in out and "-0.25" in out


def test_sum_tensor_pullback_semisimple(work, capsys):
    cli(capsys, "construct", "--family", "A", "--r", "4", "-o", "a.alg")
    cli(capsys, "construct", "--family", "E", "--r", "4", "--kappa", "2", "-o", "e.alg")
    cli(capsys, "construct", "--family", "C", "--r", "4", "-o", "c.alg")
    assert cli(capsys, "sum", "a.alg", "e.alg", "-o", "s.alg")[0] == 0
    assert cli(capsys, "tensor", "a.alg", "e.alg", "-o", "t.alg")[0] == 0
    for f in ("s.alg", "t.alg"):
        code, out, _ = cli(capsys, "semisimple", f)
        assert code == 0 and "semisimple: yes" in out
        assert cli(capsys, "verify", f)[0] == 0
    code, out, _ = cli(capsys, "semisimple", "c.alg")
    assert code == 1 and "semisimple: no" in out
    cli(capsys, "construct", "--family", "A", "--r", "2", "-o", "a2.alg")
    assert cli(capsys, "pullback", "a2.alg", "--r", "6", "-o", "p.alg")[0] == 0
    assert cli(capsys, "verify", "p.alg")[0] == 0
    assert cli(capsys, "pullback", "a2.alg", "--r", "5", "-o", "q.alg")[0] == 2


def test_eval(work, capsys):
    cli(capsys, "construct", "--family", "A", "--r", "2", "-o", "a.alg")
    code, out, _ = cli(capsys, "eval", "a.alg", "--expr", "eps . eta")
    assert code == 0 and out.startswith("2 ")
    code, out, _ = cli(capsys, "eval", "a.alg", "--expr", "N[0]")
    assert code == 0 and out.startswith("map (0,) -> (0,)")
    code, _, err = cli(capsys, "eval", "a.alg", "--expr", "mu[0,0")
    assert code == 2 and "column 7" in err
    code, _, err = cli(capsys, "eval", "a.alg", "--expr", "mu[1,1] . delta[0,0]")
    assert code == 2 and "mismatch" in err


def test_usage_and_io_errors(work, capsys):
    assert cli(capsys, "verify", "missing.alg")[0] == 2
    Path("junk.alg").write_text("{}")
    code, _, err = cli(capsys, "verify", "junk.alg")
    assert code == 2 and err.count("\n") == 1
    assert cli(capsys, "construct", "--family", "B", "--r", "4", "-o", "x.alg")[0] == 2
    assert cli(capsys, "construct", "--family", "E", "--r", "2", "--kappa", "1/0", "-o", "x")[0] == 2
    assert cli(capsys, "nonsense")[0] == 2
    assert cli(capsys, "span-check")[0] == 2
    assert cli(capsys, "span-check", "--sequence", "1,x")[0] == 2
    cli(capsys, "construct", "--family", "A", "--r", "2", "-o", "a.alg")
    assert cli(capsys, "invariants", "a.alg", "--horizon", "33")[0] == 2
    cli(capsys, "construct", "--family", "B", "--r", "3", "-o", "b.alg")
    assert cli(capsys, "tensor", "a.alg", "b.alg", "-o", "t.alg")[0] == 2


def test_help_exits_zero(capsys):
    assert cli(capsys, "--help")[0] == 0


@pytest.mark.skipif(shutil.which("rspin") is None, reason="console script not installed")
def test_console_script(work):
    proc = subprocess.run(["rspin", "span-check", "--sequence", "1,2,3,4,5,6"],
                          capture_output=True, text=True)
    assert proc.returncode == 1


def test_module_entry(work):
    proc = subprocess.run([sys.executable, "-m", "rspin.cli", "construct", "--family", "F",
                           "--r", "2", "-o", "f.alg"], capture_output=True, text=True)
    assert proc.returncode == 0 and Path("f.alg").exists()
