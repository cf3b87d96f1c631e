import io
import json
import subprocess
import sys

import pytest

from hypermatch import Hypergraph, is_perfect_matching, write_instance
from hypermatch.cli import BENCH_COLUMNS, EXIT_NO_PM, EXIT_PARSE, EXIT_PM, EXIT_REGIME, main
from hypermatch.construct import gen_parity


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def parity_file(tmp_path):
    path = tmp_path / "parity.hg"
    write_instance(gen_parity(3, 3, 6), path)
    return path


def test_decide_parity_emits_certificate(parity_file, tmp_path):
    cert_path = tmp_path / "cert.json"
    code, out = run("decide", str(parity_file), "--cert-out", str(cert_path))
    assert code == EXIT_NO_PM
    obj = json.loads(out)
    assert obj["result"] == "no_pm"
    assert obj["certificate"] is not None
    assert json.loads(cert_path.read_text()) == obj["certificate"]

    code, out = run("verify", str(parity_file), str(cert_path))
    assert (code, out) == (EXIT_PM, "valid\n")


def test_verify_rejects_certificate_for_other_graph(parity_file, tmp_path):
    cert_path = tmp_path / "cert.json"
    run("certify", str(parity_file), "--cert-out", str(cert_path))
    other = tmp_path / "k9.hg"
    write_instance(Hypergraph.complete(9, 3), other)
    code, out = run("verify", str(other), str(cert_path))
    assert code == EXIT_NO_PM and out.startswith("invalid")


def test_find_complete_graph(tmp_path):
    path = tmp_path / "k12.hg"
    h = Hypergraph.complete(12, 3)
    write_instance(h, path)
    code, out = run("find", str(path), "--gamma", "1/20", "--brute-threshold", "9")
    assert code == EXIT_PM
    obj = json.loads(out)
    assert obj["result"] == "pm" and obj["certificate"] is None
    assert len(obj["matching"]) == 4
    assert is_perfect_matching(h, [tuple(e) for e in obj["matching"]])


def test_certify_exit_codes(parity_file, tmp_path):
    code, out = run("certify", str(parity_file))
    assert code == EXIT_NO_PM and json.loads(out)["certificate"] is not None
    path = tmp_path / "k9.hg"
    write_instance(Hypergraph.complete(9, 3), path)
    code, out = run("certify", str(path))
    assert code == EXIT_PM and json.loads(out) == {"certificate": None}


def test_parse_error_exit(tmp_path, capsys):
    path = tmp_path / "bad.hg"
    path.write_text("p hg 6 3 1\ne 1 2\n")
    code, _ = run("decide", str(path))
    assert code == EXIT_PARSE
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exit(tmp_path):
    assert run("decide", str(tmp_path / "nope.hg"))[0] == EXIT_PARSE


def test_regime_violation_exit(tmp_path, capsys):
    path = tmp_path / "sparse.hg"
    write_instance(Hypergraph(12, 3, [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12)]), path)
    code, _ = run("find", str(path), "--brute-threshold", "9", "--no-fallback")
    assert code == EXIT_REGIME
    assert "regime violation" in capsys.readouterr().err
    code, out = run("find", str(path), "--brute-threshold", "9")
    assert code == EXIT_PM and "fallback" in out


def test_gen_round_trip(tmp_path):
    path = tmp_path / "g.hg"
    assert run("gen", "parity", "--k", "3", "--sizes", "3,6", "-o", str(path))[0] == 0
    code, out = run("gen", "parity", "--k", "3", "--sizes", "3,6")
    assert out == path.read_text()
    assert out.splitlines()[0] == "p hg 9 3 38"


def test_bench_columns():
    code, out = run("bench", "--kinds", "parity,complete", "--n", "6,9")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split(",") == BENCH_COLUMNS
    assert len(lines) == 5
    for line in lines[1:]:
        row = dict(zip(BENCH_COLUMNS, line.split(",")))
        assert row["brute_agrees"] == "1"


def test_bench_timing_column():
    _, out = run("bench", "--kinds", "complete", "--n", "6", "--timing")
    assert out.splitlines()[0].endswith(",seconds")


def test_bench_rejects_unknown_kind():
    assert run("bench", "--kinds", "bogus")[0] == EXIT_PARSE


def test_stdin_and_module_entry(parity_file):
    proc = subprocess.run([sys.executable, "-m", "hypermatch", "decide", "-"],
                          input=parity_file.read_text(), capture_output=True, text=True)
    assert proc.returncode == EXIT_NO_PM
    assert json.loads(proc.stdout)["result"] == "no_pm"
