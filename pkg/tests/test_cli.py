from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from kneserlab.cache import CertificateCache
from kneserlab.cli import main
from kneserlab.expr import build
from kneserlab.io import canonical_json, graph_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_chromatic_prints_value_and_caches(capsys, tmp_path):
    code, out, err = run(capsys, "solve", "chromatic", "Kneser(5,2)")
    assert (code, out) == (0, "3\n")
    assert "certificate: " in err
    path = err.split("certificate: ")[1].strip()
    cert = json.loads(open(path).read())
    assert cert["value"] == 3 and cert["lower_bound"]["kind"] == "exhaustion"
    # second call reuses the entry, so nothing new is written
    code, out, err = run(capsys, "solve", "chromatic", "Kneser(5,2)")
    assert (code, out, err) == (0, "3\n", "")


def test_corrupted_cache_entry_is_recomputed(capsys):
    g = build("C(7)")
    cache = CertificateCache()
    run(capsys, "solve", "chromatic", "C(7)")
    path = cache.path("chromatic", g)
    obj = json.loads(path.read_text())
    obj["coloring"][0] = obj["coloring"][1]  # now improper
    path.write_text(json.dumps(obj))
    assert cache.load("chromatic", g) is None
    code, out, err = run(capsys, "solve", "chromatic", "C(7)")
    assert (code, out) == (0, "3\n") and "certificate: " in err
    assert cache.load("chromatic", g)["value"] == 3
    path.write_text("{not json")
    assert cache.load("chromatic", g) is None


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["solve", "fractional", "X(C(5),C(7))"], "7/3\n"),
        (["solve", "fractional", "C(5)", "--method", "exact"], "5/2\n"),
        (["solve", "multichromatic", "C(5)", "--k", "2"], "5\n"),
        (["solve", "homomorphism", "C(5)", "--target", "K(2)"], "false\n"),
        (["solve", "homomorphism", "C(5)", "--target", "Kneser(5,2)"], "true\n"),
        (["solve", "girth", "Mycielski(C(5))"], "4\n"),
        (["solve", "girth", "Kneser(4,2)"], "inf\n"),
        (["solve", "clique", "X(K(3),K(3))"], "3\n"),
        (["solve", "independence", "Kneser(5,2)"], "4\n"),
    ],
)
def test_solve_values(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert (code, out) == (0, expected)


def test_solve_json_format(capsys):
    code, out, _ = run(capsys, "solve", "clique", "K(4)", "--format", "json", "--no-cache")
    doc = json.loads(out)
    assert code == 0 and doc["invariant"] == "clique" and doc["certificate"] == {"value": 4, "witness": [0, 1, 2, 3]}


def test_loops_exit_two(capsys):
    code, _, err = run(capsys, "solve", "chromatic", "Exp(2, K(2))")
    assert code == 2 and "loop" in err


def test_extract_regime_exit_two_writes_report(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, err = run(capsys, "solve", "extract", "K(3)", "--c", "2", "--d", "2", "--out", str(out_file))
    assert code == 2 and "need at least 3" in err
    doc = json.loads(out_file.read_text())
    assert doc["reports"][0]["verdict"] == "regime"


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["solve", "chromatic", "Foo(3)"], "unknown family"),
        (["solve", "chromatic", "K(3"], "line 1, column 4"),
        (["solve", "chromatic", "Mycielski(Mycielski(Mycielski(C(5))))", "--budget-nodes", "100"], "bounds"),
        (["solve", "chromatic", "Exp(4, C(5))", "--max-vertices", "100"], "guard 100"),
        (["solve", "multichromatic", "C(5)"], "needs --k"),
        (["solve", "multichromatic", "C(5)", "--k", "2", "--max-palette", "4"], "m <= 4"),
        (["build", "K(3)", "--format", "csv"], "json, dot or text"),
        (["report", "/nonexistent/file.json"], "error"),
    ],
)
def test_errors_exit_one(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error: ") and fragment in err


def test_node_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KNESERLAB_NODE_BUDGET", "100")
    code, _, err = run(capsys, "solve", "chromatic", "Mycielski(Mycielski(Mycielski(C(5))))", "--no-cache")
    assert code == 1 and "node budget" in err


def test_build_round_trip(capsys, tmp_path):
    first = tmp_path / "g.json"
    code, _, _ = run(capsys, "build", "X(C(5), Kneser(5,2))", "--out", str(first))
    assert code == 0
    text = first.read_text()
    assert text == canonical_json(graph_from_json(text)) + "\n"
    # a canonical file is itself a graph reference
    code, out, _ = run(capsys, "solve", "chromatic", str(first), "--no-cache")
    assert (code, out) == (0, "3\n")
    code, out, _ = run(capsys, "build", "Exp(2, K(3))")
    assert graph_from_json(out) == build("Exp(2,K(3))")


def test_build_dot_and_text(capsys):
    code, out, _ = run(capsys, "build", "K(2)", "--format", "dot")
    assert code == 0 and "0 -- 1;" in out
    code, out, _ = run(capsys, "build", "Exp(2,K(2))", "--format", "text")
    assert out.startswith("n=4 edges=1 loops=2 key=")


def test_verify_and_report(capsys, tmp_path):
    out_file = tmp_path / "fh.json"
    code, out, _ = run(capsys, "verify", "fractional-hedetniemi", "--max-vertices", "60", "--format", "json", "--out", str(out_file))
    assert code == 0 and out.startswith("all pass: pass=")
    doc = json.loads(out_file.read_text())
    assert doc["suite"] == "fractional-hedetniemi" and doc["summary"]["fail"] == 0
    code, out, _ = run(capsys, "report", str(out_file), "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("operation,instance")
    assert len(out.splitlines()) == doc["summary"]["pass"] + 1
    code, out, _ = run(capsys, "report", str(out_file), "--verdict", "fail")
    assert out.strip() == "summary: pass=0, fail=0, regime=0, budget=0"


def test_verify_regime_rows_do_not_fail(capsys):
    code, out, _ = run(capsys, "verify", "extraction")
    assert code == 0 and "[REGIME] extraction_exponential K(3) c=2 d=2" in out


def test_verify_budget_rows_fail(capsys):
    code, out, _ = run(capsys, "verify", "lovasz", "--budget-nodes", "1")
    assert code == 1 and "[BUDGET]" in out


def test_cache_list_and_clear(capsys):
    run(capsys, "solve", "clique", "K(3)")
    code, out, _ = run(capsys, "cache", "list")
    assert code == 0 and out.startswith("clique-")
    code, out, _ = run(capsys, "cache", "clear")
    assert out == "removed 1 entries\n"
    assert run(capsys, "cache", "list")[1] == ""


def test_console_script_entry_point(tmp_path):
    env = dict(os.environ, KNESERLAB_CACHE_DIR=str(tmp_path))
    proc = subprocess.run([sys.executable, "-m", "kneserlab.cli", "solve", "chromatic", "Kneser(7,3)"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout == "3\n"
    proc = subprocess.run([sys.executable, "-m", "kneserlab.cli", "bogus"], capture_output=True, text=True, env=env)
    assert proc.returncode == 2  # argparse usage error
