import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("GRASSTQFT_BIN", "grasstqft")


def run(*args, env=None):
    merged = dict(os.environ)
    merged.pop("GRASSTQFT_CACHE", None)
    if env:
        merged.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=merged, timeout=600)


def value(*args):
    p = run(*args)
    assert p.returncode == 0, p.stderr
    return p.stdout.strip()


def test_verlinde_values():
    assert value("verlinde", "--r", "2", "--k", "1", "--g", "1") == "3"
    assert value("verlinde", "--r", "1", "--k", "2", "--g", "3") == "27"
    assert value("verlinde", "--r", "2", "--k", "1", "--g", "2") == "9"


def test_element_values():
    assert value("element", "--r", "1", "--k", "2", "--in", "[[1]]", "--out", "[]", "--g", "1") == "0"
    assert value("element", "--r", "2", "--k", "1", "--in", "[]", "--out", "[]", "--g", "2") == "9"
    out = json.loads(value("element", "--r", "2", "--k", "1", "--g", "2", "--explain", "--format", "json"))
    assert out["d"] == 4
    assert out["value"] == "9"


def test_empty_multipartition_differs_from_one_empty_label():
    closed = value("element", "--r", "2", "--k", "1", "--g", "1", "--in", "[]")
    one_label = value("element", "--r", "2", "--k", "1", "--g", "1", "--in", "[[]]")
    assert closed == "3"
    # A single unlabeled puncture still counts every basis element once: sum over rho of F(0)_{rho,empty,rho*}.
    assert one_label == "3"
    out = json.loads(value("element", "--r", "2", "--k", "1", "--g", "1", "--in", "[[]]", "--format", "json"))
    assert out["params"]["in"] == [[]]


def test_vi_and_open():
    assert value("vi", "--r", "1", "--n", "3", "--g", "0", "--d", "1", "--poly", "a1^5") == "1"
    assert value("vi", "--r", "2", "--n", "4", "--g", "0", "--d", "0", "--poly", "s[2,2]") == "1"
    assert value("open", "--r", "2", "--k", "2", "--g", "1", "--d", "1", "--parts", "[[1,1]]") == value(
        "parabolic", "--r", "2", "--k", "2", "--g", "1", "--d", "1", "--parts", "[[1,1]]"
    )


def test_eval_handle():
    composed = value("eval", "--r", "1", "--k", "1", "--cobordism", "W(0;1->2) . W(0;2->1)", "--format", "json")
    direct = value("eval", "--r", "1", "--k", "1", "--cobordism", "W(1;1->1)", "--format", "json")
    assert json.loads(composed)["value"] == json.loads(direct)["value"] == [["2", "0"], ["0", "2"]]
    csv = subprocess.run([BIN, "eval", "--r", "1", "--k", "1", "--cobordism", "W(1;1->1)", "--format", "csv"],
                         capture_output=True).stdout
    assert csv == b'"2","0"\r\n"0","2"\r\n'


def test_eval_from_file(tmp_path: Path):
    f = tmp_path / "expr.txt"
    f.write_text("W(0;0->1) * id . W(0;2->1)\n")
    assert value("eval", "--r", "2", "--k", "1", "--file", str(f)).split() == ["1", "0", "0", "0", "1", "0", "0", "0", "1"]


@pytest.mark.parametrize("suite", ["frobenius", "gluing", "degeneration", "levelrank", "appendix", "backends"])
def test_verify_suites_pass(suite):
    p = run("verify", "--suite", suite, "--r", "2", "--k", "1", "--gmax", "2")
    assert p.returncode == 0, p.stderr
    assert "checks passed" in p.stdout


def test_exit_codes():
    assert run("verlinde", "--r", "1").returncode == 2
    assert run("verlinde", "--r", "1", "--k", "1", "--g", "1", "--backend", "float", "--precision", "32").returncode == 2
    assert run("verlinde", "--r", "1", "--k", "1", "--g", "1", "--workers", "0").returncode == 2
    assert run("element", "--r", "1", "--k", "2", "--in", "[[3]]", "--g", "1").returncode == 2
    assert run("element", "--r", "1", "--k", "2", "--in", "[[1]", "--g", "1").returncode == 2
    p = run("eval", "--r", "1", "--k", "1", "--cobordism", "W(1;2->")
    assert p.returncode == 2
    assert "offset 7" in p.stderr
    assert run("eval", "--r", "1", "--k", "1", "--cobordism", "W(0;2->1) . W(0;2->1)").returncode == 2
    assert run("vi", "--r", "1", "--n", "3", "--g", "0", "--d", "1", "--poly", "a1^4").returncode == 2
    assert run("verify", "--suite", "nosuch", "--r", "1", "--k", "1").returncode == 2
    assert run("verify", "--suite", "levelrank", "--r", "1", "--k", "0").returncode == 2


def test_float_backend_rounds_to_exact():
    for args in (
        ["verlinde", "--r", "3", "--k", "2", "--g", "3"],
        ["element", "--r", "2", "--k", "2", "--g", "1", "--in", "[[2,1],[1]]", "--out", "[[1]]"],
        ["parabolic", "--r", "2", "--k", "2", "--g", "1", "--d", "1", "--parts", "[[1,1]]"],
    ):
        exact = json.loads(value(*args, "--format", "json"))
        approx = json.loads(value(*args, "--format", "json", "--backend", "float", "--precision", "128"))
        assert approx["value"] == exact["value"]
        assert approx["backend"] == "float"


def test_json_is_deterministic_across_workers():
    outs = []
    for workers in ("1", "3", "8"):
        j = json.loads(value("verlinde", "--r", "3", "--k", "3", "--g", "3", "--format", "json", "--workers", workers))
        j.pop("wall_ms")
        outs.append(json.dumps(j, sort_keys=True))
    assert len(set(outs)) == 1
    a = json.loads(value("verify", "--suite", "appendix", "--r", "2", "--k", "2", "--gmax", "1", "--format", "json", "--workers", "1"))
    b = json.loads(value("verify", "--suite", "appendix", "--r", "2", "--k", "2", "--gmax", "1", "--format", "json", "--workers", "4"))
    a.pop("wall_ms")
    b.pop("wall_ms")
    assert a == b


def test_fusion_table_cache(tmp_path: Path):
    out = tmp_path / "table.json"
    p = run("fusion-table", "--r", "2", "--k", "1", "--out", str(out), "--cache-dir", str(tmp_path / "cache"))
    assert p.returncode == 0, p.stderr
    assert "cache rebuilt" in p.stderr
    table = json.loads(out.read_text())
    cached = tmp_path / "cache" / "fusion-r2-k1.json"
    assert json.loads(cached.read_text()) == table
    p = run("fusion-table", "--r", "2", "--k", "1", "--cache-dir", str(tmp_path / "cache"))
    assert "cache hit" in p.stderr
    cached.write_text(cached.read_text().replace('"1"', '"2"', 1))
    p = run("fusion-table", "--r", "2", "--k", "1", "--cache-dir", str(tmp_path / "cache"))
    assert "cache rebuilt" in p.stderr
    # The environment variable takes precedence over the flag.
    env_dir = tmp_path / "env"
    p = run("fusion-table", "--r", "1", "--k", "2", "--cache-dir", str(tmp_path / "cache"), env={"GRASSTQFT_CACHE": str(env_dir)})
    assert p.returncode == 0
    assert (env_dir / "fusion-r1-k2.json").exists()
    assert run("fusion-table", "--r", "1", "--k", "1", "--backend", "float").returncode == 2
