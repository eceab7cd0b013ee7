from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qstab.cli import dumps, main, parse_object
from qstab.quiver import preset


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv, capsys)
    return code, json.loads(out)


def test_cartan_at_one(capsys):
    code, doc = run_json(["cartan", "--quiver", "A2", "--at-q", "1"], capsys)
    assert code == 0
    assert doc["result"] == [[2, -1], [-1, 2]]
    assert doc["config"]["quiver"] == "A2" and doc["config"]["seed"] == 0


def test_cartan_symbolic(capsys):
    _, doc = run_json(["cartan", "--quiver", "A2"], capsys)
    assert doc["result"] == [["1 + q", "-1"], ["-q", "1 + q"]]


def test_hecke_check_e8(capsys):
    code, doc = run_json(["hecke-check", "--quiver", "E8"], capsys)
    assert code == 0 and doc["result"]["all_pass"] is True


def test_hecke_check_kronecker(capsys):
    _, doc = run_json(["hecke-check", "--quiver", "Kronecker"], capsys)
    assert doc["result"]["braid_relations"][0]["status"] == "no relation asserted"
    assert doc["result"]["all_pass"] is True


@pytest.mark.parametrize("s,expected", [("1.0", False), ("3.0", True)])
def test_induce(capsys, s, expected):
    code, doc = run_json(["induce", "--quiver", "A2", "--charge", "1@0.8333,1@0.1667", "--s", s], capsys)
    assert code == 0
    res = doc["result"]
    assert res["open"] is expected
    assert {"gldim", "open", "additive", "closed", "L", "N0", "witnesses"} <= set(res)


def test_gldim_and_roots(capsys):
    _, doc = run_json(["gldim", "--quiver", "A2", "--charge", "1@5/6,1@1/6"], capsys)
    assert doc["result"]["gldim_exact"] == "1/3"
    assert len(doc["result"]["semistables"]) == 3
    _, doc = run_json(["roots", "--quiver", "E8"], capsys)
    assert doc["result"]["count"] == 120 and doc["result"]["coxeter_number"] == 30


def test_twist_and_reduce(capsys):
    _, doc = run_json(["twist", "--quiver", "A2", "--word", "1", "--class", "0,1"], capsys)
    assert doc["result"]["image"] == ["1", "1"]
    _, doc = run_json(["reduce", "--quiver", "A2", "--class", "q,0", "--N", "3"], capsys)
    assert doc["result"]["reduced_image"] == [-1, 0]


def test_hn_commands(capsys):
    _, doc = run_json(["hn", "--quiver", "A2", "--charge", "1@0.1,1@0.9", "--object", "M[1,2]"], capsys)
    assert [f["class"] for f in doc["result"]["factors"]] == [[0, 1], [1, 0]]
    _, doc = run_json(["hn", "--quiver", "A2", "--charge", "1@5/6,1@1/6", "--object", "S1[0+1X]", "--s", "3"], capsys)
    assert doc["result"]["factors"][0]["phase"] == pytest.approx(3 + 5 / 6)
    code, doc = run_json(["hn", "--quiver", "A2", "--charge", "1@1/2,1@1/2", "--object", "S1", "--s", "2"], capsys)
    assert code == 1 and "error" in doc


def test_parse_object_grammar():
    Q = preset("A3")
    items = parse_object(Q, "S1 + M[1,2][1] + M[2,3][-1+2X] + S3[0-X]")
    assert [(M.name, m, l) for M, m, l in items] == [("S1", 0, 0), ("M[1,2]", 1, 0), ("M[2,3]", -1, 2), ("S3", 0, -1)]


def test_a2_commands(capsys):
    _, doc = run_json(["a2", "gepner", "--s", "3"], capsys)
    assert abs(doc["result"]["z"]["re"] - 2 / 3) < 1e-12
    _, doc = run_json(["a2", "domain", "--z", "0.6+0.0i", "--s", "3"], capsys)
    assert doc["result"]["membership"] == "interior"
    code, out, _ = run(["a2", "domain-sample", "--s", "3", "--grid", "4"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# config: ") and lines[1] == "x,y,membership"
    assert len(lines) == 2 + 4 * 5


def test_ckz_commands(capsys):
    code, doc = run_json(["ckz", "--type", "A3", "--nu", "0.25", "--tol", "1e-10"], capsys)
    assert code == 0 and max(doc["result"]["hecke_residuals"]) < 1e-6
    code, out, _ = run(["ckz", "sweep", "--type", "A2", "--nu-grid", "0:0.1:0.05"], capsys)
    lines = out.splitlines()
    assert lines[1] == "nu,max_hecke_residual,max_hecke_residual_inverse_q,max_braid_residual"
    assert len(lines) == 5


def test_byte_identical_reruns(capsys):
    argv = ["induce", "--quiver", "A2", "--charge", "1@0.8333,1@0.1667", "--s", "3.0"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_float_format_17_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps({"a": [1.0, 2]}) == '{\n  "a": [1.0, 2]\n}'
    assert json.loads(dumps({"x": 1 / 3}))["x"] == 1 / 3


def test_exit_codes(capsys):
    assert run(["bogus"], capsys)[0] == 2
    assert run(["cartan", "--quiver", "A2", "--nope"], capsys)[0] == 2
    assert run(["roots", "--quiver", "Kronecker"], capsys)[0] == 1
    assert run(["gldim", "--quiver", "A2", "--charge", "1@0.5"], capsys)[0] == 1
    assert run(["cartan", "--quiver", "A2", "--format", "csv"], capsys)[0] == 2


def test_help_documents_csv(capsys):
    code, out, _ = run(["--help"], capsys)
    assert code == 0 and "x, y, membership" in out and "max_braid_residual" in out


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "qstab.cli", "cartan", "--quiver", "A1", "--at-q", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"] == [[2]]
