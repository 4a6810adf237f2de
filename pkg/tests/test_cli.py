import io
import json
import subprocess
import sys

import pytest

from expmat.cli import run
from expmat.families import a11, a12, j3
from expmat.field import gf
from expmat.ppoly import PPoly

F2, F3 = gf(2), gf(3)


def pp(ctx, *cs):
    return PPoly(ctx, cs)


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, text


def report(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)
    return _write


B_Q = {"field": "QQ", "entries": [[1, ["0", "1"]], [0, 1]]}


def test_verify_valid(write):
    code, rep = report("verify", write("b.json", B_Q))
    assert code == 0 and rep["valid"] is True and rep["schema"] == "expmat-report/1"


def test_verify_invalid_reports_residual(write):
    doc = {"field": "0", "entries": [[1, ["0", "0", "1"]], [0, 1]]}
    code, rep = report("verify", write("bad.json", doc))
    assert code == 1
    assert rep["valid"] is False and rep["entry"] == [1, 2] and rep["residual"] == "2*T*T'"


def test_field_flag_fills_in_missing_field(write):
    doc = {"entries": [[1, ["0", "0", "1"]], [0, 1]]}
    path = write("nofield.json", doc)
    assert report("--field", "2", "verify", path)[0] == 0
    assert report("verify", path, "--field", "2")[0] == 0
    code, rep = report("verify", path)
    assert code == 2 and rep["error"]["type"] == "InputError"
    code, rep = report("--field", "3", "verify", write("f.json", {**doc, "field": "2"}))
    assert code == 2


def test_classify_j3_and_witness_round_trip(write, tmp_path):
    doc = j3(pp(F3, 1), pp(F3, 0, 1)).to_json()
    code, rep = report("classify", write("j.json", doc))
    assert code == 0
    assert rep["class"]["variant"] == "Line" and rep["verified"] is True
    rpath = write("report.json", rep)
    code, chk = report("witness", rpath)
    assert code == 0 and chk["verified"] is True and chk["chains"][0]["steps"] == len(rep["witness"]["steps"])


def test_tampered_witness_is_rejected(write):
    doc = j3(pp(F3, 1), pp(F3, 0, 1)).to_json()
    _, rep = report("classify", write("j.json", doc))
    w = rep["witness"]
    bir = next(s for s in w["steps"] if s["kind"] == "birational")
    bir["sigma"], bir["sigma_inverse"] = bir["sigma_inverse"], bir["sigma"]
    code, chk = report("witness", write("w.json", w))
    assert code == 1 and chk["verified"] is False


def test_equiv_cross_family_pair(write):
    a = write("a.json", a11(pp(F2, 0, 1)).to_json())
    b = write("b.json", a12(pp(F2, 1), pp(F2, 0, 1)).to_json())
    code, rep = report("equiv", a, b)
    assert code == 1 and rep["equivalent"] is False


def test_equiv_positive_carries_witness(write):
    a = write("a.json", {"field": "2", "entries": [[1, 0, ["0", "0", "0", "0", "1"]],
                                                    [0, 1, ["0", "1"]], [0, 0, 1]]})
    b = write("b.json", {"field": "2", "entries": [[1, 0, ["0", "0", "0", "0", "1"]],
                                                    [0, 1, ["0", "1", "1"]], [0, 0, 1]]})
    code, rep = report("equiv", a, b)
    assert code == 0 and rep["equivalent"] is True and rep["verified"] is True
    assert report("witness", write("e.json", rep))[0] == 0


def test_exp_log_action(write):
    nil = write("n.json", {"field": "QQ", "entries": [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]})
    code, rep = report("exp", nil)
    assert code == 0
    assert rep["matrix"]["entries"][0][2] == ["0", "0", "1/2"]
    m = write("m.json", rep["matrix"])
    code, back = report("log", m)
    assert code == 0 and back["nilpotent"]["entries"][0][1] == "1"
    code, act = report("action", write("b.json", B_Q))
    assert code == 0 and act["action"]["vars"] == ["x0", "x1", "T"]


def test_enumerate_streams_json_lines():
    code, text = call("enumerate", "--field", "2", "--n", "2", "--degree-bound", "1")
    lines = text.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert all(json.loads(l)["family"] == "Upper2" for l in lines)
    code, text = call("enumerate", "--field", "2", "--n", "3", "--family", "A12", "--degree-bound", "1")
    assert len(text.strip().splitlines()) == 16
    code, rep = report("enumerate", "--n", "2")
    assert code == 2


def test_bad_inputs(write, tmp_path):
    assert report("verify", str(tmp_path / "missing.json"))[0] == 2
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert report("verify", str(p))[0] == 2
    assert report("frobnicate", "x")[0] == 2
    assert report("verify", write("r.json", {"field": "2", "entries": [[1, 0]]}))[0] == 2


def test_non_exponential_classify_is_negative(write):
    code, rep = report("classify", write("bad.json", {"field": "QQ", "entries": [[1, ["0", "0", "1"]], [0, 1]]}))
    assert code == 1 and rep["error"]["type"] == "NotExponential"


def test_output_is_byte_stable(write):
    path = write("j.json", j3(pp(F3, 1), pp(F3, 0, 1)).to_json())
    assert call("classify", path) == call("classify", path)


def test_console_script_runs(write):
    path = write("b.json", B_Q)
    proc = subprocess.run([sys.executable, "-m", "expmat.cli", "verify", path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["valid"] is True
