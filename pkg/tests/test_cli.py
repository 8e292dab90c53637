import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from slicereg.cli import build_parser, main, run, to_csv
from slicereg.jsonio import ERROR_SCHEMA, REPORT_SCHEMA, SCHEMA_VERSION

QQ_IJ = {"coeffs": [[0, 0, 0, 1], [0, -1, -1, 0], [1, 0, 0, 0]]}
Q2_PLUS_1 = {"coeffs": [[1, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]}


def opts(*extra):
    return build_parser().parse_args(["--command", "eval", *extra])


def call(command, payload, *extra):
    report, code = run(command, payload, opts(*extra))
    jsonschema.validate(report, REPORT_SCHEMA if code == 0 else ERROR_SCHEMA)
    return report, code


def cli(argv, payload, monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(payload)))
    code = main(argv)
    return capsys.readouterr().out, code


def test_zeros_example():
    rep, code = call("zeros", {**QQ_IJ, "contour": {"kind": "circle", "center": [0, 0], "radius": 2}})
    assert code == 0
    (rec,) = rep["result"]["zeros"]
    assert rec["kind"] == "isolated" and rec["order"] == 2
    assert rec["stem"] == pytest.approx([0, 1], abs=1e-10)
    assert rec["unit"] == pytest.approx([1, 0, 0], abs=1e-10)


def test_count_example():
    c = {"kind": "rectangle", "corner_min": [-1, 0.5], "corner_max": [1, 1.5]}
    rep, code = call("count", {"f": Q2_PLUS_1, "contour": c})
    assert code == 0
    res = rep["result"]
    assert res["tallies"]["m1"] == 1 and res["winding"] == 2 and res["consistent"]


def test_eval_example():
    rep, code = call("eval", {**Q2_PLUS_1, "q": [0, 1, 0, 0], "z": [0, 1]})
    assert code == 0
    assert rep["result"]["value"] == [0, 0, 0, 0]
    assert rep["result"]["stem"] == [[0, 0]] * 4


def test_other_commands_run():
    f = {"coeffs": [[0.5, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]}
    circle = {"kind": "circle", "center": [0, 0], "radius": 3}
    assert call("star", {"f": QQ_IJ, "g": Q2_PLUS_1})[1] == 0
    sym, _ = call("symmetrize", {"f": Q2_PLUS_1})
    assert sym["result"]["coeffs"] == [1, 0, 2, 0, 1]
    assert call("rouche", {"f": f, "g": Q2_PLUS_1, "contour": circle})[1] == 0
    jen, _ = call("jensen", {"f": Q2_PLUS_1, "R": 2})
    assert jen["result"]["lhs"] == pytest.approx(2 * math.log(2), abs=1e-8)
    cau, _ = call("cauchy", {"f": f, "unit": [0, 1, 0], "radius": 2, "q": [0.3, 0.2, 0, 0.4]})
    assert cau["result"]["error"] < 1e-10
    ber, _ = call("bergman", {"f": f, "unit": [0, 0, 1], "q": [[0.1, 0.2, 0, 0], [0, 0, 0.3, 0.1]], "nodes": 32})
    assert ber["result"]["max_error"] < 1e-8
    nrm, _ = call("norms", {"f": f, "x": 0.2, "y": 0.5, "samples": 1000})
    assert nrm["result"]["sandwich"]["holds"]
    assert nrm["params"]["samples"] == 1000
    cl, _ = call("clifford", {"a": [0, 1, 0, 0, 0, 0, 0, 0], "b": [0, 0, 1, 0, 0, 0, 0, 0]})
    assert cl["result"]["product"] == [0, 0, 0, 0, 1, 0, 0, 0] and cl["result"]["a_in_S"]
    one = [1, 0, 0, 0, 0, 0, 0, 0]
    cl, _ = call("clifford", {"coeffs": [one, [0] * 8, one], "contour": circle})
    assert cl["result"]["winding_upper_bound"] == 4


def test_rational_payload():
    rep, code = call("count", {"num": [[0, 0, 0, 0], [1, 0, 0, 0]], "den": [1, 0, 1], "contour": {"kind": "circle", "center": [0, 0], "radius": 2}})
    assert code == 0
    assert rep["result"]["tallies"]["p0"] == 2 and rep["result"]["winding"] == -2


def test_contract_violation_exit_2():
    rep, code = call("count", {"f": Q2_PLUS_1, "contour": {"kind": "circle", "center": [0, 0], "radius": 1}})
    assert code == 2
    assert rep["error"]["kind"] == "BoundaryZeroError"


@pytest.mark.parametrize(
    "command,payload",
    [
        ("eval", {"coeffs": [[1, 0, 0]], "q": [0, 0, 0, 0]}),
        ("eval", {"coeffs": [[1, 0, 0, 0]]}),
        ("count", {"coeffs": [[1, 0, 0, 0]]}),
        ("cauchy", {"coeffs": [[1, 0, 0, 0]], "unit": [2, 0, 0], "radius": 1, "q": [0, 0, 0, 0]}),
        ("jensen", {"coeffs": [[1, 0, 0, 0]], "R": -1}),
        ("clifford", {"a": [0] * 7}),
        ("eval", [1, 2, 3]),
    ],
)
def test_malformed_exit_1(command, payload):
    rep, code = call(command, payload)
    assert code == 1 and rep["schema_version"] == SCHEMA_VERSION


def test_main_json_and_determinism(monkeypatch, capsys):
    payload = {"f": {"coeffs": [[0.5, 0, 1, 0], [0, 1, 0, 0]]}, "x": 0.1, "y": 0.7, "samples": 5000}
    out1, code = cli(["--command", "norms", "--seed", "3"], payload, monkeypatch, capsys)
    out2, _ = cli(["--command", "norms", "--seed", "3"], payload, monkeypatch, capsys)
    assert code == 0 and out1 == out2
    rep = json.loads(out1)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["params"]["seed"] == 3
    out3, _ = cli(["--command", "norms", "--seed", "4"], payload, monkeypatch, capsys)
    assert out3 != out1


def test_main_csv_and_input_file(tmp_path, monkeypatch, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({**Q2_PLUS_1, "q": [0, 1, 0, 0]}))
    assert main(["--command", "eval", "--input", str(path), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "key,value"
    assert "result.value.0,0.0" in lines and "command,eval" in lines
    assert to_csv({"a": {"b": [1, 2]}}) == "key,value\na.b.0,1\na.b.1,2\n"


def test_main_bad_inputs(tmp_path, monkeypatch, capsys):
    assert main(["--command", "eval", "--input", str(tmp_path / "missing.json")]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["kind"] == "FileNotFoundError"
    monkeypatch.setattr(sys, "stdin", io.StringIO("{not json"))
    assert main(["--command", "eval"]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["kind"] == "JSONDecodeError"
    out, code = cli(["--command", "jensen", "--nodes", "4"], {**Q2_PLUS_1, "R": 2}, monkeypatch, capsys)
    assert code == 1 and json.loads(out)["error"]["kind"] == "ValueError"


def test_reports_round_trip_under_schema():
    rep, _ = call("zeros", QQ_IJ)
    again = json.loads(json.dumps(rep))
    jsonschema.validate(again, REPORT_SCHEMA)
    assert again == rep


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "slicereg", "--command", "eval"],
        input=json.dumps({**Q2_PLUS_1, "q": [0, 1, 0, 0]}),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == [0, 0, 0, 0]
