import json
import subprocess
import sys

import pytest

from hered import __version__
from hered.cli import EXAMPLES, check_example, example_manifest, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_resolution_json(capsys):
    code, rep = run_json(capsys, "resolution", "examples/a3j2.quiver")
    assert code == 0
    assert rep["tool"] == "hered" and rep["version"] == __version__ and rep["command"] == "resolution"
    assert rep["results"]["gldim"] == 2 and rep["results"]["ap_sizes"] == [3, 2, 1]
    assert len(rep["input_sha256"]) == 64


def test_resolution_full_self_test(capsys):
    code, rep = run_json(capsys, "resolution", "examples/star44.quiver", "--full")
    assert code == 0
    assert rep["results"]["self_test"]["exact"]
    assert rep["results"]["differentials"]["1"]


def test_ext_on_a3j2(capsys):
    code, rep = run_json(capsys, "ext", "examples/a3j2.quiver", "--up-to", "2")
    assert code == 0
    res = rep["results"]
    assert res["ext_dims"][1] == 0 and res["battery"] == [] and res["certified_vanishing"]


def test_ext_battery_reports_obstruction(capsys):
    code, rep = run_json(capsys, "ext", "a4-nonlinear")
    assert code == 0 and rep["results"]["battery"]
    code, rep = run_json(capsys, "ext", "a4-nonlinear", "--no-battery")
    assert rep["results"]["battery"] == []


def test_nrf(capsys):
    code, rep = run_json(capsys, "nrf", "star44", "--n", "2")
    assert code == 0 and rep["results"]["status"] == "n-RF"
    code, out, _ = run(capsys, "nrf", "a3j2", "--n", "2")
    assert "verdict: n-RF" in out


def test_nrf_wrong_n_is_an_input_error(capsys):
    code, _, err = run(capsys, "nrf", "a3j2", "--n", "3")
    assert code == 1 and "global dimension" in err


def test_preprojective_routes(capsys):
    code, rep = run_json(capsys, "preprojective", "a3j2", "--check", "selfinj")
    assert rep["results"]["dimension"] == 6 and rep["results"]["selfinjectivity"]["selfinjective"]
    code, rep = run_json(capsys, "preprojective", "a3j2", "--koszul", "--check", "selfinj")
    res = rep["results"]
    assert res["dimension"] == 6 and res["selfinjective"] and res["agrees_with_qp"]
    code, rep = run_json(capsys, "preprojective", "two-triangles.qp", "--check", "cy", "--cap", "6")
    assert code == 0 and "status" in rep["results"]["cy"]


def test_planar(capsys):
    code, out, _ = run(capsys, "planar", "examples/star96-pi.qp")
    assert code == 0 and "verdict: non-planar" in out
    code, rep = run_json(capsys, "planar", "star44-pi.qp")
    assert rep["results"]["verdict"] == "planar QP" and rep["results"]["rotation"]


def test_verify_truncated(capsys, tmp_path):
    report = tmp_path / "out.json"
    code, out, _ = run(capsys, "verify", "truncated", "--m-max", "6", "--l-max", "4",
                       "--library-vertices", "4", "--report", str(report))
    assert code == 0 and out.rstrip().endswith("agreement")
    saved = json.loads(report.read_text())
    assert saved["agreement"] and len(saved["instances"]) == 15


@pytest.mark.parametrize("theorem,extra", [
    ("planar-n2", ["--max-total", "6"]),
    ("higher", ["--n-max", "3"]),
    ("star96", []),
    ("stars", ["--vertices", "4", "--arrows", "4"]),
])
def test_verify_agreement(capsys, theorem, extra):
    code, rep = run_json(capsys, "verify", theorem, *extra)
    assert code == 0 and rep["results"]["agreement"]


def test_examples(capsys):
    code, rep = run_json(capsys, "examples")
    assert rep["results"]["examples"] == sorted(EXAMPLES)
    code, out, _ = run(capsys, "examples", "star96")
    assert out.count("relation") >= 18
    code, out, _ = run(capsys, "examples", "--truncated", "4", "2")
    assert "vertices" in out and out.count("relation") == 2


def test_manifest_covers_every_example():
    assert set(example_manifest()) == set(EXAMPLES)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_bundled_example_matches_manifest(name):
    row = check_example(name)
    assert row["ok"], row


def test_examples_check(capsys):
    code, rep = run_json(capsys, "examples", "--check")
    assert code == 0 and rep["results"]["agreement"]


def test_json_is_byte_stable(capsys):
    argv = ["ext", "star44", "--up-to", "2", "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_field_flag(capsys):
    code, rep = run_json(capsys, "ext", "a3j2", "--field", "F7")
    assert code == 0 and rep["results"]["ext_dims"][1] == 0
    code, _, _ = run(capsys, "ext", "a3j2", "--field", "F6")
    assert code == 2


@pytest.mark.parametrize("argv,code", [
    ([], 2),
    (["frobnicate"], 2),
    (["nrf", "a3j2"], 2),
    (["ext", "a3j2", "--threads", "0"], 2),
    (["ext", "/nonexistent/file.quiver"], 1),
    (["examples", "nope"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


def test_bad_input_file(capsys, tmp_path):
    f = tmp_path / "bad.quiver"
    f.write_text("vertices 1 2\narrow a: 1 -> 3\n")
    code, _, err = run(capsys, "resolution", str(f))
    assert code == 1 and err.startswith("error:")


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "hered.cli", "planar", "star96-pi", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["verdict"] == "non-planar"
