import json

import pytest

from cauchy_scope.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result(out):
    return json.loads(out)["result"]


def test_analyze_pole(capsys):
    code, out, _ = run(capsys, "analyze", "--gen", "pole:0.5", "--max-poles", "1")
    assert code == 0
    poles = result(out)["poles"]
    assert len(poles) == 1 and poles[0]["multiplicity"] == 1
    assert poles[0]["location"][0] == pytest.approx(0.5, abs=1e-10)


def test_analyze_lacunary_exit_2(capsys):
    code, out, _ = run(capsys, "analyze", "--gen", "lacunary:4", "--max-poles", "3")
    assert code == 2
    assert result(out)["verdict"] == "NO_EXTENSION_WITHIN_BUDGET"


def test_analyze_polynomial(capsys):
    code, out, _ = run(capsys, "analyze", "--gen", "poly:z^3", "--max-poles", "0")
    assert code == 0
    assert result(out)["verdict"] == "EXTENDS_HOLOMORPHICALLY"


def test_analyze_eval_and_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--gen", "zpole", "--max-poles", "2", "--eval", "0.25")
    assert code == 0
    v = result(out)["evaluations"][0]["value"]
    assert v[0] == pytest.approx(-1, abs=1e-10)
    code, out, _ = run(capsys, "analyze", "--gen", "pole:0.5,0.5", "--max-poles", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "re,im,multiplicity" and lines[1].endswith(",2")


def test_report_block(capsys):
    _, out, _ = run(capsys, "analyze", "--gen", "pole:0.5", "--max-poles", "1", "--tail-tol", "1e-6")
    rep = json.loads(out)
    assert rep["config"]["grid_size"] == 4096 and rep["config"]["window"] == 256
    assert rep["tolerances"]["tail_tol"] == 1e-6
    assert rep["tolerances"]["rank_tol"] == 1e-8
    assert set(rep["versions"]) == {"cauchy_scope", "numpy", "python"}
    assert "timestamp" in rep


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--gen", "poly:z^3"], 3),
        (["--gen", "poly:z^-1"], -1),
        (["--gen", "pole:0.5", "--P", "z-0.5"], 0),
        (["--gen", "pole:0.5", "--P", "0", "--Q", "1"], 0),
    ],
)
def test_winding(capsys, argv, expected):
    code, out, _ = run(capsys, "winding", *argv)
    assert code == 0 and result(out)["winding"] == expected


def test_winding_draws_vanishing_at_zero(capsys):
    code, out, _ = run(capsys, "winding", "--gen", "zpole", "--draws", "40", "--q-vanish-at-zero", "--seed", "2")
    d = result(out)["draws"]
    assert code == 0 and d["count"] == 40 and d["min_winding"] >= 0


def test_certify_modes(capsys):
    code, out, _ = run(capsys, "certify", "--gen", "lacunary:4", "--max-poles", "0")
    assert code == 0 and result(out)["kind"] == "FALSIFIER" and result(out)["winding"] <= -1
    code, out, _ = run(capsys, "certify", "--gen", "pole:0.5", "--max-poles", "1")
    assert code == 2 and result(out)["message"] == "no falsifier found"
    code, out, _ = run(capsys, "certify", "--gen", "poly:z^-2", "--max-poles", "1", "--mode", "cesaro")
    assert code == 0 and result(out)["winding"] == -2


def test_plot_data(capsys):
    code, out, _ = run(capsys, "plot-data", "--gen", "pole:0.5", "--P", "z-0.5", "--grid-size", "64")
    rows = out.strip().splitlines()
    assert code == 0
    assert rows[0] == "theta,re_f,im_f,arg_composite"
    assert len(rows) == 66
    assert abs(float(rows[-1].split(",")[3]) - float(rows[1].split(",")[3])) < 1e-12


def test_probe(capsys):
    code, out, _ = run(capsys, "probe", "--gen", "zpole", "--draws", "10", "--grid-size", "1024", "--window", "64")
    assert code == 0 and result(out)["experimental"] is True


def test_rerun_is_byte_identical(tmp_path, capsys):
    first = tmp_path / "a.json"
    assert main(["certify", "--gen", "lacunary:3", "--max-poles", "1", "--output", str(first)]) == 0
    second = tmp_path / "b.json"
    assert main(["rerun", str(first), "--output", str(second)]) == 0
    strip = lambda p: [l for l in p.read_text().splitlines() if '"timestamp"' not in l]  # noqa: E731
    assert strip(first) == strip(second)


def test_input_file(tmp_path, capsys):
    p = tmp_path / "r.json"
    p.write_text(json.dumps({"zeros": [], "poles": [[0.3, 0.0, 2]], "scale": [1, 0]}))
    code, out, _ = run(capsys, "analyze", "--input", str(p), "--max-poles", "2")
    assert code == 0 and result(out)["poles"][0]["multiplicity"] == 2


def test_parse_error_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("j,re,im\n0,1,0\n1,oops,0\n")
    code, _, err = run(capsys, "analyze", "--input", str(p))
    assert code == 1 and "line 3" in err


def test_errors_exit_1(capsys):
    code, _, err = run(capsys, "analyze", "--gen", "bogus:1")
    assert code == 1 and "unknown generator" in err
    code, _, err = run(capsys, "certify", "--gen", "pole:0.5", "--max-poles", "1", "--mode", "cesaro")
    assert code == 1 and "pattern" in err
