import csv
import io
import json
import math
import subprocess
import sys

import pytest

from helix_lab import cli, energy
from helix_lab.quadrature import TailModel


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def data_rows(text, table=None):
    """Rows of the CSV body (the first table unless ``table`` is named)."""
    lines = text.splitlines()
    if table is not None:
        start = lines.index(f"# table: {table}") + 1
        lines = lines[start:]
    body = []
    for ln in lines:
        if ln.startswith("#"):
            continue
        if not ln.strip():
            if body:
                break
            continue
        body.append(ln)
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_eval_M_row(capsys):
    code, out, _ = run(capsys, "eval", "--functional", "M", "--B", "0.4", "--omega", "10")
    assert code == 0
    assert out.startswith("# helix-lab ")
    rows = data_rows(out)
    assert len(rows) == 1
    assert list(rows[0]) == ["functional", "A", "B", "omega", "value", "error_bound", "converged"]
    assert abs(float(rows[0]["value"]) - 1.1501899516297023) < 1e-10
    assert rows[0]["converged"] == "true"
    # 17 significant digits round-trip exactly
    assert len(rows[0]["value"].replace("-", "").replace(".", "").lstrip("0")) == 17


def test_eval_screwsum_zero(capsys):
    code, out, _ = run(capsys, "eval", "--functional", "screwsum", "--A", "-0.4", "--B", "0.4", "--omega", "7")
    assert code == 0
    assert abs(float(data_rows(out)[0]["value"])) < 1e-14


def test_eval_zero_radius_exit_2(capsys):
    code, _, err = run(capsys, "eval", "--functional", "M", "--B", "0", "--omega", "5")
    assert code == 2
    assert "B != 0" in err


def test_eval_coincident_exit_2(capsys):
    code, _, err = run(capsys, "eval", "--functional", "screwdiff", "--A", "0.3", "--B", "0.3", "--omega", "5")
    assert code == 2 and "A != B" in err


def test_eval_gradient_rows(capsys):
    code, out, _ = run(capsys, "eval", "--functional", "gradient,screwdiff", "--A", "-0.3", "--B", "0.6",
                       "--omega", "4")
    rows = {r["functional"]: r for r in data_rows(out)}
    assert set(rows) == {"g1_x", "g1_y", "g1_z", "g2_x", "g2_y", "g2_z", "screwdiff"}
    half_diff = (float(rows["g2_x"]["value"]) - float(rows["g1_x"]["value"])) / 2
    assert abs(half_diff - float(rows["screwdiff"]["value"])) < 1e-9


def test_determinism(capsys):
    args = ("eval", "--functional", "M,screwdiff", "--A", "-0.3", "--B", "0.3", "--omega", "5")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    strip = lambda t: [ln for ln in t.splitlines() if not ln.startswith("# timestamp")]
    assert strip(a) == strip(b)


def test_json_envelope(capsys):
    code, out, _ = run(capsys, "--format", "json", "eval", "--B", "0.5", "--omega", "3")
    doc = json.loads(out)
    assert code == 0
    assert {"version", "config", "timestamp", "rows", "columns"} <= set(doc)
    assert doc["config"]["B"] == 0.5 and doc["command"] == "eval"
    assert doc["rows"][0]["functional"] == "M"
    # flag accepted after the subcommand as well
    _, out2, _ = run(capsys, "eval", "--B", "0.5", "--omega", "3", "--format", "json")
    assert json.loads(out2)["rows"] == doc["rows"]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "m.csv"
    code, out, _ = run(capsys, "eval", "--B", "0.5", "--omega", "3", "--out", str(path))
    assert code == 0 and out == ""
    assert data_rows(path.read_text())[0]["functional"] == "M"


def test_threads_validation(capsys, monkeypatch):
    assert run(capsys, "--threads", "0", "eval", "--B", "0.5", "--omega", "3")[0] == 2
    monkeypatch.setenv("HELIX_LAB_THREADS", "lots")
    assert run(capsys, "sweep", "--B", "0.5", "--omega", "3")[0] == 2
    monkeypatch.setenv("HELIX_LAB_THREADS", "2")
    assert run(capsys, "sweep", "--B", "0.5,0.6", "--omega", "3,4")[0] == 0


def test_sweep_empty_grid(capsys):
    assert run(capsys, "sweep", "--B", "", "--omega", "5")[0] == 2
    assert run(capsys, "sweep", "--B", "0.3", "--omega", "")[0] == 2


def test_sweep_threads_do_not_change_rows(capsys):
    args = ("sweep", "--B", "0.3,0.7", "--omega", "5,10")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, "--threads", "3", *args)
    assert data_rows(a) == data_rows(b)


@pytest.fixture(scope="module")
def trend_sweep():
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = cli.main(["sweep", "--B", "0.3,0.5,0.7", "--omega", "5,10,20,40,80", "--trend-check"])
    finally:
        sys.stdout = old
    return code, data_rows(buf.getvalue())


def _verdicts(rows):
    return {float(r["B"]): r["verdict"] for r in rows}


def test_sweep_trend_columns(trend_sweep):
    code, rows = trend_sweep
    assert code == 0
    assert list(rows[0]) == ["tag", "B", "omega", "value", "error_bound", "verdict"]
    assert len(rows) == 15
    assert _verdicts(rows)[0.7] == "increasing"


@pytest.mark.xfail(strict=True, reason="B = 0.3 is not monotone from omega = 5 and |M(., 0.5)| grows; see README")
def test_sweep_trend_trichotomy(trend_sweep):
    _, rows = trend_sweep
    assert _verdicts(rows) == {0.3: "decreasing", 0.5: "shrinking", 0.7: "increasing"}


def test_sweep_g_profile(capsys):
    code, out, _ = run(capsys, "--tol", "1e-6", "sweep", "--functional", "g", "--alpha", "1", "--beta", "1",
                       "--B-grid", "8", "--omega", "40")
    rows = data_rows(out)
    assert code == 0 and len(rows) == 8
    vals = [float(r["value"]) for r in rows]
    assert vals[0] < 0 < vals[-1]
    assert all(r["tag"] == "g" for r in rows)


def test_poles_count_check(capsys):
    code, out, _ = run(capsys, "poles", "--family", "minus", "--n", "1..6", "--omega", "20", "--B", "0.5",
                       "--count-check")
    rows = data_rows(out)
    assert code == 0 and len(rows) == 6
    assert all(r["count"] == "1" for r in rows)
    assert all(float(r["residual"]) < 1e-12 for r in rows)
    assert list(rows[0])[:11] == ["family", "n", "omega", "B", "seed_re", "seed_im", "refined_re",
                                  "refined_im", "residual", "residue_re", "residue_im"]


def test_poles_plus_zero(capsys):
    code, out, _ = run(capsys, "poles", "--family", "plus", "--n", "0", "--omega", "100", "--B", "0.5")
    rows = data_rows(out)
    assert [r["n"] for r in rows] == ["+0", "-0"]
    assert abs(float(rows[0]["refined_re"]) - math.pi / 2) < 1e-3


def test_poles_ratio_sweep(capsys):
    code, out, _ = run(capsys, "poles", "--ratio-sweep", "10,100,1000", "--family", "minus", "--n", "1",
                       "--B", "0.4")
    d = [float(r["deviation"]) for r in data_rows(out)]
    assert code == 0 and d[0] > d[1] > d[2]


def test_poles_branches(capsys):
    code, out, _ = run(capsys, "poles", "--family", "plus", "--n", "0,1", "--omega", "20", "--B", "0.5",
                       "--branches", "--samples", "5")
    assert code == 0
    b = data_rows(out, "branches")
    assert list(b[0]) == ["pole", "curve", "x", "y"]
    assert {r["pole"] for r in b} == {"plus:+0", "plus:-0", "plus:1"}
    assert all(float(r["x"]) <= 0 for r in b if r["pole"] == "plus:-0")


def test_poles_needs_omega(capsys):
    assert run(capsys, "poles", "--B", "0.5")[0] == 2


def test_contour_small_radii(capsys):
    code, out, _ = run(capsys, "contour", "--R", "auto", "--R-target", "2,4", "--omega", "10", "--B", "0.4")
    rows = data_rows(out)
    assert code == 0 and len(rows) == 2
    assert all(float(r["relative_mismatch"]) < 1e-8 for r in rows)
    assert float(rows[1]["eta3_abs"]) < float(rows[0]["eta3_abs"])


def test_contour_pole_proximity_exit_3(capsys):
    from helix_lab import cplane
    p = cplane.MeroParams(0.4, 10.0)
    x = cplane.poles(cplane.Family.MINUS, [1], p)[0].refined.real
    code, _, err = run(capsys, "contour", "--R", repr(2 * x / p.omega), "--omega", "10", "--B", "0.4")
    assert code == 3 and "pole" in err


def test_solve_alpha_zero(capsys):
    assert run(capsys, "solve", "--alpha", "0", "--beta", "1", "--omega", "10")[0] == 2


def test_solve_rows_and_verdict(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "1", "--beta", "1", "--omega", "20,10")
    assert code == 0
    assert "# monotone_increasing_below_half: yes" in out
    rows = data_rows(out)
    assert [float(r["omega"]) for r in rows] == [10.0, 20.0]
    assert abs(float(rows[0]["B_star"]) - 0.3256389994670966) < 1e-6
    assert list(rows[0]) == cli.SOLVE_COLUMNS


def test_solve_verdict_logic():
    ok = {"status": "ok", "converged": True}
    rows = [dict(ok, omega=10.0, B_star=0.3), dict(ok, omega=20.0, B_star=0.35), dict(ok, omega=5.0, B_star=0.9)]
    assert cli.solve_verdict(rows) == "yes"
    rows[1]["B_star"] = 0.29
    assert cli.solve_verdict(rows) == "no"
    assert cli.solve_verdict(rows[:1]) == "n/a"


def test_verify_subset_passes(capsys):
    code, out, _ = run(capsys, "verify", "--only", "constants,9")
    assert code == 0
    assert "[PASS] 11" in out and "[PASS]  9" in out


def test_verify_unknown_group(capsys):
    assert run(capsys, "verify", "--only", "nonsense")[0] == 2


def test_verify_detects_corrupted_tail(capsys, monkeypatch):
    real = energy.tail_model_for_M

    def corrupted(B, omega):
        t = real(B, omega)
        return TailModel(1.5 * t.leading_coefficient, t.cubic_bound, t.valid_from)

    monkeypatch.setattr(energy, "tail_model_for_M", corrupted)
    code, out, _ = run(capsys, "verify", "--only", "13")
    assert code == 1
    assert "[FAIL] 13" in out and "FAILED: 13" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "helix_lab", "eval", "--B", "0.5", "--omega", "2"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "functional,A,B" in r.stdout
