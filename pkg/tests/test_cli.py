import csv
import io
import math
import subprocess
import sys
import xml.etree.ElementTree as ET
from contextlib import redirect_stderr, redirect_stdout

from metrotrade.cli import main

SVG_NS = "{http://www.w3.org/2000/svg}"


def run_cli(argv):
    out = io.StringIO()
    err = io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_tradeoff_csv_contents():
    code, out, _ = run_cli(["tradeoff", "--n", "1,100", "--alpha", "1.0"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "alpha", "exact_bound", "asymptotic_bound", "qcrb",
                      "correction_ratio"]
    assert len(rows) == 2
    assert float(rows[0][2]) == math.pi / 2.0
    assert abs(float(rows[1][2]) - math.acos(99.0 / 101.0)) < 1e-15
    assert abs(float(rows[1][5]) - 1.99337) < 1e-5


def test_tradeoff_alpha_linearity():
    _, out1, _ = run_cli(["tradeoff", "--n", "100", "--alpha", "0.5"])
    _, out2, _ = run_cli(["tradeoff", "--n", "100", "--alpha", "1.0"])
    a1 = float(parse_csv(out1)[1][0][3])
    a2 = float(parse_csv(out2)[1][0][3])
    assert abs(a2 - 2.0 * a1) < 1e-15


def test_inherent_csv(tmp_path):
    path = tmp_path / "inh.csv"
    code, _, _ = run_cli(["inherent", "--grid", "99", "--out", str(path)])
    assert code == 0
    header, rows = parse_csv(path.read_text())
    assert header == ["phi0", "resolution", "accuracy"]
    assert len(rows) in (99, 100)
    by_phi = {float(r[0]): (float(r[1]), float(r[2])) for r in rows}
    res, acc = by_phi[math.pi / 2.0]
    assert abs(res - 49.9967) < 0.0001
    assert abs(acc - 0.100007) < 1e-6
    # small-angle rows are unreachable and reported as nan; skip them when
    # scanning for the extremes
    finite = [v for v in by_phi.values() if math.isfinite(v[0])]
    assert len(finite) < len(by_phi)
    # pi/2 carries (near enough) the best resolution and the worst accuracy
    assert res >= max(v[0] for v in finite) * (1.0 - 1e-3)
    assert acc <= min(v[1] for v in finite) * (1.0 + 1e-3)


def test_inherent_single_point():
    code, out, _ = run_cli(["inherent", "--phi0", str(math.pi / 4.0), "--n", "100"])
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 1
    assert abs(float(rows[0][1]) - 1.0 / 0.028700028633896672) < 1e-6


def test_inherent_flags_unreachable_rows():
    code, out, _ = run_cli(["inherent", "--n", "3", "--grid", "199"])
    assert code == 0
    _, rows = parse_csv(out)
    nan_rows = [r for r in rows if r[1] == "nan"]
    ok_rows = [r for r in rows if r[1] != "nan"]
    assert nan_rows and ok_rows
    for r in nan_rows:
        assert r[2] == "nan"
        assert float(r[0]) < math.acos(1.0 - 2.0 / 3.0)


def test_basis_sweep_summary_row():
    code, out, _ = run_cli(["basis-sweep", "--grid", "200"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["theta", "phi_b", "snr"]
    assert len(rows) == 200 * 200 + 1
    summary = rows[-1]
    assert summary[0] == "summary"
    grid_max, analytic = float(summary[1]), float(summary[2])
    assert abs(analytic - math.tan(math.pi / 20.0)) < 1e-12
    assert grid_max <= analytic + 1e-9
    assert grid_max > 0.9 * analytic
    # theta = 0 rows measure nothing
    assert all(float(r[2]) == 0.0 for r in rows[:-1] if float(r[0]) == 0.0)


def test_basis_sweep_budget_scaling():
    _, out1, _ = run_cli(["basis-sweep", "--grid", "200", "--n", "1"])
    _, out2, _ = run_cli(["basis-sweep", "--grid", "200", "--n", "2"])
    _, rows1 = parse_csv(out1)
    _, rows2 = parse_csv(out2)
    for r1, r2 in zip(rows1[:500], rows2[:500]):
        assert abs(float(r2[2]) - math.sqrt(2.0) * float(r1[2])) < 1e-9


def test_resources_csv():
    code, out, _ = run_cli(["resources", "--m-grid", "2,4,8,16,32"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["strategy", "M", "N", "min_signal", "fitted_exponent"]
    assert len(rows) == 4 * 5
    slopes = {r[0]: float(r[4]) for r in rows}
    assert abs(slopes["ensemble"] + 0.5) <= 0.05
    assert abs(slopes["product"] + 0.5) <= 0.05
    assert abs(slopes["ghz"] + 1.0) <= 0.05
    assert abs(slopes["nonlinear"] + 2.0) <= 0.1
    ghz_m4 = [r for r in rows if r[0] == "ghz" and r[1] == "4"][0]
    assert abs(float(ghz_m4[3]) - 0.05) < 0.001


def test_bias_mc_csv():
    code, out, _ = run_cli(["bias-mc", "--phi", str(math.pi / 2.0), "--n", "16",
                            "--trials", "2000"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["mode", "mean_p", "bias_p", "mean_phi", "bias_phi",
                      "var_phi", "mse_phi"]
    assert [r[0] for r in rows] == ["ExactEnumeration", "MonteCarlo"]
    exact = rows[0]
    assert abs(float(exact[4])) < 1e-12
    assert abs(float(exact[2])) < 1e-12
    for r in rows:
        mse = float(r[6])
        assert abs(mse - (float(r[5]) + float(r[4]) ** 2)) < 1e-10


def test_bias_mc_skips_enumeration_for_large_budget():
    code, out, _ = run_cli(["bias-mc", "--n", "100", "--trials", "500"])
    assert code == 0
    _, rows = parse_csv(out)
    assert [r[0] for r in rows] == ["MonteCarlo"]


def test_csv_determinism():
    for argv in (
        ["tradeoff"],
        ["inherent", "--grid", "49"],
        ["resources"],
        ["bias-mc", "--trials", "1000", "--seed", "9"],
    ):
        _, out1, _ = run_cli(list(argv))
        _, out2, _ = run_cli(list(argv))
        assert out1 == out2


def test_svg_output_well_formed(tmp_path):
    path = tmp_path / "chart.svg"
    code, _, _ = run_cli(["inherent", "--grid", "49", "--format", "svg",
                          "--out", str(path)])
    assert code == 0
    root = ET.parse(path).getroot()
    assert root.tag == f"{SVG_NS}svg"
    assert root.get("viewBox")
    polylines = root.findall(f".//{SVG_NS}polyline")
    assert len(polylines) == 2


def test_svg_polyline_per_series():
    code, out, _ = run_cli(["tradeoff", "--format", "svg"])
    assert code == 0
    root = ET.fromstring(out)
    assert len(root.findall(f".//{SVG_NS}polyline")) == 3


def test_format_both_writes_pair(tmp_path):
    stem = tmp_path / "pair"
    code, _, _ = run_cli(["resources", "--m-grid", "2,4", "--format", "both",
                          "--out", str(stem)])
    assert code == 0
    csv_text = (stem.with_suffix(".csv")).read_text()
    svg_text = (stem.with_suffix(".svg")).read_text()
    assert csv_text.startswith("strategy,")
    assert len(ET.fromstring(svg_text).findall(f".//{SVG_NS}polyline")) == 4


def test_usage_errors_exit_one():
    code, _, err = run_cli(["tradeoff", "--n", "abc"])
    assert code == 1
    assert "usage error" in err
    code, _, _ = run_cli(["nosuchcommand"])
    assert code == 1
    code, _, _ = run_cli(["resources", "--seed", "-3"])
    assert code == 1
    code, _, err = run_cli(["tradeoff", "--format", "both"])
    assert code == 1
    assert "requires --out" in err


def test_domain_errors_exit_two():
    code, _, err = run_cli(["bias-mc", "--phi", "4.0"])
    assert code == 2
    assert "error" in err
    code, _, _ = run_cli(["inherent", "--n", "2"])
    assert code == 2
    code, _, _ = run_cli(["basis-sweep", "--grid", "100"])
    assert code == 2
    code, _, _ = run_cli(["resources", "--m-grid", "4,4"])
    assert code == 2
    code, _, _ = run_cli(["bias-mc", "--trials", "10"])
    assert code == 2


def test_verify_passes_and_reports():
    code, out, _ = run_cli(["verify"])
    assert code == 0
    assert "OK: 11 checks passed" in out
    assert out.count("PASS") == 11
    # the factor-2 line carries the measured n=100 bound
    line = [l for l in out.splitlines() if "factor2" in l][0]
    assert "1.9933730498" in line


def test_verify_corrupt_hook_exits_three():
    code, out, _ = run_cli(["verify", "--corrupt", "bound_vs_oracle"])
    assert code == 3
    assert "FAILED: bound_vs_oracle" in out
    assert "FAIL  bound_vs_oracle" in out


def test_verify_report_to_file(tmp_path):
    path = tmp_path / "report.txt"
    code, out, _ = run_cli(["verify", "--out", str(path)])
    assert code == 0
    assert out == ""
    assert "OK: 11 checks passed" in path.read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "metrotrade", "tradeoff", "--n", "4", "--alpha", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    header, rows = parse_csv(proc.stdout)
    assert header[0] == "n"
    # n = alpha^2 pins the exact bound at a right angle
    assert float(rows[0][2]) == math.pi / 2.0
