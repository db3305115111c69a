"""CLI contract: golden outputs, exit codes, determinism, formats."""

import json
import os
import subprocess
import sys


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "qorder.cli", *args],
                          capture_output=True, text=True, env=env,
                          timeout=600)


# -- normal-order ---------------------------------------------------------------

def test_normal_order_golden():
    proc = run_cli("normal-order", "p * x", "--rep", "coordinate")
    assert proc.returncode == 0
    assert proc.stdout == "x * p - i * hbar\n"
    assert proc.stderr == ""


def test_normal_order_two_sided_family():
    proc = run_cli("normal-order",
                   "x^a * p * x^(1-a-g) * p * x^g"
                   " + x^g * p * x^(1-a-g) * p * x^a",
                   "--rep", "coordinate", "--hermitize-scale")
    assert proc.returncode == 0
    assert proc.stdout == "x * p^2 - i * hbar * p + a * g * hbar^2 * x^-1\n"


def test_normal_order_momentum_rejects_symbolic_power():
    proc = run_cli("normal-order", "x^q * p", "--rep", "momentum")
    assert proc.returncode == 3
    assert "cannot normal-order symbolic power of the moving operator" \
        in proc.stderr
    assert proc.stdout == ""


def test_normal_order_parse_error_span():
    proc = run_cli("normal-order", "x^(1/2")
    assert proc.returncode == 2
    assert "parse error" in proc.stderr
    assert "at 6..6" in proc.stderr


def test_normal_order_json():
    proc = run_cli("normal-order", "p * x", "--format", "json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["normal_form"] == "x * p - i * hbar"
    assert data["terms"] == 2


# -- verify -----------------------------------------------------------------------

def test_verify_symbolic_suites():
    for name in ("eq3", "eq4", "eq14", "eq18", "eq19"):
        proc = run_cli("verify", "--identity", name)
        assert proc.returncode == 0, (name, proc.stdout, proc.stderr)
        assert "FAIL" not in proc.stdout
        assert "PASS" in proc.stdout


def test_verify_quadrature_suite():
    proc = run_cli("verify", "--identity", "eq11")
    assert proc.returncode == 0
    assert "max residual" in proc.stdout
    assert "FAIL" not in proc.stdout


def test_verify_all_json():
    proc = run_cli("verify", "--identity", "all", "--format", "json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert isinstance(data, list)
    assert all(set(entry) == {"id", "pass", "detail"} for entry in data)
    assert all(entry["pass"] for entry in data)


def test_verify_unknown_identity():
    proc = run_cli("verify", "--identity", "eq99")
    assert proc.returncode == 2
    assert "unknown identity" in proc.stderr


# -- solve ------------------------------------------------------------------------

def test_solve_csv_ratio_constant():
    proc = run_cli("solve", "--E", "1", "--hbar", "1",
                   "--x-grid", "0:4:17", "--format", "csv")
    assert proc.returncode == 0
    lines = proc.stdout.strip().split("\n")
    assert lines[0] == "x,psi_re,psi_im,j0,ratio_re,ratio_im,failed"
    assert len(lines) == 18
    ratios = [float(line.split(",")[5]) for line in lines[1:]]
    base = ratios[0]
    assert all(abs(r - base) / abs(base) <= 1e-4 for r in ratios)
    assert all(line.split(",")[6] == "false" for line in lines[1:])


def test_solve_single_point_at_origin():
    proc = run_cli("solve", "--E", "1", "--hbar", "1", "--x-grid", "0:0:1")
    assert proc.returncode == 0
    lines = proc.stdout.strip().split("\n")
    assert len(lines) == 2
    assert float(lines[1].split(",")[3]) == 1.0


def test_solve_rejects_nonpositive_energy():
    proc = run_cli("solve", "--E", "-1", "--x-grid", "0:1:2")
    assert proc.returncode == 2
    assert "E must be positive" in proc.stderr


def test_solve_bad_grid():
    proc = run_cli("solve", "--E", "1", "--x-grid", "0:1")
    assert proc.returncode == 2
    assert "bad grid" in proc.stderr


def test_solve_partial_results_on_failure():
    """With the lobe budget strangled, rows are still emitted and flagged."""
    proc = run_cli("solve", "--E", "1", "--x-grid", "1:2:3",
                   env_extra={"QORDER_MAX_SUBDIV": "10"})
    assert proc.returncode == 4
    lines = proc.stdout.strip().split("\n")
    assert len(lines) == 4
    assert any(line.endswith("true") for line in lines[1:])


def test_solve_out_file(tmp_path):
    out = tmp_path / "recon.csv"
    proc = run_cli("solve", "--E", "1", "--x-grid", "0:1:3",
                   "--out", str(out))
    assert proc.returncode == 0
    assert proc.stdout == ""
    assert out.read_text().startswith("x,psi_re")


# -- order-scan ---------------------------------------------------------------------

def test_order_scan_fits():
    proc = run_cli("order-scan", "--alpha-gamma", "0", "0.0625", "0.25",
                   "--format", "json")
    assert proc.returncode == 0
    rows = json.loads(proc.stdout)
    fitted = [row["fitted_order"] for row in rows]
    assert abs(fitted[0] - 0.0) <= 1e-6
    assert abs(fitted[1] - 0.5) <= 1e-6
    assert abs(fitted[2] - 1.0) <= 1e-6
    # at the degenerate point all candidate indices coincide
    assert rows[0]["coupling_index_residual"] <= 1e-8
    # away from it, using the coupling as the order fails
    assert rows[1]["coupling_index_residual"] > 1e-2


def test_order_scan_range_check():
    proc = run_cli("order-scan", "--alpha-gamma", "1.5")
    assert proc.returncode == 2
    assert "must lie in [0, 1]" in proc.stderr


# -- determinism ---------------------------------------------------------------------

def test_outputs_are_byte_identical():
    for args in (("verify", "--identity", "eq11", "--format", "json"),
                 ("solve", "--E", "1", "--x-grid", "0:2:5", "--format", "csv"),
                 ("normal-order", "p * x^2", "--format", "csv")):
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout
