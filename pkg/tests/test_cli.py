"""CLI surface: exit codes, JSON determinism, env-var catalog override."""

import json
import subprocess
import sys

from qseries.cli import main


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "qseries.cli", *args],
        capture_output=True, text=True, timeout=300,
    )
    return proc


def test_list_row_count():
    proc = run_cli("--json", "list")
    rows = json.loads(proc.stdout)
    assert proc.returncode == 0
    assert len(rows) >= 38
    assert {"id", "kind", "theorem", "section", "root", "classical"} <= set(rows[0])


def test_list_section_filter():
    rows3 = json.loads(run_cli("--json", "list", "--section", "3").stdout)
    rows4 = json.loads(run_cli("--json", "list", "--section", "4").stdout)
    assert all(r["section"].startswith("3") for r in rows3)
    assert len(rows3) >= 19
    assert len(rows3) + len(rows4) == len(json.loads(run_cli("--json", "list").stdout))


def test_verify_single_json():
    proc = run_cli("--json", "verify", "g1x5pp", "--order", "120")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["status"] == "verified"
    assert payload["order"] == 120
    assert "elapsed_ms" not in payload  # timing goes to stderr
    assert "elapsed" in proc.stderr


def test_verify_unknown_id_exits_2():
    proc = run_cli("verify", "no-such-id")
    assert proc.returncode == 2


def test_json_is_deterministic():
    a = run_cli("--json", "verify", "u2-09", "--order", "80").stdout
    b = run_cli("--json", "verify", "u2-09", "--order", "80").stdout
    assert a == b


def test_oracle_jackson_trivial():
    proc = run_cli("--json", "oracle", "jackson", "--n", "0", "--r", "2/3")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["equal"] is True
    assert payload["lhs"] == "1"


def test_limit_json_fields():
    proc = run_cli("--json", "limit", "v3x1", "--terms", "20", "--digits", "30")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert set(payload) == {
        "id", "series_value", "closed_form_value", "abs_diff", "tail_estimate",
        "declared_base", "fitted_base", "terms", "digits",
    }


def test_bisect_json():
    proc = run_cli("--json", "bisect", "v3x1")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["sign"] == "-"
    assert payload["degree"] == 6
    assert payload["consistent"] is True
    assert payload["residual_zero"] is True


def test_env_catalog_override(tmp_path, monkeypatch):
    p = tmp_path / "mini.txt"
    p.write_text(
        "root 12\n"
        "record only\n"
        "  kind theorem\n  theorem 2U\n  section 3.1\n"
        "  a 3/2\n  b 1\n  c 1\n  d 5/6\n"
        "end\n"
    )
    monkeypatch.setenv("QSERIES_CATALOG", str(p))
    assert main(["--json", "list"]) == 0
    monkeypatch.delenv("QSERIES_CATALOG")


def test_verify_all_section_subset():
    proc = run_cli("--json", "verify-all", "--order", "60", "--section", "4.3")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert [p["id"] for p in payload] == ["w1+2d", "w1+2e"]
    assert all(p["status"] == "verified" for p in payload)


def test_verify_all_parallel_matches_serial():
    serial = run_cli("--json", "verify-all", "--order", "60", "--section", "4.1").stdout
    parallel = run_cli("--json", "verify-all", "--order", "60", "--section", "4.1", "--parallel").stdout
    assert json.loads(serial) == json.loads(parallel)
