"""CLI contract tests: commands, exit codes, JSON report determinism."""

import json
import re
from pathlib import Path

import pytest

from heisenpoly.cli import main

GOLDEN = Path(__file__).parent / "data" / "suite_golden.txt"


def normalize_timing(text: str) -> str:
    lines = []
    for line in text.splitlines():
        line = re.sub(r"total_ms=\d+", "total_ms=MS", line)
        m = re.match(r"^(\S+\s+.*\s)(\d+)$", line)
        if m and not line.startswith("pass="):
            line = m.group(1).rstrip() + " MS"
        lines.append(line)
    return "\n".join(lines) + "\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- order ---------------------------------------------------------------------


def test_order_classical(capsys):
    code, out, _ = run(capsys, "order", "a*b*a", "--algebra", "classical")
    assert code == 0
    assert out.strip() == "b*a^2 + a"


def test_order_q(capsys):
    code, out, _ = run(capsys, "order", "a*b", "--algebra", "q")
    assert code == 0
    assert out.strip() == "q*b*a + 1"


def test_order_invalid_p(capsys):
    code, _, err = run(capsys, "order", "a*b", "--algebra", "classical", "--p", "0")
    assert code == 2
    assert "p must be >= 1" in err


def test_order_p_rejected_for_non_classical(capsys):
    code, _, err = run(capsys, "order", "a*b", "--algebra", "q", "--p", "2")
    assert code == 2


def test_order_parse_error(capsys):
    code, _, err = run(capsys, "order", "a*|b", "--algebra", "classical")
    assert code == 2
    assert "offset" in err


def test_order_central_flag(capsys):
    code, out, _ = run(capsys, "order", "a*b", "--algebra", "classical", "--central")
    assert code == 0
    assert out.strip() == "b*a + c"


def test_order_qplane(capsys):
    code, out, _ = run(capsys, "order", "b2*b1", "--algebra", "qplane")
    assert code == 0
    assert out.strip() == "v^-1*b1*b2"


def test_order_classical_multi_pair(capsys):
    code, out, _ = run(capsys, "order", "a2*b1", "--algebra", "classical", "--p", "2")
    assert code == 0
    assert out.strip() == "b1*a2"
    code, out, _ = run(capsys, "order", "a2*b2", "--algebra", "classical", "--p", "2")
    assert code == 0
    assert out.strip() == "b2*a2 + 1"


def test_order_borel(capsys):
    code, out, _ = run(capsys, "order", "A*B", "--algebra", "borelA")
    assert code == 0
    assert out.strip() == "q*B*A + A"
    code, out, _ = run(capsys, "order", "A*B", "--algebra", "borelB")
    assert code == 0
    assert out.strip() == "q*B*A + B"


# -- verify ---------------------------------------------------------------------


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "E10", "--n", "3")
    assert code == 0
    assert "E10 n=3: pass" in out


def test_verify_unknown_tag(capsys):
    code, _, err = run(capsys, "verify", "E99", "--n", "1")
    assert code == 2
    assert "unknown identity tag" in err


def test_verify_missing_param(capsys):
    code, _, err = run(capsys, "verify", "E10")
    assert code == 2
    assert "requires parameter" in err


def test_verify_e2eps(capsys):
    code, out, _ = run(capsys, "verify", "E2EPS", "--n", "2")
    assert code == 0
    assert out.strip() == "expected-fail: residual has 2 epsilon-terms"


def test_probe_epsilon_alias(capsys):
    code, out, _ = run(capsys, "probe-epsilon", "--n", "2")
    assert code == 0
    assert out.strip() == "expected-fail: residual has 2 epsilon-terms"


def test_verify_embedding_tags(capsys):
    code, out, _ = run(capsys, "verify", "E9")
    assert code == 0
    assert out.count("pass") == 3
    code, out, _ = run(capsys, "verify", "E25")
    assert code == 0
    assert out.count("pass") == 3


def test_verify_with_oracle(capsys):
    code, out, _ = run(capsys, "verify", "E16", "--n", "2", "--p", "2", "--l", "1", "--oracle")
    assert code == 0
    assert "E16" in out and "pass" in out
    assert "oracle[diff]: pass" in out


def test_verify_oracle_jackson_and_fock(capsys):
    code, out, _ = run(capsys, "verify", "E19", "--n", "2", "--oracle")
    assert code == 0
    assert "oracle[jackson]: pass" in out
    code, out, _ = run(capsys, "verify", "E30", "--n", "1", "--oracle")
    assert code == 0
    assert "oracle[qplane-fock]: pass" in out


def test_verify_oracle_unavailable(capsys):
    code, out, _ = run(capsys, "verify", "E7", "--n", "1", "--oracle")
    assert code == 0
    assert "no matching realization" in out


# -- suite ---------------------------------------------------------------------


def test_suite_max_n0(capsys):
    code, out, _ = run(capsys, "suite", "--max-n", "0", "--max-p", "1", "--max-m", "1")
    assert code == 0
    assert "fail=0" in out


def test_suite_json_report(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "suite", "--max-n", "1", "--max-p", "2", "--max-m", "2",
                       "--json", str(target))
    assert code == 0
    report = json.loads(target.read_text())
    assert set(report) == {"version", "config", "results", "summary"}
    assert report["summary"]["fail"] == 0
    assert report["summary"]["expected_fail"] == 2  # E2EPS at n = 0, 1
    assert report["config"]["max_n"] == 1
    row = report["results"][0]
    assert set(row) >= {"id", "params", "status", "lhs_terms", "rhs_terms",
                        "rewrite_steps", "elapsed_ms"}
    eps_rows = [r for r in report["results"] if r["id"] == "E2EPS"]
    assert all(r["status"] == "expected-fail" and "residual" in r for r in eps_rows)


def test_suite_text_report_matches_golden_file(capsys):
    code, out, _ = run(capsys, "suite", "--max-n", "1", "--max-p", "1", "--max-m", "1")
    assert code == 0
    assert normalize_timing(out) == GOLDEN.read_text()


def test_suite_json_deterministic_modulo_timing(tmp_path, capsys):
    reports = []
    for name in ("one.json", "two.json"):
        target = tmp_path / name
        code, _, _ = run(capsys, "suite", "--max-n", "1", "--max-p", "2",
                         "--max-m", "1", "--json", str(target))
        assert code == 0
        report = json.loads(target.read_text())
        report["summary"]["total_ms"] = 0
        for row in report["results"]:
            row["elapsed_ms"] = 0
        reports.append(json.dumps(report, indent=2))
    assert reports[0] == reports[1]


def test_suite_unwritable_json_path(tmp_path, capsys):
    code, _, err = run(capsys, "suite", "--max-n", "0", "--max-p", "1", "--max-m", "1",
                       "--json", str(tmp_path / "missing" / "report.json"))
    assert code == 2
    assert "cannot write" in err


def test_suite_negative_bounds(capsys):
    code, _, err = run(capsys, "suite", "--max-n", "-1")
    assert code == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["order", "a*b", "--algebra", "nonsense"])
    assert exc.value.code == 2
