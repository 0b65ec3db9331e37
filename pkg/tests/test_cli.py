import filecmp
import json
import os

from tautbamboo.cli import main, run_suite


def test_construct_json(capsys):
    assert main(["construct", "--family", "B", "--genus", "2"]) == 0
    out = capsys.readouterr().out
    obj = json.loads(out)
    assert obj["degree"] == 4 and len(obj["terms"]) == 3


def test_construct_admcycles(capsys):
    assert main(["construct", "--family", "B", "--genus", "1", "--export-format", "admcycles"]) == 0
    out = capsys.readouterr().out
    assert "profile=two" in out


def test_verify_writes_reports_and_certificates(tmp_path, capsys):
    code = main(["verify", "--genus", "2", "--out-dir", str(tmp_path / "run")])
    capsys.readouterr()
    assert code == 0
    report = json.loads((tmp_path / "run" / "report.json").read_text())
    assert report["genus_max"] == 2
    outcomes = {r["params"]["task"]: r["outcome"] for r in report["reports"]}
    assert outcomes["symmetry_g2"] == "certified"
    assert outcomes["pushforward_g2"] == "exact_zero"
    cert = tmp_path / "run" / "certificates" / "symmetry_g2.json"
    assert cert.exists()
    assert main(["certificate", "verify", "--file", str(cert)]) == 0


def test_verify_exit_code_2_on_tiny_budget(tmp_path, capsys):
    code = main([
        "verify", "--genus", "2", "--identity", "symmetry",
        "--budget-context-len", "0", "--budget-r", "0", "--budget-deco", "0",
    ])
    capsys.readouterr()
    assert code == 2


def test_byte_identical_consecutive_runs(tmp_path, capsys):
    for name in ("a", "b"):
        main(["verify", "--genus", "2", "--out-dir", str(tmp_path / name)])
        capsys.readouterr()
    cmp = filecmp.dircmp(tmp_path / "a", tmp_path / "b")

    def assert_same(dc):
        assert not dc.diff_files and not dc.left_only and not dc.right_only
        for sub in dc.subdirs.values():
            assert_same(sub)

    assert_same(cmp)


def test_run_suite_api():
    reports, code = run_suite(1)
    assert code == 0
    assert all(r.ok for r in reports)
