from __future__ import annotations

import json

import pytest

from weylext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_oracle_text_and_json(capsys):
    code, out, _ = run(capsys, "oracle", "-p", "3", "-i", "-1")
    assert code == 0 and out.startswith("p=3 i=-1 total 19")
    code, out, _ = run(capsys, "oracle", "-p", "2", "-i", "-2", "--format", "json", "--field", "both")
    assert code == 0 and json.loads(out)["total"] == 12
    code, out, _ = run(capsys, "oracle", "-p", "3", "-i", "0", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 10


def test_oracle_warns_on_composite_p(capsys):
    code, _, err = run(capsys, "oracle", "-p", "4", "-i", "-1")
    assert code == 0 and "not prime" in err


def test_calibrate_is_idempotent(capsys, tmp_path):
    code, out, _ = run(capsys, "calibrate", "--cache-dir", str(tmp_path))
    assert code == 0 and "written" in out
    first = (tmp_path / "calibration.json").read_text()
    code, out, _ = run(capsys, "calibrate", "--cache-dir", str(tmp_path))
    assert code == 0 and "unchanged" in out
    assert (tmp_path / "calibration.json").read_text() == first


def test_calibrate_override_is_a_negative_control(capsys, tmp_path):
    code, _, err = run(capsys, "calibrate", "--cache-dir", str(tmp_path), "--override", "psi_reading=j-k")
    assert code == 1 and "0 consistent conventions" in err
    assert not (tmp_path / "calibration.json").exists()


def test_calibrate_with_too_few_checks_is_ambiguous(capsys, tmp_path):
    code, _, err = run(capsys, "calibrate", "--cache-dir", str(tmp_path), "--p-list", "2")
    assert code == 1


def test_build_writes_nine_vertices(capsys, tmp_path):
    out = tmp_path / "block.json"
    code, _, _ = run(capsys, "build", "-p", "3", "-q", "2", "-o", str(out))
    assert code == 0
    body = json.loads(out.read_text())
    assert len(body["vertices"]) == 9 and len(body["basis"]) == 107
    run(capsys, "build", "-p", "3", "-q", "2", "-o", str(tmp_path / "again.json"))
    assert (tmp_path / "again.json").read_bytes() == out.read_bytes()


def test_ext(capsys):
    assert run(capsys, "ext", "-p", "3", "-q", "2", "--from", "2", "--to", "1", "--k", "1")[1] == "1\n"
    assert run(capsys, "ext", "-p", "3", "-q", "2", "--from", "1,2", "--to", "1,1", "--k", "0", "--j", "1")[1] == "1\n"
    assert run(capsys, "ext", "-p", "3", "-q", "2", "--from", "1", "--to", "1", "--k", "2")[1] == "0\n"


def test_quiver_and_cartan_formats(capsys):
    code, out, _ = run(capsys, "quiver", "-p", "3", "-q", "2", "--format", "dot")
    assert code == 0 and out.count("->") == 24
    code, out, _ = run(capsys, "quiver", "-p", "3", "-q", "2", "--format", "csv")
    assert out.splitlines()[0] == "source,target,j,k"
    code, out, _ = run(capsys, "cartan", "-p", "3", "-q", "2")
    assert "e1 mu e2: x + x^-1*y" in out


def test_verify_golden(capsys):
    code, out, _ = run(capsys, "verify", "-p", "3", "-q", "2", "--golden-only")
    assert code == 0 and out.startswith("criterion 1: PASS")
    code, out, _ = run(capsys, "verify", "--golden-only", "--no-errata")
    assert code == 1 and "FAIL" in out


def test_usage_errors(capsys):
    assert run(capsys, "ext", "-p", "3", "-q", "2", "--from", "99", "--to", "1", "--k", "1")[0] == 2
    assert run(capsys, "build", "-p", "1", "-q", "2")[0] == 2
    assert run(capsys, "verify", "-p", "5", "-q", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_internal_error_exit_code(capsys, monkeypatch):
    import weylext.cli as cli

    def broken(*_a, **_k):
        raise AssertionError("radical is not nilpotent")

    monkeypatch.setattr(cli.report, "quiver", broken)
    assert run(capsys, "quiver", "-p", "3", "-q", "1")[0] == 3
