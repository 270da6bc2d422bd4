import json
import subprocess
import sys
from pathlib import Path

import pytest

from torlink.cli import EXIT_MATH, EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, main
from torlink.gen import normal_form_table
from torlink.labels import T
from torlink.toralg import write_table

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "src" / "torlink" / "corpus"
TABLES = ROOT / "data" / "tables"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_ideal(capsys):
    code, out, _ = run(capsys, "classify", "--ideal", str(CORPUS / "t4.ideal"))
    assert code == EXIT_OK
    assert out.startswith("T m=4 n=3")


def test_classify_json_report(capsys, tmp_path):
    dest = tmp_path / "nf.tor"
    code, out, _ = run(capsys, "classify", "--ideal", str(CORPUS / "g5.ideal"), "--json", "--emit-table", str(dest))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["command"] == "classify"
    assert report["outputs"]["classification"]["label"] == "G(5)"
    assert report["outputs"]["betti"] == [1, 5, 5, 1]
    assert dest.exists()


def test_classify_scrambled_table_warns(capsys):
    code, out, _ = run(capsys, "classify", "--table", str(TABLES / "scrambled_H21_6_3.tor"))
    assert code == EXIT_OK
    assert out.startswith("H(2,1)")
    assert "warning" in out


def test_classify_field_override(capsys):
    code, out, _ = run(capsys, "classify", "--ideal", str(CORPUS / "t4.ideal"), "--field", "F101", "--json")
    assert json.loads(out)["inputs"]["field"] == "F101"


def test_link_with_sequence(capsys, tmp_path):
    dest = tmp_path / "linked.ideal"
    code, out, _ = run(capsys, "link", "--ideal", str(CORPUS / "max.ideal"), "--with", "x^2;y^2;z^2", "--out", str(dest))
    assert code == EXIT_OK
    assert "linked ideal: (x^2, y^2, z^2, x*y*z)" in out
    assert "predicted m'=4 n'=3" in out
    assert "ideal:" in dest.read_text()


def test_link_regime(capsys):
    code, out, _ = run(capsys, "link", "--ideal", str(CORPUS / "b52.ideal"), "--regime", "BGT_A", "--json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["outputs"]["ok"] and report["outputs"]["linked"]["m"] == 4


def test_link_table(capsys):
    code, out, _ = run(capsys, "link", "--table", str(TABLES / "B_5_2.tor"), "--regime", "BGT_A")
    assert code == EXIT_OK
    assert "m'=4 n'=2" in out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "link", "--table", str(TABLES / "T_4_3.tor"), "--regime", "H0")[0] == EXIT_MATH
    assert run(capsys, "link", "--table", str(TABLES / "T_4_3.tor"))[0] == EXIT_USAGE
    assert run(capsys, "grid", "--m", "2", "--n", "1")[0] == EXIT_USAGE
    assert run(capsys, "classify", "--ideal", str(tmp_path / "missing.ideal"))[0] == EXIT_USAGE
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring Q[x,y,z]\nideal: x^2, y^^2\n")
    code, _, err = run(capsys, "classify", "--ideal", str(bad))
    assert code == EXIT_USAGE and "line 2" in err
    nonart = tmp_path / "line.ideal"
    nonart.write_text("ring Q[x,y,z]\nideal: x, y\n")
    assert run(capsys, "classify", "--ideal", str(nonart))[0] == EXIT_MATH
    with pytest.raises(SystemExit) as e:
        main(["classify", "--bogus"])
    assert e.value.code == EXIT_USAGE
    assert run(capsys, "link", "--ideal", str(CORPUS / "max.ideal"), "--with", "x^2;y^2")[0] == EXIT_USAGE


def test_property_failure_exit(capsys, monkeypatch):
    from torlink import cli
    from torlink.verify import SuiteResult

    def failing(name, seed, trials):
        r = SuiteResult(name)
        r.record(False, "case", "detail")
        return r

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "--suite", "pqr")
    assert code == EXIT_PROPERTY and "FAIL case" in out


def test_grid_formats(capsys):
    code, out, _ = run(capsys, "grid", "--m", "7", "--n", "5")
    assert code == EXIT_OK and "H(6,5)" in out
    _, out, _ = run(capsys, "grid", "--m", "7", "--n", "5", "--format", "json")
    assert len([r for r in json.loads(out) if r["kind"] == "H"]) == 17
    _, out, _ = run(capsys, "grid", "--m", "5", "--n", "2", "--format", "csv")
    assert out.splitlines()[0] == "m,n,label"


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "roundtrip", "--trials", "20", "--seed", "3")
    assert code == EXIT_OK and "roundtrip: 20/20 passed" in out


def test_env_field(tmp_path, monkeypatch):
    path = tmp_path / "fp.ideal"
    path.write_text("ring Fp[x,y,z]\nideal: x^2, y^2, z^2\n")
    monkeypatch.setenv("TORLINK_FIELD", "F7")
    out = subprocess.run(
        [sys.executable, "-m", "torlink", "classify", "--ideal", str(path), "--json"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert json.loads(out)["outputs"]["classification"]["label"] == "C(3)"


def test_written_table_round_trip(capsys, tmp_path):
    path = tmp_path / "t.tor"
    write_table(normal_form_table(T(), 4, 3), path)
    code, out, _ = run(capsys, "classify", "--table", str(path))
    assert code == EXIT_OK and out.startswith("T")
