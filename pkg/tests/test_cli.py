import subprocess
import sys

import pytest

from finring.cli import Report, dispatch, main
from finring.ring import canonical_form, read_ring, write_ring
from finring.subsets import Subset


@pytest.fixture
def files(tmp_path, rings):
    out = {}
    for name in ("Z2", "zero2", "K4", "M2", "Z4"):
        p = tmp_path / f"{name.lower()}.ring"
        write_ring(rings[name], p)
        out[name] = str(p)
    return out


def run(argv):
    rep, quiet = dispatch(argv)
    return rep, rep.render(quiet)


def test_validate(files):
    rep, text = run(["validate", "--in", files["Z2"]])
    assert rep.status == "OK" and rep.exit_code == 0
    assert "unit: 1\n" in text and text.startswith("status: OK\n")


def test_validate_reports_violations(tmp_path):
    p = tmp_path / "bad.ring"
    p.write_text("ring 2\nadd\n0 1\n1 0\nmul\n0 1\n0 0\n")
    rep, text = run(["validate", "--in", str(p)])
    assert rep.status == "FAIL" and rep.exit_code == 1
    assert "violation: MUL_ASSOC_FAIL" in text


def test_theorem_check_evidence(files, catalog_dir):
    rep, text = run(["theorem-check", "--ring", files["K4"], "--ideal", "subset 2: 0 1",
                     "--catalog", str(catalog_dir)])
    assert rep.status == "EVIDENCE" and rep.exit_code == 0
    assert "joint_enlargement: none (bound 16)\n" in text
    assert "label: evidence (bound 16)\n" in text


def test_theorem_check_preconditions(files, catalog_dir):
    rep, _ = run(["theorem-check", "--ring", files["Z4"], "--ideal", "subset 2: 0 2",
                  "--catalog", str(catalog_dir)])
    assert rep.status == "FAIL" and rep.exit_code == 1


def test_dorroh_emits_ring(files, tmp_path):
    out = tmp_path / "d.ring"
    rep, text = run(["dorroh", "--in", files["zero2"], "--out", str(out)])
    assert rep.status == "OK"
    assert "order: 4\n" in text and "iota: hom 2: 0 2\n" in text
    assert read_ring(out).order == 4


def test_multiplier(files, tmp_path):
    rep, text = run(["multiplier", "--in", files["K4"], "--out", str(tmp_path / "m.ring")])
    assert rep.status == "OK" and "order: 4\n" in text
    rep, text = run(["multiplier", "--in", files["zero2"], "--out", str(tmp_path / "n.ring")])
    assert rep.exit_code == 1 and "DEGENERATE" in text


def test_enlargement_and_search(files, catalog_dir):
    rep, text = run(["enlargement", "--ambient", files["M2"], "--subset", "subset 2: 0 8"])
    assert "enlargement: true\n" in text
    rep, text = run(["search", "--a", files["Z2"], "--b", files["M2"], "--catalog", str(catalog_dir)])
    assert rep.status == "OK" and "joint_enlargement: found (proof)\n" in text
    rep, text = run(["search", "--a", files["K4"], "--b", files["Z2"], "--catalog", str(catalog_dir)])
    assert rep.status == "EVIDENCE"


def test_analyze_and_ideals(files):
    rep, text = run(["analyze", "--in", files["M2"]])
    assert "ideals: 2\n" in text and "canonical_id: none" in text
    rep, text = run(["ideals", "--in", files["K4"]])
    assert "count: 4\n" in text


def test_catalog_subcommands(files, tmp_path):
    d = tmp_path / "cat"
    rep, text = run(["catalog", "generate", "--max-order", "4", "--named-order", "8", "--out", str(d)])
    assert rep.status == "OK" and "order_4: 11\n" in text
    rep, text = run(["catalog", "add", "--in", files["M2"], "--out", str(d)])
    assert "added: true\n" in text
    rep, text = run(["catalog", "add", "--in", files["M2"], "--out", str(d)])
    assert "added: false\n" in text


def test_usage_errors(capsys):
    assert main(["frobnicate"]) == 3
    assert main([]) == 3
    assert main(["validate"]) == 3
    out = capsys.readouterr().out
    assert out.startswith("status: FAIL\n")


def test_missing_file(tmp_path):
    rep, text = run(["validate", "--in", str(tmp_path / "nope.ring")])
    assert rep.exit_code == 1 and "IO:" in text


def test_quiet(files):
    rep, text = run(["--quiet", "validate", "--in", files["Z2"]])
    assert text == "status: OK\n"


def test_exit_codes():
    assert [Report(s).exit_code for s in ("OK", "EVIDENCE", "FAIL", "FATAL")] == [0, 0, 1, 2]
    assert Report("FAIL", usage=True).exit_code == 3


def test_emitted_rings_round_trip(files, tmp_path):
    for name in ("Z2", "K4", "Z4"):
        out = tmp_path / f"{name}.d.ring"
        run(["dorroh", "--in", files[name], "--out", str(out)])
        R = read_ring(out)
        rep, _ = run(["validate", "--in", str(out)])
        assert rep.status == "OK"
        if R.order <= 8:
            C, _ = canonical_form(R)
            p = tmp_path / f"{name}.c.ring"
            write_ring(C, p)
            assert canonical_form(read_ring(p))[0] == C


def test_console_script_entry(files):
    out = subprocess.run([sys.executable, "-m", "finring.cli", "validate", "--in", files["Z2"]],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0 and "unit: 1" in out.stdout
