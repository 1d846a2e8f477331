import json
import subprocess
import sys

import pytest

from matinv2.cli import parse_document, run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_witness_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "--d", "2", "--invariant", "tr(1,2)")
    assert code == 0
    doc = json.loads(out)
    assert doc["distinguishing"] == "tr(1,2)"
    assert doc["field"] == {"kind": "rational"}
    field, d, tuples = parse_document(doc)
    assert d == 2
    u = tuples["u"]
    assert u[1].e12 == 1 and u[2].e21 == 1
    assert all(m.is_zero() for m in tuples["v"])
    # re-emission is byte-identical (canonical scalar encoding)
    path = tmp_path / "w.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "witness", "--d", "2", "--invariant", "tr(1,2)")
    assert out2 == out


def test_separate_lemma_pair(capsys, tmp_path):
    code, out, _ = run(
        capsys, "witness", "--d", "3", "--invariant", "tr(1,2,3)", "--field", "prime:101"
    )
    assert code == 0
    path = tmp_path / "pair.json"
    path.write_text(out)
    code, out, _ = run(capsys, "separate", "--input", str(path), "--set", "S")
    assert code == 0
    assert out.strip() == "SEPARATED by tr(1,2,3)"
    code, out, _ = run(
        capsys, "separate", "--input", str(path), "--left", "u", "--right", "u", "--set", "G"
    )
    assert code == 0 and out.strip() == "NOT-SEPARATED"
    code, out, _ = run(capsys, "separate", "--input", str(path), "--report", "json")
    doc = json.loads(out)
    assert doc["separated"] is True and doc["witness"] == "tr(1,2,3)"
    assert set(doc["fingerprints"]) == {"u", "v"}


def test_invariants_listing(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "--d", "2", "--invariant", "tr(1,2)",
                       "--field", "gf2k:8")
    path = tmp_path / "w.json"
    path.write_text(out)
    code, out, _ = run(capsys, "invariants", "--input", str(path), "--tuple", "u",
                       "--set", "Z")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "tr(1) = 0x0"
    assert lines[-1] == "pairsum(3) = 0x1"
    code, out, _ = run(capsys, "invariants", "--input", str(path), "--tuple", "u",
                       "--set", "G")
    assert code == 0
    assert len(out.strip().splitlines()) == 5  # char 2, d=2: dets + all words


def test_verify_lemmas(capsys):
    code, out, _ = run(capsys, "verify-lemmas")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 14 and all(line.endswith("PASS") for line in lines)
    code, out, _ = run(capsys, "verify-lemmas", "--case", "L4.4-2.1")
    assert code == 0 and out.strip() == "L4.4-2.1 [Z] PASS"
    code, out, _ = run(capsys, "verify-lemmas", "--ring", "F2")
    assert code == 0 and len(out.strip().splitlines()) == 3
    code, out, err = run(capsys, "verify-lemmas", "--case", "missing")
    assert code == 2


def test_exit_codes(capsys, tmp_path):
    code, _, _ = run(capsys, "separate", "--input", str(tmp_path / "absent.json"))
    assert code == 2
    code, _, _ = run(capsys, "witness", "--d", "2", "--invariant", "nope(1)")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"kind": "prime", "p": 6}, "d": 1, "tuples": {}}')
    code, _, _ = run(capsys, "separate", "--input", str(bad))
    assert code == 2
    wrong_count = tmp_path / "count.json"
    wrong_count.write_text(
        '{"field": {"kind": "rational"}, "d": 2,'
        ' "tuples": {"u": [[["0","0"],["0","0"]]], "v": [[["0","0"],["0","0"]]]}}'
    )
    code, _, _ = run(capsys, "separate", "--input", str(wrong_count))
    assert code == 2


def test_selftest_deterministic_and_green(capsys):
    code1, out1, _ = run(capsys, "selftest", "--seed", "11", "--iters", "20")
    code2, out2, _ = run(capsys, "selftest", "--seed", "11", "--iters", "20")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.strip().splitlines()[-1] == "OK total_failures=0"
    code3, out3, _ = run(capsys, "selftest", "--seed", "12", "--iters", "20",
                         "--field", "prime:7", "--d", "3")
    assert code3 == 0


def test_console_script_subprocess():
    r = subprocess.run(
        [sys.executable, "-m", "matinv2.cli", "verify-lemmas", "--case", "L4.3"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout.strip() == "L4.3 [Z] PASS"
