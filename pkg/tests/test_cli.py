import os
import subprocess
import sys

import pytest

from indexthree.cli import main

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIX, name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_rotation(capsys):
    code, out, _ = run(capsys, "verify", fx("k17mk2.rot"), "--triangular")
    assert code == 0
    assert "V=17 E=135 F=90 genus=15" in out and "K2" in out


def test_verify_current_graph(capsys):
    code, out, _ = run(capsys, "verify", fx("c5s1.cg"))
    assert code == 0


def test_verify_triangular_flag_fails_on_nontriangular(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog", "--n", "17", "--out", str(tmp_path))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(tmp_path / "n=17" / "Kn.rot"), "--triangular")
    assert code == 1


def test_derive_matches_fixture(capsys):
    code, out, err = run(capsys, "derive", "--case", "C5", "--s", "1")
    assert code == 0
    with open(fx("k17mk2.rot")) as fh:
        assert out == fh.read()


def test_logs(capsys):
    code, out, _ = run(capsys, "logs", fx("c5s1.cg"))
    assert code == 0
    assert out.splitlines()[0].startswith("[0].")


def test_surgery_writes_stages(tmp_path, capsys):
    d = tmp_path / "k5"
    code, out, _ = run(capsys, "surgery", "--case", "C11s1", "--s", "1", "--lemma", "k5",
                       "--u", "1", "--v", "12", "--p", "5,8,3,9", "--out", str(d))
    assert code == 0
    names = sorted(os.listdir(d))
    assert "transcript.txt" in names and len([n for n in names if n.endswith(".rot")]) == 3


def test_surgery_wrong_lemma(capsys):
    code, _, err = run(capsys, "surgery", fx("k17mk2.rot"), "--lemma", "k3")
    assert code == 1 and err


def test_subtract(capsys):
    code, out, _ = run(capsys, "subtract", "--case", "C6", "--s", "2", "--handles", "2")
    assert code == 0 and out.startswith("rotation")


def test_catalog_unsupported(capsys):
    code, _, err = run(capsys, "catalog", "--n", "18")
    assert code == 2 and "supported" in err


def test_catalog_single_t(capsys):
    code, out, _ = run(capsys, "catalog", "--n", "29", "--t", "7")
    assert code == 0 and out.startswith("(29,7) V=29 E=399 ") and "triangular" in out


def test_search_with_budget(capsys):
    code, out, err = run(capsys, "search", fx("c5s1.skeleton"), "--budget", "100")
    assert "budget" in (out + err)


def test_sporadic(capsys):
    code, out, _ = run(capsys, "sporadic", "K8q0q1")
    assert code == 0 and "q0." in out


def test_bad_family(capsys):
    code, _, err = run(capsys, "derive", "--case", "C7", "--s", "1")
    assert code == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "indexthree", "verify", fx("k11mc4.rot")],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "C4" in p.stdout
