import subprocess
import sys

import pytest

from cobordism.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def trefoil(data_dir):
    return data_dir / "corpus" / "trefoil.seifert"


def test_alexander(capsys, trefoil, data_dir):
    assert run(capsys, "alexander", trefoil) == (0, "1 - t + t^2\n", "")
    assert run(capsys, "alexander", data_dir / "corpus" / "unknot.seifert")[1] == "1\n"


def test_alexander_ragged_matrix(capsys, tmp_path):
    bad = tmp_path / "bad.seifert"
    bad.write_text("parity: 1\nmatrix:\n  1 2\n  3\n")
    code, out, err = run(capsys, "alexander", bad)
    assert code == 2 and out == ""
    assert "line 4, field 'matrix': row 2 has 1 entries, expected 2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "alexander", tmp_path / "nope.seifert")
    assert code == 2 and "nope.seifert" in err


def test_lt_sig(capsys, trefoil):
    code, out, _ = run(capsys, "lt-sig", trefoil, "--xi", "1/2")
    assert code == 0
    assert out == "xi: 1/2\nnullity: 0\nsignature: -2\ndelta_zero: false\n"


def test_lt_sig_rejects_one(capsys, trefoil):
    with pytest.raises(SystemExit) as e:
        main(["lt-sig", str(trefoil), "--xi", "0/1"])
    assert e.value.code == 2
    assert "ξ = 1 is excluded" in capsys.readouterr().err


def test_lt_profile(capsys, trefoil, tmp_path):
    code, out, _ = run(capsys, "lt-profile", trefoil, "--denominator-max", 6)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p/q,nullity,signature,delta_zero"
    assert [ln.split(",")[0] for ln in lines[1:] if ln.split(",")[1] == "1"] == ["1/6", "5/6"]
    target = tmp_path / "profile.csv"
    assert run(capsys, "lt-profile", trefoil, "--denominator-max", 6, "--out", target)[1] == ""
    assert target.read_text() == out


def test_wall(capsys, data_dir):
    assert run(capsys, "wall", data_dir / "cp2.triad") == (0, "1\n", "")


def test_chain_homology(capsys, data_dir, tmp_path):
    assert run(capsys, "chain-homology", data_dir / "times2.complex")[1] == "H_0 = Z/2, H_1 = 0\n"
    empty = tmp_path / "empty.complex"
    empty.write_text("degrees: 0 -1\n")
    assert run(capsys, "chain-homology", empty)[1] == "H_* = 0\n"


def test_triad_split(capsys, data_dir):
    code, out, _ = run(capsys, "triad-split", data_dir / "example.triad")
    assert code == 0
    assert out.count("quasi-isomorphism") == 4
    assert out.startswith("C'': ")


def test_mk_check(capsys, data_dir):
    code, out, _ = run(capsys, "mk-check", data_dir / "trefoil_unknot.mk")
    assert code == 0
    assert out == "lhs: 2\nrhs: 2\nholds: true\nslack: 0\n"


def test_mk_check_violation_exits_nonzero(capsys, tmp_path):
    f = tmp_path / "bad.mk"
    f.write_text("parity: 1\nxi: 1/2\nb_sigma: 0\nb_sigma0: 0\nb_sigma1: 0\nA0:\n  -1 1\n  0 -1\nA1:\n")
    code, out, _ = run(capsys, "mk-check", f)
    assert code == 1 and "holds: false" in out


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "inv1", "--cases", 50, "--seed", 7)
    assert code == 0
    assert out == "inv1: 50 cases, seed 7: pass\n"


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "all", "--cases", 3, "--seed", 4)
    second = run(capsys, "verify", "all", "--cases", 3, "--seed", 4)
    assert first == second and first[0] == 0
    assert len(first[1].splitlines()) == 8


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "nonsense"])
    assert e.value.code == 2


class TestCorpus:
    def test_table(self, capsys, data_dir):
        code, out, _ = run(capsys, "corpus", data_dir / "corpus")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split() == ["label", "alexander", "sigma(-1)", "nullity(-1)"]
        rows = {ln.split()[0]: ln for ln in lines[1:]}
        assert set(rows) == {"figure-eight", "trefoil", "unknot"}
        assert rows["trefoil"].split()[-2:] == ["-2", "0"]

    def test_csv(self, capsys, data_dir):
        out = run(capsys, "corpus", data_dir / "corpus", "--report", "csv")[1]
        assert "trefoil,1 - t + t^2,-2,0" in out.splitlines()

    def test_two_files(self, capsys, tmp_path, data_dir):
        (tmp_path / "a.seifert").write_text((data_dir / "corpus" / "trefoil.seifert").read_text())
        (tmp_path / "zero.seifert").write_text("parity: 1\nmatrix:\n")
        code, out, _ = run(capsys, "corpus", tmp_path)
        assert code == 0 and len(out.splitlines()) == 3

    def test_empty_directory(self, capsys, tmp_path):
        code, out, err = run(capsys, "corpus", tmp_path)
        assert code == 0 and out.splitlines() == ["label  alexander  sigma(-1)  nullity(-1)"]

    def test_skips_and_reports_bad_files(self, capsys, tmp_path):
        (tmp_path / "good.seifert").write_text("parity: 1\nmatrix:\n")
        (tmp_path / "bad.seifert").write_text("parity: 1\nmatrix:\n 1 2\n")
        code, out, err = run(capsys, "corpus", tmp_path)
        assert code == 0
        assert "skipped bad.seifert" in err
        assert len(out.splitlines()) == 2

    def test_duplicate_labels(self, capsys, tmp_path):
        for name in ("x.seifert", "y.seifert"):
            (tmp_path / name).write_text("label: knot\nparity: 1\nmatrix:\n")
        code, out, err = run(capsys, "corpus", tmp_path)
        assert "warning" in err and "knot" in err
        assert [ln.split()[0] for ln in out.splitlines()[1:]] == ["knot#1", "knot#2"]

    def test_not_a_directory(self, capsys, tmp_path):
        assert run(capsys, "corpus", tmp_path / "missing")[0] == 2


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "cobordism", "wall", str(data_dir / "cp2.triad")],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "1\n"
