from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cubiccensus.cli import main

ZERO19 = ",".join(["0"] * 19)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_predict(capsys):
    code, out, _ = run(["predict", "--q", "2"], capsys)
    assert code == 0 and "322560" in out and "20160" in out


def test_predict_list_and_json(capsys):
    code, out, _ = run(["predict", "--q", "2,3,4,5", "--json"], capsys)
    doc = json.loads(out)
    assert code == 0 and [d["q"] for d in doc] == [2, 3, 4, 5]
    assert doc[1]["predicted_smooth_surfaces"] == 982575360


def test_spectral(capsys, tmp_path):
    dump = tmp_path / "pages.json"
    code, out, _ = run(["spectral", "--dump", str(dump)], capsys)
    assert code == 0 and "Betti numbers: 1 2 1 2 4 2 1 2 1" in out
    assert "FAIL" not in out
    assert json.loads(dump.read_text())["E1"]["10,13"] == 1


def test_smooth_and_witness(capsys):
    code, out, _ = run(["smooth", "--q", "2", "--form", "fermat"], capsys)
    assert code == 0 and "verdict: smooth" in out
    code, out, _ = run(["smooth", "--q", "2", "--form", "1," + ZERO19], capsys)
    assert code == 0 and "verdict: singular" in out and "witness: [0:1:0:0]" in out
    code, out, _ = run(["smooth", "--q", "2", "--form", "fermat", "--oracle", "sieve"], capsys)
    assert "verdict: smooth" in out


def test_lines_fermat(capsys):
    code, out, _ = run(["lines", "--q", "2", "--form", "fermat"], capsys)
    assert code == 0 and "lines: 3" in out
    assert "<1 1 0 0 | 0 0 1 1>" in out


def test_census_q2(capsys, tmp_path):
    code, out, _ = run(["census", "--q", "2", "--out", str(tmp_path)], capsys)
    assert code == 0 and "smooth surfaces #M: 322560" in out
    assert len(list(tmp_path.glob("*.json"))) == 1 and len(list(tmp_path.glob("*.csv"))) == 1


def test_sample(capsys):
    code, out, _ = run(["sample", "--q", "7", "--n", "500", "--seed", "42"], capsys)
    assert code == 0 and "mean lines per smooth surface" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["census"],
        ["census", "--q", "6"],
        ["census", "--q", "2,3"],
        ["census", "--q", "7"],
        ["census", "--q", "2", "--checkpoint", "a", "--resume", "b"],
        ["census", "--q", "2", "--workers", "0"],
        ["sample", "--q", "7", "--n", "0"],
        ["smooth", "--q", "2", "--form", "1,2"],
        ["smooth", "--q", "3", "--form", "fermat", "--oracle", "resultant"],
        ["predict", "--q", "x"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_identity_failure_exits_1(capsys):
    code, _, err = run(["lines", "--q", "3", "--form", "fermat"], capsys)
    assert code == 1 and "smooth" in err
    code, _, err = run(["census", "--q", "3"], capsys)
    assert code == 1 and "allow_long" in err


def test_census_failure_prints_diff(monkeypatch, capsys):
    from cubiccensus import census

    real = census.run_census

    def tampered(*a, **k):
        r = real(*a, **k)
        r.per_line[0] += 1
        return r

    monkeypatch.setattr(census, "run_census", tampered)
    code, _, err = run(["census", "--q", "2"], capsys)
    assert code == 1 and "expected vs observed" in err and "differs" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cubiccensus", "predict", "--q", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "322560" in res.stdout
