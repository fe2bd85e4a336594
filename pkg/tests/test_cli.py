import json

import pytest

import qnonloc as q
from qnonloc import caps
from qnonloc.cli import main


def test_construct_then_verify_combinatorial(tmp_path, capsys):
    fam_path = tmp_path / "fam.json"
    assert main(["construct", "--d", "4", "--n", "3",
                 "--out", str(fam_path)]) == 0
    out = capsys.readouterr().out
    assert "48 tuples" in out and "xi'=2" in out
    assert main(["verify", str(fam_path), "--combinatorial-only"]) == 0
    out = capsys.readouterr().out
    assert "combinatorial overall: trivial" in out
    assert "oracle" not in out


def test_construct_json_summary(capsys):
    assert main(["construct", "--d", "3", "--n", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["size"] == 18 and doc["beyond_guarantee"] is True


def test_construct_rejects_inadmissible_xi(capsys):
    assert main(["construct", "--d", "4", "--n", "3", "--xi", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_full_verify_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    main(["construct", "--d", "3", "--n", "3", "--out", str(good)])
    capsys.readouterr()
    assert main(["verify", str(good)]) == 0
    assert "oracle" in capsys.readouterr().out

    # a product basis is orthogonal but not nonlocal: oracle says nontrivial
    radix = (2, 2)
    sets = {i: q.TupleSet.from_tuples(radix, [divmod(i, 2)]) for i in range(4)}
    bad = tmp_path / "prod.json"
    q.save_family(q.SetFamily(radix, sets), bad)
    assert main(["verify", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "nontrivial" in out
    # the checker also says nontrivial here, so no disagreement is reported
    assert "DISAGREEMENT" not in out
    # and the combinatorial-only path still completes with exit 0
    assert main(["verify", str(bad), "--combinatorial-only"]) == 0
    capsys.readouterr()


def test_verify_single_cut_json(tmp_path, capsys):
    fam_path = tmp_path / "fam.json"
    main(["construct", "--d", "4", "--n", "3", "--out", str(fam_path)])
    capsys.readouterr()
    report_path = tmp_path / "report.json"
    assert main(["verify", str(fam_path), "--cut", "1", "--format", "json",
                 "--out", str(report_path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["k"] for c in doc["cuts"]] == [1]
    assert doc["agreement"] == "consistent"
    assert doc["oracle"][0]["nullspace_dim"] == 1
    assert json.loads(report_path.read_text()) == doc


def test_verify_bad_cut(tmp_path, capsys):
    fam_path = tmp_path / "fam.json"
    main(["construct", "--d", "3", "--n", "3", "--out", str(fam_path)])
    capsys.readouterr()
    assert main(["verify", str(fam_path), "--cut", "7"]) == 2


def test_tables_directory(tmp_path):
    out = tmp_path / "tables"
    assert main(["tables", "--format", "csv", "--out", str(out),
                 "--diagonal", "4"]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["comparison_d4.csv", "comparison_d5.csv",
                     "comparison_d6.csv", "comparison_d7.csv",
                     "diagonal_d4.csv"]
    first = (out / "comparison_d4.csv").read_text().splitlines()
    assert first[2] == "This work,48,192,768,3072,12288,49152"
    grid = (out / "diagonal_d4.csv").read_text().splitlines()
    assert grid[3] == "2,0,2,0,2"


def test_tables_json(capsys):
    assert main(["tables", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [t["d"] for t in doc["comparison"]] == [4, 5, 6, 7]


def test_export_idempotent(tmp_path, capsys):
    src = tmp_path / "src.json"
    main(["construct", "--d", "4", "--n", "3", "--out", str(src)])
    capsys.readouterr()
    once = tmp_path / "once.json"
    twice = tmp_path / "twice.json"
    assert main(["export", str(src), "--out", str(once)]) == 0
    assert main(["export", str(once), "--out", str(twice)]) == 0
    assert once.read_bytes() == twice.read_bytes()


def test_export_normalizes_layout(tmp_path, capsys):
    messy = tmp_path / "messy.json"
    messy.write_text('{"n": 2, "sets": {"1": [[1, 0]], "0": [[0, 0]]}, "d": 2}')
    assert main(["export", str(messy)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert list(doc) == ["d", "n", "sets", "meta"]
    assert list(doc["sets"]) == ["0", "1"]


def test_import_valid_and_invalid(tmp_path, capsys):
    good = tmp_path / "good.json"
    main(["construct", "--d", "4", "--n", "3", "--out", str(good)])
    capsys.readouterr()
    assert main(["import", str(good)]) == 0
    assert "valid modified family" in capsys.readouterr().out

    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 3, "n": 2, "sets": {"0": [[0, 5]]}}')
    assert main(["import", str(bad)]) == 1
    assert "out of range" in capsys.readouterr().err


def test_missing_file_is_an_error(capsys):
    assert main(["verify", "/nonexistent/family.json"]) == 2
    capsys.readouterr()


def test_env_cap_respected(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(caps.ENV_VAR, "10")
    # 4^3 = 64 tuples > 10: enumeration must refuse
    assert main(["construct", "--d", "4", "--n", "3"]) == 2
    err = capsys.readouterr().err
    assert "cap" in err

    monkeypatch.setenv(caps.ENV_VAR, "100000,16")
    fam_path = tmp_path / "fam.json"
    monkeypatch.delenv(caps.ENV_VAR)
    main(["construct", "--d", "4", "--n", "3", "--out", str(fam_path)])
    capsys.readouterr()
    monkeypatch.setenv(caps.ENV_VAR, "100000,16")
    # operator space for d=4, n=3 is 16**2 = 256 > 16: oracle must refuse
    assert main(["verify", str(fam_path)]) == 2
    assert "cap" in capsys.readouterr().err
    # combinatorial path does not touch the operator cap
    assert main(["verify", str(fam_path), "--combinatorial-only"]) == 0
    capsys.readouterr()


def test_parser_rejects_bad_xi():
    with pytest.raises(SystemExit):
        main(["construct", "--d", "4", "--n", "3", "--xi", "weird"])
