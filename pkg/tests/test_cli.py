"""CLI verbs end to end (synthetic inputs or small generated tables)."""

import csv
import io
import json

import pytest

from zetacorr import cli
from zetacorr.zeros import synthetic_catalog


@pytest.fixture
def table_file(tmp_path):
    p = tmp_path / "z.txt"
    synthetic_catalog("unfolded-model", seed=0, t_max=1200.0).save(p)
    return p


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_weights(capsys):
    assert cli.main(["weights", "--u-grid=-2:2:1"]) == 0
    out = rows(capsys.readouterr().out)
    assert out[0] == ["u", "w10", "w11", "w12", "w13"]
    assert out[3][1:] == ["1.0"] * 4
    assert cli.main(["weights", "--k", "0", "--u-grid", "0,2"]) == 0
    assert rows(capsys.readouterr().out) == [["u", "w"], ["0.0", "1.0"], ["2.0", "0.5"]]


def test_ingest_and_save(table_file, tmp_path, capsys):
    out = tmp_path / "copy.txt"
    assert cli.main(["ingest", "--zeros", str(table_file), "--save", str(out), "--out", "json"]) == 0
    info = json.loads(capsys.readouterr().out)[0]
    assert info["t_max"] == 1200.0
    body = lambda f: [l for l in f.read_text().splitlines() if not l.startswith("# source")]
    assert body(out) == body(table_file)


def test_paircorr(table_file, capsys):
    assert cli.main(["paircorr", "--zeros", str(table_file), "--T", "1000", "--alpha-grid", "0.5,0.8"]) == 0
    out = rows(capsys.readouterr().out)
    assert out[0] == ["alpha", "x", "value", "prediction", "rel_err", "tail_bound", "imag_residual"]
    assert len(out) == 3


@pytest.mark.parametrize("action", ["cardinality", "moments", "delta", "gmu", "nmu", "logtau"])
def test_ordsums_actions(table_file, action, capsys):
    assert cli.main(["ordsums", action, "--zeros", str(table_file), "--T", "300", "--mu", "2"]) == 0
    assert len(rows(capsys.readouterr().out)) >= 2


def test_ordsums_build_roundtrip(table_file, tmp_path, capsys):
    f = tmp_path / "ms.txt"
    assert cli.main(["ordsums", "build", "--zeros", str(table_file), "--T", "200", "--out", str(f)]) == 0
    assert cli.main(["ordsums", "cardinality", "--from-file", str(f), "--T", "200"]) == 0
    first = rows(capsys.readouterr().out)
    assert cli.main(["ordsums", "cardinality", "--zeros", str(table_file), "--T", "200"]) == 0
    assert rows(capsys.readouterr().out)[1][2] == first[1][2]


def test_ordsums_caltech(table_file, capsys):
    assert cli.main(["ordsums", "caltech", "--zeros", str(table_file), "--T", "500", "--a", "1"]) == 0
    assert rows(capsys.readouterr().out)[0][-3:] == ["exact", "main", "ratio"]


def test_arith(table_file, capsys):
    assert cli.main(["arith", "lemma", "--which", "beef", "--x", "1000"]) == 0
    assert rows(capsys.readouterr().out)[0] == ["name", "x", "exact", "main", "ratio", "error_scale"]
    assert cli.main(["arith", "gonek", "--zeros", str(table_file), "--n", "2", "--T", "1000"]) == 0
    assert len(rows(capsys.readouterr().out)) == 2
    assert cli.main(["arith", "phi", "--zeros", str(table_file), "--n", "2", "--T", "200"]) == 0
    assert len(rows(capsys.readouterr().out)) == 2
    assert cli.main(["arith", "gonek", "--n", "2"]) == 2


def test_explicit_check_window(table_file, capsys):
    assert cli.main(["explicit-check", "--zeros", str(table_file), "--x-grid", "2", "--t-grid", "25", "--nu", "1", "--window", "500"]) == 0
    out = rows(capsys.readouterr().out)
    assert out[0][:4] == ["x", "t", "nu", "k"]


def test_errors_exit_nonzero(table_file, capsys):
    assert cli.main(["paircorr", "--zeros", str(table_file), "--T", "1e6"]) == 1
    assert "error:" in capsys.readouterr().err


def test_run(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text('[run]\nsynthetic = {kind = "poisson", seed = 2, t_max = 300.0}\noutput = "out"\n\n[[stanza]]\nkind = "figure-1"\n')
    assert cli.main(["run", str(cfg), "--strict"]) == 0
    assert (tmp_path / "out" / "summary.json").exists()
    assert (tmp_path / "out" / "figure-1_weights.csv").exists()
