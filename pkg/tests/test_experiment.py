"""Config validation, stanza runs on synthetic catalogs, output schema and determinism."""

import json

import pytest

from zetacorr import experiment
from zetacorr.exceptions import ConfigError, StanzaError
from zetacorr.reports import check_report, make_report


def base(**over):
    cfg = {
        "run": {"synthetic": {"kind": "unfolded-model", "seed": 1, "t_max": 600.0}, "T": [500.0]},
        "stanza": [{"kind": "figure-1"}],
    }
    cfg.update(over)
    return cfg


def test_empty_T_list_rejected():
    data = base()
    data["stanza"] = [{"kind": "theorem-1", "T": [], "params": [[1, 0]], "alpha": [0.5]}]
    with pytest.raises(ConfigError, match="T must be a non-empty list"):
        experiment.parse_config(data)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d["run"].update(zeros="x.txt"),
        lambda d: d.update(stanza=[]),
        lambda d: d.update(stanza=[{"kind": "nope"}]),
        lambda d: d.update(tolerances={"theorem1": -1}),
        lambda d: d.update(tolerances={"unknown": 1}),
        lambda d: d["run"].update(window=0),
        lambda d: d.update(stanza=[{"kind": "theorem-1", "params": [[0.4, 0]], "alpha": [0.1]}]),
        lambda d: d.update(stanza=[{"kind": "figure-1"}, {"kind": "figure-1"}]),
        lambda d: d.update(extra=1),
    ],
)
def test_schema_errors(mutate):
    data = base()
    mutate(data)
    with pytest.raises(ConfigError):
        experiment.parse_config(data)


def test_load_config_from_toml(tmp_path):
    p = tmp_path / "c.toml"
    p.write_text('[run]\nsynthetic = {kind = "poisson", seed = 2, t_max = 300.0}\n\n[[stanza]]\nkind = "figure-1"\n')
    cfg = experiment.load_config(p)
    assert cfg.synthetic["kind"] == "poisson"
    assert cfg.tolerances == experiment.DEFAULT_TOLERANCES
    p.write_text("[run\n")
    with pytest.raises(ConfigError):
        experiment.load_config(p)


def test_figure1_headers(tmp_path):
    cfg = experiment.parse_config(base())
    bundle = experiment.run_experiment(cfg)
    paths = experiment.emit_plot_data(bundle, tmp_path)
    head = paths[0].read_text().splitlines()[0]
    assert head == "u,w10,w11,w12,w13"
    assert paths[0].read_bytes().count(b"\r\n") == 402


def synthetic_cfg():
    return base(
        stanza=[
            {"kind": "figure-1"},
            {"kind": "theorem-1", "T": [500.0], "params": [[1, 0], [1, 1]], "alpha": [0.2, 0.5], "spike_alpha": 0.05},
            {"kind": "cardinality", "T": [200.0, 400.0], "mu": [2], "prefix": 30},
            {"kind": "theorem-2", "T": [300.0], "mu": [2], "alpha": [0.1]},
            {"kind": "gonek", "T": [500.0], "n": [2, 3], "phi_T": 200.0},
            {"kind": "explicit", "x": [2.0], "t": [20.0], "nu": [1.0]},
        ]
    )


def test_synthetic_run_is_deterministic(tmp_path):
    cfg = experiment.parse_config(synthetic_cfg())
    a = experiment.write_bundle(experiment.run_experiment(cfg), tmp_path / "a")
    b = experiment.write_bundle(experiment.run_experiment(cfg), tmp_path / "b")
    assert [p.name for p in a] == [p.name for p in b]
    for pa, pb in zip(a, b):
        assert pa.read_bytes() == pb.read_bytes(), pa.name


def test_parallel_matches_serial(tmp_path):
    data = synthetic_cfg()
    serial = experiment.run_experiment(experiment.parse_config(data))
    data["run"]["jobs"] = 3
    par = experiment.run_experiment(experiment.parse_config(data))
    assert experiment.write_bundle(serial, tmp_path / "s")[-1].read_bytes() == experiment.write_bundle(par, tmp_path / "p")[-1].read_bytes()


def test_summary_counts_and_overlay_header(tmp_path):
    cfg = experiment.parse_config(synthetic_cfg())
    bundle = experiment.run_experiment(cfg)
    experiment.write_bundle(bundle, tmp_path)
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["n_reports"] == len(summary["reports"]) == summary["n_passed"] + summary["n_failed"]
    overlay = tmp_path / "theorem-1_F_nu1_k0_T500.csv"
    assert overlay.read_text().splitlines()[0] == "alpha,measured,predicted"
    g2 = tmp_path / "theorem-2_G2_T300.csv"
    assert g2.read_text().splitlines()[0] == "alpha,measured,predicted"
    text = (tmp_path / "summary.json").read_text()
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"


def test_stanza_errors_name_the_stanza():
    data = base(stanza=[{"kind": "theorem-1", "name": "too-high", "T": [5000.0], "params": [[1, 0]], "alpha": [0.5]}])
    with pytest.raises(StanzaError, match="too-high"):
        experiment.run_experiment(experiment.parse_config(data))


def test_report_modes():
    assert make_report("r", 1.2, 1.0, 0.25).passed
    f = make_report("f", 0.6, 1.0, 1.0, mode="factor")
    assert f.rel_err == pytest.approx(2 / 3) and f.passed
    assert not make_report("f", 0.4, 1.0, 1.0, mode="factor").passed
    u = make_report("u", 0.19, 0.2, 1.0, mode="upper")
    assert u.passed and not make_report("u", 0.21, 0.2, 1.0, mode="upper").passed
    assert check_report("c", True).passed and not check_report("c", False).passed
    with pytest.raises(ValueError):
        make_report("x", 1, 1, mode="weird")
