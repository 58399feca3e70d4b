import csv
import io
import json
import math

import numpy as np
import pytest

from infophys import classical_info as ci
from infophys import io as iox
from infophys.cli import main
from infophys.errors import ValidationError
from infophys.scenarios import SCENARIOS, ScenarioConfig, point_seed, run_scenario


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --- distribution files --------------------------------------------------


def test_distribution_round_trip(tmp_path):
    d = ci.Distribution(["a", "b", "c"], [0.2, 0.3, 0.5])
    for name in ("d.json", "d.csv"):
        iox.dump_distribution(d, tmp_path / name)
        back = iox.load_distribution(tmp_path / name)
        assert back.labels == d.labels
        assert np.array_equal(back.probs, d.probs)


def test_joint_round_trip(tmp_path):
    jd = ci.peres_key_joint(places=3)
    for name in ("j.json", "j.csv"):
        iox.dump_distribution(jd, tmp_path / name)
        back = iox.load_distribution(tmp_path / name)
        assert back.x_labels == jd.x_labels
        np.testing.assert_allclose(back.probs, jd.probs, atol=1e-15)


def test_headerless_csv_and_renormalize(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("heads,2\ntails,6\n")
    with pytest.raises(ValidationError):
        iox.load_distribution(p)
    assert iox.load_distribution(p, renormalize=True).prob("tails") == 0.75
    p.write_text("a,b,c,d\n1,2,3,4\n")
    with pytest.raises(ValidationError):
        iox.load_distribution(p)


# --- record serialization ------------------------------------------------


def test_csv_records():
    rows = [{"a": 1, "b": 0.1, "ok": True}, {"a": 2, "c": "x,y"}]
    text = iox.records_to_csv(rows)
    assert text.endswith("\r\n")
    back = list(csv.DictReader(io.StringIO(text)))
    assert back[0] == {"a": "1", "b": "0.1", "ok": "true", "c": ""}
    assert back[1]["c"] == "x,y"
    # floats round-trip exactly through repr
    assert float(back[0]["b"]) == 0.1


def test_json_records_are_strict():
    text = iox.records_to_json([{"x": np.float64(0.5), "y": math.nan, "n": np.int64(3)}])
    assert json.loads(text) == [{"x": 0.5, "y": None, "n": 3}]
    with pytest.raises(ValidationError):
        iox.emit([{"x": 1}], "xml")


# --- config --------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValidationError):
        ScenarioConfig.from_dict({"schema": 2, "scenario": "peres"})
    with pytest.raises(ValidationError):
        ScenarioConfig.from_dict({"scenario": "peres", "colour": "blue"})
    with pytest.raises(ValidationError):
        ScenarioConfig.from_dict({"scenario": "nope"})
    with pytest.raises(ValidationError):
        ScenarioConfig.from_dict({"scenario": "capacity", "grid": {"snr": []}})
    cfg = ScenarioConfig.from_dict({"schema": 1, "scenario": "capacity", "seed": 3})
    assert cfg.seed == 3
    assert len(cfg.points()) >= 1


def test_point_seeds_are_distinct_and_stable():
    seeds = [point_seed(7, i) for i in range(50)]
    assert len(set(seeds)) == 50
    assert seeds == [point_seed(7, i) for i in range(50)]


def test_every_scenario_has_a_description():
    assert all(s.description for s in SCENARIOS.values())


# --- command line --------------------------------------------------------


def test_list(capsys):
    assert main(["--list"]) == 0
    out = capsys.readouterr().out
    for name in SCENARIOS:
        assert name in out


def test_peres_rows(tmp_path):
    out = tmp_path / "peres.csv"
    assert main(["--scenario", "peres", "--out", str(out)]) == 0
    (row,) = _read_csv(out)
    assert float(row["H_X"]) == pytest.approx(0.7856, abs=1e-3)
    assert row["base"] == "e"


def test_line_count_matches_grid(tmp_path):
    out = tmp_path / "cap.csv"
    assert main(["--scenario", "capacity", "--grid", "beta=0,0.3,0.6", "--grid", "snr=1,3", "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 6
    assert [int(r["point"]) for r in rows] == list(range(6))


def test_unknown_parameter_rejected(tmp_path):
    out = tmp_path / "x.csv"
    assert main(["--scenario", "capacity", "--grid", "alpha=0,1", "--out", str(out)]) == 2
    assert not out.exists()


def test_user_grid_merges_with_default_axes():
    cfg = ScenarioConfig("temperature", grid={"beta": [0.1, 0.2]})
    n_theta = len(SCENARIOS["temperature"].default_grid["theta"])
    assert len(cfg.points()) == 2 * n_theta
    cfg = ScenarioConfig("temperature", grid={"beta": [0.1, 0.2]}, params={"theta": 0.0})
    assert len(cfg.points()) == 2


def test_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["--scenario", "equilibrate", "--grid", "n=2,3", "--set", "steps=5", "--seed", "9"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_workers_do_not_change_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["--scenario", "replica-check", "--grid", "dim=2,3,4,5"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--workers", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_column_is_opt_in(tmp_path):
    out = tmp_path / "t.csv"
    main(["--scenario", "bell-entropies", "--out", str(out)])
    assert "wall_time_ms" not in _read_csv(out)[0]
    main(["--scenario", "bell-entropies", "--timing", "--out", str(out)])
    assert float(_read_csv(out)[0]["wall_time_ms"]) >= 0


def test_empty_grid_writes_nothing(tmp_path, capsys):
    out = tmp_path / "never.csv"
    assert main(["--scenario", "capacity", "--grid", "beta=", "--out", str(out)]) == 2
    assert not out.exists()
    assert "error" in capsys.readouterr().err


def test_failed_point_sets_exit_code(tmp_path):
    out = tmp_path / "partial.csv"
    code = main(["--scenario", "temperature", "--set", "theta=0", "--grid", "beta=0.5,1.5", "--out", str(out)])
    assert code == 1
    assert len(_read_csv(out)) == 1


def test_config_from_stdin(tmp_path, monkeypatch):
    cfg = {"schema": 1, "scenario": "bell-entropies", "grid": {"kind": ["psi-", "phi+"]}, "format": "json"}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(cfg)))
    out = tmp_path / "bell.json"
    assert main(["--config", "-", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert [r["kind"] for r in rows] == ["psi-", "phi+"]
    assert all(r["S_A"] == pytest.approx(1.0, abs=1e-12) for r in rows)


def test_base_flag(tmp_path):
    out = tmp_path / "b.csv"
    main(["--scenario", "bell-entropies", "--base", "e", "--out", str(out)])
    assert float(_read_csv(out)[0]["S_A"]) == pytest.approx(math.log(2), abs=1e-12)


def test_plot_writes_png(tmp_path):
    out = tmp_path / "cap.csv"
    assert main(["--scenario", "capacity", "--plot", "--out", str(out)]) == 0
    png = tmp_path / "cap.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_needs_out():
    assert main(["--scenario", "capacity", "--plot"]) == 2


def test_run_scenario_api():
    recs = run_scenario(ScenarioConfig("bh-accrete", grid={"n_modes": [1, 2]}))
    assert [r.outputs["S_M"] for r in recs] == pytest.approx([1.0, 2.0], abs=1e-9)
