import csv
import json
import math
import os

import numpy as np
import pytest

from djcm.cli import main

BASE_CONFIG = {
    "params": {
        "omega_cavity": 0.2,
        "omega_levels": [0.3, 0.4, 0.5],
        "g1": 0.04,
        "g2": 0.06,
        "omega_e": 0.04,
        "chi": 0.0,
        "sector_n": 1,
    },
    "tau_max": 50.0,
    "samples": 2000,
}


def write_config(tmp_path, name="run.json", **overrides):
    doc = json.loads(json.dumps(BASE_CONFIG))
    doc.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def read_csv_columns(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [list(map(float, row)) for row in reader]
    data = np.array(rows)
    return header, {name: data[:, i] for i, name in enumerate(header)}


def tree_bytes(root):
    out = {}
    for dirpath, _, filenames in os.walk(root):
        for name in filenames:
            path = os.path.join(dirpath, name)
            with open(path, "rb") as fh:
                out[os.path.relpath(path, root)] = fh.read()
    return out


def test_simulate_fig_row_outputs(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    header, cols = read_csv_columns(out / "populations.csv")
    assert header == ["tau", "P1", "P2", "P3"]
    assert len(cols["tau"]) == 2000
    for name in ("P1", "P2", "P3"):
        assert cols[name].min() >= 0.0
        assert cols[name].max() <= 1.0 + 1e-12
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["method"] == "Analytic"
    assert manifest["version"]
    assert manifest["backend"] in ("numba", "numpy")
    assert manifest["norm_drift_max"] <= 1e-9
    assert manifest["root_max_residual"] <= 1e-12
    assert manifest["config"]["params"]["omega_levels"] == [0.3, 0.4, 0.5]
    assert "populations.csv" in manifest["outputs"]


def test_simulate_boundary_two_samples(tmp_path):
    cfg = write_config(tmp_path, tau_max=1.0, samples=2, observables=["populations"], svg=False)
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    header, cols = read_csv_columns(out / "populations.csv")
    assert len(cols["tau"]) == 2
    assert cols["tau"][0] == 0.0
    assert cols["P2"][0] == 1.0
    assert cols["P1"][0] == 0.0


def test_simulate_force_oracle(tmp_path):
    cfg = write_config(tmp_path, observables=["inversion"], svg=False, samples=200, tau_max=10.0)
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--force-oracle", "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["method"] == "Oracle"
    assert manifest["root_max_residual"] is None


def test_simulate_invalid_observable_exits_2(tmp_path, capsys):
    cfg = write_config(tmp_path, observables=["populations", "wigner"])
    assert main(["simulate", "--config", cfg, "--out", str(tmp_path / "x")]) == 2
    err = capsys.readouterr().err
    assert "observables" in err and "wigner" in err


def test_simulate_missing_config_exits_2(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "none.json"), "--out", str(tmp_path)]) == 2


def test_simulate_byte_identical_reruns(tmp_path):
    cfg = write_config(
        tmp_path,
        samples=300,
        tau_max=20.0,
        observables=["populations", "squeezing", "husimi"],
        husimi={"range": 2.0, "resolution": 31, "tau": 10.0},
    )
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert main(["simulate", "--config", cfg, "--out", str(out_a)]) == 0
    assert main(["simulate", "--config", cfg, "--out", str(out_b)]) == 0
    assert tree_bytes(out_a) == tree_bytes(out_b)


def test_simulate_sweep(tmp_path):
    cfg = write_config(
        tmp_path,
        samples=100,
        tau_max=10.0,
        observables=["inversion"],
        svg=False,
        sweep={"axes": [["chi", [0.0, 0.2]]]},
    )
    out = tmp_path / "sweep"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    manifest = json.loads((out / "sweep_manifest.json").read_text())
    assert [p["label"] for p in manifest["points"]] == ["chi=0", "chi=0.2"]
    for label in ("chi=0", "chi=0.2"):
        assert (out / label / "inversion.csv").exists()
        assert (out / label / "manifest.json").exists()


def test_figures_fig2_panels(tmp_path):
    out = tmp_path / "f2"
    assert main(["figures", "fig2", "--out", str(out)]) == 0
    manifest = json.loads((out / "fig2_manifest.json").read_text())
    assert len(manifest["panels"]) == 9
    for letter in "abcdefghi":
        assert (out / f"fig2{letter}.csv").exists()
        assert (out / f"fig2{letter}.svg").exists()
    header, cols = read_csv_columns(out / "fig2e.csv")
    assert header == ["tau", "P2"]
    assert 0.0 <= cols["P2"].min() and cols["P2"].max() <= 1.0


def test_figures_fig5_entropy_bounds(tmp_path):
    out = tmp_path / "f5"
    assert main(["figures", "fig5", "--out", str(out)]) == 0
    for letter in "abc":
        _, cols = read_csv_columns(out / f"fig5{letter}.csv")
        assert cols["S"].min() >= -1e-12
        assert cols["S"].max() <= math.log(2.0) + 1e-12


def test_figures_fig7_heatmaps(tmp_path):
    out = tmp_path / "f7"
    assert main(["figures", "fig7", "--out", str(out)]) == 0
    manifest = json.loads((out / "fig7_manifest.json").read_text())
    assert len(manifest["panels"]) == 2
    assert manifest["panels"][0]["chi"] == 0.0
    assert manifest["panels"][1]["chi"] == 0.2
    header, cols = read_csv_columns(out / "fig7a.csv")
    assert header == ["x", "y", "q"]
    assert cols["q"].min() >= 0.0
    assert len(cols["q"]) == 121 * 121
    assert (out / "fig7b.svg").exists()


def test_figures_fig8_four_panels(tmp_path):
    out = tmp_path / "f8"
    assert main(["figures", "fig8", "--out", str(out)]) == 0
    manifest = json.loads((out / "fig8_manifest.json").read_text())
    assert [p["name"] for p in manifest["panels"]] == ["fig8a", "fig8b", "fig8c", "fig8d"]
    header, cols = read_csv_columns(out / "fig8a.csv")
    assert header == ["tau", "s1_x", "s1_p"]
    np.testing.assert_array_equal(cols["s1_x"], cols["s1_p"])
    assert cols["s1_x"].min() >= 0.0
    header, cols = read_csv_columns(out / "fig8d.csv")
    assert header == ["tau", "s2_x", "s2_p"]


def test_figures_rejects_unknown_id():
    with pytest.raises(SystemExit):
        main(["figures", "fig9"])


def test_husimi_command(tmp_path):
    out = tmp_path / "h"
    assert main(["husimi", "--t", "25", "--range", "3", "--resolution", "41", "--out", str(out)]) == 0
    manifest = json.loads((out / "husimi_manifest.json").read_text())
    assert manifest["mode"] == "single"
    assert manifest["params"]["chi"] == 0.2
    header, cols = read_csv_columns(out / "husimi.csv")
    assert cols["q"].min() >= 0.0


def test_husimi_all_sectors(tmp_path):
    out = tmp_path / "ha"
    assert main(["husimi", "--t", "0", "--range", "2", "--resolution", "21", "--all-sectors", "60", "--out", str(out)]) == 0
    manifest = json.loads((out / "husimi_manifest.json").read_text())
    assert manifest["mode"] == "all"
    assert manifest["n_max"] == 60
    _, cols = read_csv_columns(out / "husimi.csv")
    # the literal all-sector sum at t = 0 is flat at 1/pi
    assert np.max(np.abs(cols["q"] - 1.0 / math.pi)) <= 1e-10


def test_husimi_validation_errors(tmp_path):
    assert main(["husimi", "--t", "-1", "--out", str(tmp_path)]) == 2
    assert main(["husimi", "--t", "1", "--resolution", "1", "--out", str(tmp_path)]) == 2
    assert main(["husimi", "--t", "1", "--range", "0", "--out", str(tmp_path)]) == 2


def test_validate_deterministic_and_passing(capsys):
    assert main(["validate", "--tuples", "120"]) == 0
    first = capsys.readouterr().out
    assert main(["validate", "--tuples", "120"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "result: PASS (10/10)" in first
    assert first.count("PASS") == 11  # ten criteria plus the summary line


def test_validate_seed_changes_sweep_but_not_verdict(capsys):
    assert main(["validate", "--tuples", "60", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "seed: 7" in out
    assert "result: PASS" in out


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["simulate"])  # missing --config
    assert exc.value.code == 2


def test_figures_byte_identical_reruns(tmp_path):
    out_a = tmp_path / "fa"
    out_b = tmp_path / "fb"
    assert main(["figures", "fig3", "--out", str(out_a)]) == 0
    assert main(["figures", "fig3", "--out", str(out_b)]) == 0
    assert tree_bytes(out_a) == tree_bytes(out_b)


def test_worker_cap_does_not_change_output(tmp_path, monkeypatch):
    out_serial = tmp_path / "serial"
    out_pooled = tmp_path / "pooled"
    monkeypatch.setenv("DJCM_THREADS", "1")
    assert main(["figures", "fig7", "--out", str(out_serial)]) == 0
    monkeypatch.setenv("DJCM_THREADS", "2")
    assert main(["figures", "fig7", "--out", str(out_pooled)]) == 0
    assert tree_bytes(out_serial) == tree_bytes(out_pooled)


def test_worker_cap_validation(monkeypatch, tmp_path):
    monkeypatch.setenv("DJCM_THREADS", "many")
    assert main(["figures", "fig3", "--out", str(tmp_path / "x")]) == 2


def test_io_error_exit_code(monkeypatch):
    assert main(["figures", "fig3", "--out", "/proc/definitely/not/writable"]) == 3


def test_husimi_manifest_quality_metrics(tmp_path):
    out = tmp_path / "hq"
    assert main(["husimi", "--t", "10", "--resolution", "21", "--out", str(out)]) == 0
    manifest = json.loads((out / "husimi_manifest.json").read_text())
    assert manifest["method"] == "Analytic"
    assert manifest["norm_drift_max"] <= 1e-9
    assert manifest["root_max_residual"] is not None
