import json

import numpy as np
import pytest

from spinsurf import ConfigError, Grid, fileio, synth
from spinsurf.cli import main, parse_config


def write_spin(path, grid, seed=0):
    S = synth.smooth_spin(grid, seed=seed)
    fileio.write_field(path, S)
    return S


class TestParseConfig:
    def test_simulate_flags(self):
        cfg = parse_config(["simulate", "--model", "hf", "--nx", "128",
                            "--dx", "0.1", "--dt", "0.0005",
                            "--steps", "1000"])
        assert cfg.command == "simulate"
        assert cfg.get("nx") == 128 and cfg.get("dt") == 0.0005
        assert cfg.get("steps") == 1000

    def test_bad_real_value(self, tmp_path):
        cfg_file = tmp_path / "c.cfg"
        cfg_file.write_text("dt = fast\n")
        with pytest.raises(ConfigError, match="dt"):
            parse_config(["simulate", "--config", str(cfg_file)])

    def test_unknown_config_key(self, tmp_path):
        cfg_file = tmp_path / "c.cfg"
        cfg_file.write_text("warp = 9\n")
        with pytest.raises(ConfigError, match="warp"):
            parse_config(["simulate", "--config", str(cfg_file)])

    def test_flags_override_file(self, tmp_path):
        cfg_file = tmp_path / "c.cfg"
        cfg_file.write_text("dt = 0.5\nsteps = 3  # trailing comment\n")
        cfg = parse_config(["simulate", "--config", str(cfg_file),
                            "--dt", "0.25"])
        assert cfg.get("dt") == 0.25 and cfg.get("steps") == 3

    def test_params_collected(self):
        cfg = parse_config(["check", "--param", "a1=1.5", "--param", "b2=-1"])
        assert cfg.params == {"a1": 1.5, "b2": -1.0}


class TestExitCodes:
    def test_unknown_model_is_config_error(self, tmp_path):
        rc = main(["simulate", "--model", "m-foo", "--nx", "16", "--dx", "0.2",
                   "--boundary", "periodic", "--dt", "1e-3", "--steps", "1",
                   "--output", str(tmp_path)])
        assert rc == 2

    def test_missing_input_file_is_io_error(self, tmp_path):
        rc = main(["reconstruct", "--input", str(tmp_path / "nope.csv"),
                   "--output", str(tmp_path / "m.obj")])
        assert rc == 4

    def test_malformed_field_file_is_io_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("not a field\n")
        rc = main(["check", "--model", "hf", "--input", str(bad)])
        assert rc == 4

    def test_success_is_zero(self, tmp_path, capsys):
        rc = main(["catalog", "list"])
        assert rc == 0


class TestCatalogCommand:
    def test_list_line_count_and_shape(self, capsys):
        main(["catalog", "list"])
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 33              # 27 registry entries + 6 named flows
        assert all(len(ln.split("\t")) == 5 for ln in lines)
        assert lines[0].startswith("M-LVII\tA\tnone\ts3\t")

    def test_show_implemented(self, capsys):
        assert main(["catalog", "show", "m-xxxiv"]) == 0
        out = capsys.readouterr().out
        assert "advection" in out and "trform" in out

    def test_show_unknown(self, capsys):
        assert main(["catalog", "show", "m-foo"]) == 2


class TestEndToEnd:
    def test_check_writes_report(self, tmp_path, capsys):
        g = Grid(24, 24, 0.3, 0.3, "periodic")
        spin = tmp_path / "S.csv"
        write_spin(spin, g, seed=41)
        out = tmp_path / "rep.json"
        rc = main(["check", "--model", "lle", "--input", str(spin),
                   "--output", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["model"] == "lle"
        assert doc["vector_residual"]["max"] > 0.0

    def test_reconstruct_writes_mesh(self, tmp_path, capsys):
        g = Grid(16, 16, 0.25, 0.25, "clamped")
        spin = tmp_path / "S.csv"
        write_spin(spin, g, seed=42)
        obj = tmp_path / "m.obj"
        rc = main(["reconstruct", "--input", str(spin), "--coeffs", "hf",
                   "--output", str(obj), "--report", str(tmp_path / "r.json")])
        assert rc == 0
        assert obj.read_text().count("\nf ") == 15 * 15 - 1 + 1

    def test_simulate_snapshot_files(self, tmp_path, capsys):
        outdir = tmp_path / "run"
        rc = main(["simulate", "--model", "hf", "--nx", "32", "--dx", "0.2",
                   "--boundary", "periodic", "--dt", "0.002", "--steps", "10",
                   "--snapshot-every", "5", "--seed", "1",
                   "--output", str(outdir)])
        assert rc == 0
        snaps = sorted(p.name for p in outdir.glob("snap_*_S.csv"))
        assert snaps == ["snap_000000_S.csv", "snap_000001_S.csv",
                        "snap_000002_S.csv"]
        doc = json.loads((outdir / "report.json").read_text())
        assert len(doc["diagnostics"]) == 3

    def test_zc_reports_residual(self, tmp_path, capsys):
        n = 32
        x = np.linspace(0.0, 4.0, n)
        t = np.linspace(0.0, 1.0, 5)
        X, T = np.meshgrid(x, t)
        k = 1.0 + 0.3 * np.sin(X - T)
        tau = 0.1 * np.cos(X + T)
        curve = tmp_path / "c.csv"
        fileio.write_curve(curve, k, tau, x[1] - x[0], t[1] - t[0])
        rc = main(["zc", "--input", str(curve),
                   "--output", str(tmp_path / "z.json")])
        assert rc == 0
        doc = json.loads((tmp_path / "z.json").read_text())
        assert doc["diagnostics"][0]["zc_residual_max"] < 0.1
