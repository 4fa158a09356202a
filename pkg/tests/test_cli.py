import json
import os

import numpy as np
import pytest

from rootdyn.cli import PRESETS, main
from rootdyn.render import read_grid, read_image_ppm


def run(argv):
    return main(argv)


def test_no_command_is_usage_error(capsys):
    assert run([]) == 1
    assert "usage error" in capsys.readouterr().err


def test_unknown_flag_is_usage_error():
    assert run(["param-plane", "--nope"]) == 1


def test_param_plane_writes_outputs(tmp_path, capsys):
    out = tmp_path / "pp.ppm"
    grid = tmp_path / "pp.grid"
    rc = run(["param-plane", "--family", "general", "--n", "4", "--k", "1",
              "--window", "-3.2,3.2,-3.2,3.2", "--res", "61x61",
              "--out", str(out), "--grid-out", str(grid)])
    assert rc == 0
    assert out.exists() and grid.exists()
    # sidecar config next to each output
    assert (tmp_path / "pp.ppm.cfg").exists()
    assert (tmp_path / "pp.grid.cfg").exists()
    captured = capsys.readouterr().out
    assert "to_zero" in captured and "to_infinity" in captured
    g = read_grid(grid)
    assert g.shape == (61, 61)


def test_negative_window_values_accepted(tmp_path):
    out = tmp_path / "d.ppm"
    rc = run(["dyn-plane", "--a", "-10", "--n", "3", "--k", "5",
              "--window", "-0.01,0.01,-0.01,0.01", "--res", "41x41",
              "--out", str(out)])
    assert rc == 0


def test_dyn_plane_requires_parameter(tmp_path):
    assert run(["dyn-plane", "--res", "21x21",
                "--out", str(tmp_path / "x.ppm")]) == 1


def test_bad_window_is_usage_error():
    assert run(["param-plane", "--family", "behl", "--window", "oops"]) == 1


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = behl\nres = 21x21\nwindow = -50,10,-15,15\n")
    out = tmp_path / "c.ppm"
    rc = run(["param-plane", "--config", str(cfg), "--res", "31x31",
              "--out", str(out)])
    assert rc == 0
    img = read_image_ppm(out)
    assert img.shape == (31, 31, 3)  # flag wins over config file


def test_preset_layout(tmp_path):
    assert PRESETS["fig-pparam-left"]["window"] == "-50,10,-15,15"
    out = tmp_path / "p.ppm"
    rc = run(["param-plane", "--preset", "fig-planonuevo44",
              "--res", "21x21", "--out", str(out)])
    assert rc == 0


def test_report_b3_json(tmp_path, capsys):
    rc = run(["report", "--b", "3", "--json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert abs(complex(doc["a_of_b"]) - 5 / 3) < 1e-9
    z1 = [fp for fp in doc["fixed_points"]
          if abs(complex(fp["z"]) - 1) < 1e-8][0]
    assert z1["stability"] == "superattracting"


def test_report_degenerate_banner(capsys):
    rc = run(["report", "--a", "1", "--n", "4", "--k", "1", "--json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["degenerate"] and "banner" in doc


def test_verify_pass_and_filter(capsys):
    assert run(["verify", "--only", "circle"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_verify_mutation_fails(capsys):
    rc = run(["verify", "--only", "reparam",
              "--inject-reparam-error", "1e-6"])
    assert rc == 2
    assert "FAIL" in capsys.readouterr().out


def test_verify_bad_filter_is_usage_error():
    assert run(["verify", "--only", "zzz-no-such-check"]) == 1


def test_curves_z1_circle(tmp_path):
    out = tmp_path / "z1.csv"
    rc = run(["curves", "--point", "z1", "--family", "general",
              "--n", "4", "--k", "1", "--samples", "32", "--out", str(out)])
    assert rc == 0
    rows = out.read_text().strip().split("\n")[1:]
    pts = np.array([[float(v) for v in row.split(",")] for row in rows])
    z = pts[:, 0] + 1j * pts[:, 1]
    assert np.max(np.abs(np.abs(z - 1.75) - 0.25)) < 1e-7


def test_curves_json_output(tmp_path):
    out = tmp_path / "zpm.json"
    rc = run(["curves", "--point", "zpm", "--family", "behl",
              "--samples", "24", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["which_point"] == "zpm"
    assert len(doc["components"]) >= 3


def test_threads_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("ROOTDYN_THREADS", "4")
    out1 = tmp_path / "a.ppm"
    out2 = tmp_path / "b.ppm"
    assert run(["dyn-plane", "--a", "3", "--res", "41x41",
                "--window", "-1.1,1.1,-1.1,1.1", "--out", str(out1)]) == 0
    monkeypatch.delenv("ROOTDYN_THREADS")
    assert run(["dyn-plane", "--a", "3", "--res", "41x41",
                "--window", "-1.1,1.1,-1.1,1.1", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_io_error_exit_code(tmp_path):
    rc = run(["param-plane", "--family", "behl", "--res", "21x21",
              "--out", "/nonexistent-dir/x.ppm"])
    assert rc == 3
