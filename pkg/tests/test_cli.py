import json
import warnings

import pytest

from purcell2d.cli import main

BASE = {
    "geometry": {"lx_um": 3.0, "ly_um": 3.0},
    "stack": {
        "layers": [{"thickness_um": 0.2, "model": {"type": "constant", "eps": 12.96}}]
    },
    "mode": {"type": "cavity", "n": 1},
    "emitter": {
        "well": {
            "type": "infinite_well",
            "width_nm": 10.0,
            "delta_e_mev": 80.0,
            "masses_m0": [0.067, 0.067],
        },
        "populations": {"type": "inverted", "n1": 0.2, "n2": 0.05},
        "gamma21_mev": 5.0,
        "k_grid": {"k_max_per_cm": 3e6, "points": 64},
    },
    "langevin": {"gamma_r_mev": 1.0, "gamma_sigma_mev": 0.5},
}


def write_config(tmp_path, overrides=None, name="cfg.json"):
    cfg = json.loads(json.dumps(BASE))
    for key, val in (overrides or {}).items():
        if val is None:
            cfg.pop(key, None)
        else:
            cfg[key] = val
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def run(args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return main(args)


def test_missing_config_is_config_error(capsys):
    assert run(["steady-state", "--config", "/nonexistent.json"]) == 2
    assert "code=2" in capsys.readouterr().err


def test_schema_rejects_unknown_key(tmp_path, capsys):
    path = write_config(tmp_path, {"bogus": 1})
    assert run(["steady-state", "--config", path]) == 2
    assert "bogus" in capsys.readouterr().err


def test_steady_state_output(tmp_path):
    path = write_config(tmp_path)
    out = tmp_path / "out.csv"
    assert run(["steady-state", "--config", path, "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    meta = [l for l in lines if l.startswith("#")]
    assert any("config_sha256=" in l for l in meta)
    header = lines[len(meta)].split(",")
    row = lines[len(meta) + 1].split(",")
    assert len(header) == len(row)
    data = dict(zip(header, row))
    assert float(data["photon_number"]) > 0
    assert float(data["power_erg_per_s"]) > 0


def test_determinism_byte_identical(tmp_path):
    path = write_config(tmp_path)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["steady-state", "--config", path, "--out", str(out1)]) == 0
    assert run(["steady-state", "--config", path, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_threads_match_serial(tmp_path):
    sweep = {
        "parameter": "langevin.gamma_r_mev",
        "start": 0.1,
        "stop": 10.0,
        "points": 5,
        "scale": "log",
    }
    path = write_config(tmp_path, {"sweep": sweep})
    serial, threaded = tmp_path / "s.csv", tmp_path / "t.csv"
    assert run(["sweep", "--config", path, "--out", str(serial)]) == 0
    assert (
        run(["sweep", "--config", path, "--out", str(threaded), "--threads", "4"]) == 0
    )
    assert serial.read_bytes() == threaded.read_bytes()


def test_sweep_bad_parameter_path(tmp_path, capsys):
    path = write_config(
        tmp_path, {"sweep": {"parameter": "langevin.nope_mev", "values": [1.0]}}
    )
    assert run(["sweep", "--config", path]) == 2


def test_unstable_config_is_physics_error(tmp_path, capsys):
    emitter = json.loads(json.dumps(BASE["emitter"]))
    emitter["populations"] = {"type": "inverted", "n1": 0.0, "n2": 1.0}
    path = write_config(
        tmp_path,
        {
            "emitter": emitter,
            "langevin": {"gamma_r_per_ps": 1e-4, "gamma_sigma_per_ps": 0.0},
        },
    )
    assert run(["steady-state", "--config", path]) == 3
    assert "Unstable" in capsys.readouterr().err


def test_rates_output(tmp_path):
    path = write_config(tmp_path)
    out = tmp_path / "rates.csv"
    assert run(["rates", "--config", path, "--out", str(out)]) == 0
    text = out.read_text()
    for key in ("rate_planewave", "rate_cavity", "rate_free_space", "purcell_ratio"):
        assert key in text


def test_fig2_defaults_warn_without_g(tmp_path, capsys):
    path = write_config(tmp_path, {"fig2": {"gamma21_mev": 5.0, "points": 11}})
    out = tmp_path / "fig2.csv"
    assert run(["fig2", "--config", path, "--out", str(out)]) == 0
    assert "g_mev" in capsys.readouterr().err
    first = [
        l for l in out.read_text().splitlines() if l and not l.startswith("#")
    ][1]
    x, q = (float(v) for v in first.split(","))
    assert q == pytest.approx(1.0 / (1.0 + x), rel=1e-9)  # g = 0 closed form
    assert (tmp_path / "fig2.inset.csv").exists()


def test_midir_table(tmp_path):
    path = write_config(
        tmp_path,
        {
            "midir": {
                "eps": 12.96,
                "hbar_omega21_mev": [100.0, 200.0],
                "fwhm_mev": 10.0,
                "gamma_r_points": 3,
                "lambda_medium_um": 6.0,
            }
        },
    )
    out = tmp_path / "midir.csv"
    assert run(["midir", "--config", path, "--out", str(out)]) == 0
    rows = [
        l.split(",") for l in out.read_text().splitlines() if not l.startswith("#")
    ][1:]
    limits = {float(r[0]): float(r[3]) for r in rows}
    assert limits[100.0] == pytest.approx(10.0, rel=1e-12)
    assert limits[200.0] == pytest.approx(20.0, rel=1e-12)


def test_json_output(tmp_path):
    path = write_config(tmp_path, {"output": {"format": "json"}})
    out = tmp_path / "out.json"
    assert run(["steady-state", "--config", path, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert "config_sha256" in doc["meta"]
    assert len(doc["rows"][0]) == len(doc["columns"])


def test_verify_parseval(tmp_path):
    path = write_config(tmp_path)
    out = tmp_path / "parseval.csv"
    assert run(["verify-parseval", "--config", path, "--out", str(out)]) == 0
    rows = [
        l.split(",") for l in out.read_text().splitlines() if not l.startswith("#")
    ][1:]
    for _, value, target in rows:
        assert float(value) == pytest.approx(float(target), abs=2e-3)


def test_audit_units(tmp_path, capsys):
    path = write_config(tmp_path)
    out = tmp_path / "o.csv"
    assert (
        run(["steady-state", "--config", path, "--out", str(out), "--audit-units"])
        == 0
    )
    err = capsys.readouterr().err
    assert "audit stack" in err
    assert "gamma_r_radps" in err
