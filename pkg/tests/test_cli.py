import json
import subprocess
import sys

import numpy as np
import pytest

from bentmodes import cli
from bentmodes.cli import (
    CSV_COLUMNS,
    ConfigError,
    RunConfig,
    catalog_csv,
    catalog_json,
    catalog_rows,
    count_report,
    load_config,
    main,
    parse_catalog_csv,
    parse_config,
    verify,
)

TABLE1 = {"r1_um": 0.5, "r2_um": 1.5, "b_um": 0.5, "n_w": 2.3, "n_s": 1.0, "lambda_nm": 800}


@pytest.fixture()
def config_file(tmp_path):
    def write(data=TABLE1, raw=None):
        path = tmp_path / "cfg.json"
        path.write_text(raw if raw is not None else json.dumps(data))
        return str(path)

    return write


@pytest.fixture(scope="module")
def table1_config():
    return parse_config(TABLE1)


def test_count_report(table1_config):
    assert count_report(table1_config) == "N_odd=2 N_even=1; l_max: i1=5 i2=4 i3=3"


def test_count_report_thicker_guide():
    cfg = parse_config({**TABLE1, "b_um": 1.0})
    assert count_report(cfg).startswith("N_odd=3 N_even=3;")


def test_count_no_guided_modes(config_file, capsys):
    path = config_file({**TABLE1, "n_w": 1.0})
    assert main(["count", "--config", path]) == 0
    assert capsys.readouterr().out == "no guided modes\n"


def test_csv_and_json_carry_same_values(table1_config, table1_catalog):
    from_csv = parse_catalog_csv(catalog_csv(table1_catalog))
    from_json = json.loads(catalog_json(table1_catalog, table1_config))
    assert from_csv == from_json["modes"] == catalog_rows(table1_catalog)
    assert from_json["config"] == table1_config.to_dict()
    assert tuple(from_json["modes"][0]) == CSV_COLUMNS


def test_csv_format(table1_catalog):
    text = catalog_csv(table1_catalog)
    lines = text.split("\n")
    assert "\r" not in text and text.endswith("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 14
    assert lines[5].startswith("1,5,odd,") and lines[5].endswith(",false")


def test_modes_output_is_deterministic(config_file, tmp_path):
    path = config_file()
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert main(["modes", "--config", path, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_empty_catalog_is_header_only(config_file, capsys):
    path = config_file({**TABLE1, "n_w": 1.0})
    assert main(["modes", "--config", path, "--format", "csv"]) == 0
    assert capsys.readouterr().out == ",".join(CSV_COLUMNS) + "\n"
    assert main(["modes", "--config", path, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["modes"] == []


def _profile(config_file, capsys, i, l, extra=()):
    assert main(["profile", "--config", config_file(), "--i", str(i), "--l", str(l), "--nr", "41", "--nz", "21", *extra]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "r_um,z_um,E"
    return np.array([[float(x) for x in line.split(",")] for line in lines[1:]])


def test_profile_fundamental(config_file, capsys):
    data = _profile(config_file, capsys, 1, 1)
    assert data.shape == (41 * 21, 3)
    # z-major: r varies fastest
    assert data[0, 0] == 0.5 and data[1, 0] > data[0, 0] and data[0, 1] == data[40, 1]
    peak = np.abs(data[:, 2]).max()
    assert data[np.argmax(np.abs(data[:, 2])), 0] > 1.0
    walls = np.isin(data[:, 0], (0.5, 1.5))
    assert np.abs(data[walls, 2]).max() < 1e-9 * peak


def test_profile_weight_moves_inward(config_file, capsys):
    def mean_r(data):
        w = data[:, 2] ** 2
        return float(np.sum(w * data[:, 0]) / np.sum(w))

    assert mean_r(_profile(config_file, capsys, 1, 4)) < mean_r(_profile(config_file, capsys, 1, 1))


def test_profile_unknown_mode(config_file, capsys):
    assert main(["profile", "--config", config_file(), "--i", "1", "--l", "9"]) == 3
    assert "not in catalog" in capsys.readouterr().err


def test_profile_grid_too_small(config_file):
    assert main(["profile", "--config", config_file(), "--i", "1", "--l", "1", "--nr", "4"]) == 2


def test_verify_passes(config_file, capsys):
    assert main(["verify", "--config", config_file()]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("RESULT PASS (rtol=0.005)")
    assert out.count("\nr i=") == 12 and out.count("\nz i=") == 3


def test_verify_catches_perturbed_catalog(table1_config):
    report = verify(table1_config, beta_scale=1.01)
    assert not report.passed
    assert max(err for *_, err in report.z_checks) > 5e-3


def test_verify_coarse_grid_is_less_accurate(table1_config, table1_catalog):
    fine = verify(table1_config, catalog=table1_catalog)
    coarse = verify(RunConfig(table1_config.geometry, oracle_points=201), catalog=table1_catalog)
    assert max(c[-1] for c in coarse.radial_checks) > max(f[-1] for f in fine.radial_checks)
    assert max(c[-1] for c in coarse.z_checks) > max(f[-1] for f in fine.z_checks)


@pytest.mark.parametrize(
    "data, fragment",
    [
        ({**TABLE1, "colour": 1}, "unknown field"),
        ({k: v for k, v in TABLE1.items() if k != "n_s"}, "missing field"),
        ({**TABLE1, "n_w": "2.3"}, "expected a number"),
        ({**TABLE1, "r2_um": 0.4}, "geometry"),
        ({**TABLE1, "oracle_points": 400}, "oracle_points"),
        ({**TABLE1, "scan_step_m": 0.0}, "scan_step_m"),
        ([1, 2], "JSON object"),
    ],
)
def test_config_errors(data, fragment, config_file, capsys):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(data)
    assert main(["count", "--config", config_file(data)]) == 2
    assert fragment in capsys.readouterr().err


def test_malformed_json_reports_position(config_file):
    with pytest.raises(ConfigError, match="line 2, column"):
        load_config(config_file(raw='{"r1_um": 0.5,\n  oops}'))


def test_missing_file(tmp_path):
    assert main(["count", "--config", str(tmp_path / "nope.json")]) == 2


def test_config_round_trip(table1_config):
    full = table1_config.to_dict()
    assert parse_config(full) == table1_config
    assert full["scan_step_m"] == 0.02 and full["oracle_points"] == 4001


def test_module_entry_point(config_file):
    proc = subprocess.run(
        [sys.executable, "-m", "bentmodes", "count", "--config", config_file()],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.startswith("N_odd=2")
    assert cli.EXIT_OK == 0
