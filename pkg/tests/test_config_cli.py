import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from a2gbeam import cli
from a2gbeam.config import (ConfigError, RunConfig, convert_value, emit_config,
                            parse_config)


def test_empty_config_gives_table_defaults():
    cfg = parse_config("")
    assert cfg == RunConfig()
    assert cfg.carrier_frequency == 73.5e9
    assert cfg.bandwidth_per_user == 714e6
    assert cfg.reuse_factor == 7
    assert cfg.array_size == 200
    assert cfg.rician_factor == 30.0
    assert cfg.vertical_distance == 10_000
    assert cfg.micro_radius == 50
    s = cfg.to_scenario()
    assert s.rician.K == pytest.approx(1000.0)


def test_units_and_linear():
    cfg = parse_config("rician_factor = 15dB\ncarrier_frequency = 73.5GHz\nmci_distance = 2.5km\n")
    assert cfg.linear("rician_factor") == pytest.approx(31.62, abs=0.01)
    assert cfg.mci_distance == 2500
    assert cfg.linear("tx_power_per_element") == pytest.approx(10 ** 0.5 * 1e-3)


def test_negative_radius_names_key():
    with pytest.raises(ConfigError, match="micro_radius"):
        parse_config("micro_radius = -5")


def test_unknown_key_and_bad_unit():
    with pytest.raises(ConfigError, match="unknown config key"):
        parse_config("frobnicate = 1")
    with pytest.raises(ConfigError, match="carrier_frequency"):
        parse_config("carrier_frequency = 3km")
    with pytest.raises(ConfigError, match="array_size"):
        parse_config("array_size = 12.5")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("array_size 200")


def test_overrides_win():
    cfg = parse_config("array_size = 300", {"array_size": "400"})
    assert cfg.array_size == 400


def test_mci_beyond_macro_cell():
    with pytest.raises(ConfigError, match="mci_distance"):
        parse_config("mci_distance = 6km")


def test_optional_impairments():
    cfg = parse_config("delta_vr = 0.5\nposition_offset = 1m")
    s = cfg.to_scenario()
    assert s.doppler.delta_vr == 0.5 and s.offset.delta == 1.0
    assert parse_config("delta_vr = none").delta_vr is None


def test_round_trip_defaults():
    cfg = parse_config("beamformer = nsb-d\ndelta_vr = -0.5\noutput_dir = out\nplot = true")
    assert parse_config(emit_config(cfg)) == cfg


@given(st.floats(1, 100), st.floats(-20, 40), st.integers(1, 600),
       st.sampled_from(["nsb", "nsb-d", "mpdrb"]), st.one_of(st.none(), st.floats(-1, 1)))
def test_round_trip_property(r, k, M, bf, dvr):
    cfg = parse_config("", {"micro_radius": r, "rician_factor": k, "array_size": M,
                            "beamformer": bf, "delta_vr": "none" if dvr is None else repr(dvr)})
    assert parse_config(emit_config(cfg)) == cfg


def test_convert_value_range_message():
    with pytest.raises(ConfigError, match=r"expected > 0"):
        convert_value("vertical_distance", "0")


def _run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_point(capsys, tmp_path):
    code, out, _ = _run(["point", "--trials", "3", "-M", "40", "--set", "tiers=2", "--output-dir", str(tmp_path)], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# axis=mci_distance_m")
    assert lines[1].startswith("axis,se_approx,ase_approx")
    assert len(lines) == 3
    assert (tmp_path / "point.csv").read_text() == out


def test_cli_env_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path))
    code, out, _ = _run(["sweep-array", "--values", "30,40", "--trials", "2", "--set", "tiers=2"], capsys)
    assert code == 0
    assert (tmp_path / "sweep-array.csv").exists()
    assert len(out.splitlines()) == 4


def test_cli_config_errors(capsys):
    code, _, err = _run(["point", "--set", "micro_radius=-5"], capsys)
    assert code == 2 and "micro_radius" in err
    code, _, _ = _run(["nonsense"], capsys)
    assert code == 2


def test_cli_degenerate_exit_code(capsys):
    # a 1x1 array cannot separate two users
    code, _, err = _run(["point", "-M", "1", "--trials", "1"], capsys)
    assert code == 3 and "degenerate" in err


def test_cli_pattern_nulls(capsys):
    code, out, _ = _run(["pattern", "-M", "40", "--set", "tiers=2", "--zenith-max", "10", "--zenith-step", "5",
                         "--azimuth-step", "90"], capsys)
    assert code == 0
    lines = out.splitlines()
    n_users = int(lines[0].rsplit("user_rows=", 1)[1])
    assert lines[1] == "zenith_deg,azimuth_deg,power_db"
    powers = [float(l.split(",")[2]) for l in lines[2:2 + n_users]]
    assert min(powers[0] - p for p in powers[1:]) > 100
    assert len(lines) == 2 + n_users + 3 * 4


def test_cli_config_subcommand(capsys, tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\narray_size = 300\n")
    code, out, _ = _run(["config", "--config", str(path), "--beamformer", "mpdrb"], capsys)
    assert code == 0
    cfg = parse_config(out)
    assert cfg.array_size == 300 and cfg.beamformer == "mpdrb"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "a2gbeam", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sweep-distance" in proc.stdout
