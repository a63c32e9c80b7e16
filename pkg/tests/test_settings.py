from pathlib import Path

import pytest

from reporting.emit import OutputFormat
from settings import ConfigurationError, SuiteConfig, load_config, read_config_file
from suites.custom_suite_base import Suites


def test_defaults():
    config = load_config()
    assert config.seed == 0
    assert config.samples == 200
    assert config.tol_exact == 1e-10
    assert config.tol_fd == 1e-6
    assert config.fd_step == 1e-4
    assert config.momentum_scale_range == (1e-3, 1e3)
    assert config.suites == [s.value for s in Suites]
    assert config.output_format is OutputFormat.BOTH
    assert config.out == Path("reports")


def test_file_values_are_parsed(tmp_path):
    path = tmp_path / "verify.cfg"
    path.write_text("SEED=11\nsamples=7\ntol-fd=1e-5\nsuites=cpt, clifford\nformat=json\nscale_min=0.5\nscale_max=2\n")
    config = load_config(path)
    assert config.seed == 11
    assert config.samples == 7
    assert config.tol_fd == 1e-5
    assert config.suites == ["cpt", "clifford"]
    assert config.output_format is OutputFormat.JSON
    assert config.momentum_scale_range == (0.5, 2.0)


def test_flags_override_file(tmp_path):
    path = tmp_path / "verify.cfg"
    path.write_text("seed=11\nsamples=7\nscale_max=5\n")
    config = load_config(path, {"samples": 9, "seed": None, "out": tmp_path / "r"})
    assert config.samples == 9
    assert config.seed == 11
    assert config.out == tmp_path / "r"
    assert config.momentum_scale_range == (1e-3, 5.0)


def test_unknown_key_is_rejected(tmp_path):
    path = tmp_path / "verify.cfg"
    path.write_text("seeds=1\n")
    with pytest.raises(ConfigurationError, match="Unknown config key"):
        read_config_file(path)


def test_missing_file_is_rejected(tmp_path):
    with pytest.raises(ConfigurationError, match="not found"):
        load_config(tmp_path / "absent.cfg")


@pytest.mark.parametrize(
    "overrides",
    [
        {"suites": ["clifford", "magnetism"]},
        {"samples": 0},
        {"tol_exact": -1.0},
        {"fd_step": float("inf")},
        {"output_format": "yaml"},
    ],
)
def test_invalid_values_are_configuration_errors(overrides):
    with pytest.raises(ConfigurationError):
        load_config(None, overrides)


def test_unknown_suite_message_lists_valid_names():
    with pytest.raises(ConfigurationError, match="valid suites are: clifford, projectors"):
        load_config(None, {"suites": ["magnetism"]})


def test_inverted_scale_range_is_rejected(tmp_path):
    path = tmp_path / "verify.cfg"
    path.write_text("scale_min=10\nscale_max=1\n")
    with pytest.raises(ConfigurationError, match="ordered"):
        load_config(path)


def test_duplicate_suites_collapse_and_echo_is_json_ready():
    config = SuiteConfig(suites=["cpt", "cpt", "so4"])
    assert config.suites == ["cpt", "so4"]
    echo = config.echo()
    assert echo["out"] == "reports"
    assert echo["output_format"] == "both"
