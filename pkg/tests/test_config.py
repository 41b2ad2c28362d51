from fractions import Fraction

import pytest
from twistlab.config import DEFAULT_SEED, Settings, get_settings
from twistlab.errors import ConfigError


class TestSettings:
    def test_defaults(self):
        settings = Settings.from_env({})
        assert settings.seed == DEFAULT_SEED
        assert not settings.no_color
        assert settings.gauge_dim_cap == 4
        assert settings.ansatz_cap == 16
        assert settings.gauge_grid[:3] == (0, 1, -1)
        assert settings.log_level == "WARNING"

    def test_conftest_environment(self):
        settings = get_settings()
        assert settings.no_color
        assert settings.seed == 20240601

    def test_overrides(self):
        settings = Settings.from_env(
            {
                "NO_COLOR": "1",
                "TWISTLAB_GAUGE_DIM_CAP": "0",
                "TWISTLAB_GAUGE_GRID": "1/3, -2",
                "TWISTLAB_LOG_LEVEL": "debug",
            }
        )
        assert settings.no_color
        assert settings.gauge_dim_cap == 0
        assert settings.gauge_grid == (Fraction(1, 3), Fraction(-2))
        assert settings.log_level == "DEBUG"

    @pytest.mark.parametrize(
        "name, value",
        [
            ("TWISTLAB_SEED", "abc"),
            ("TWISTLAB_GAUGE_DIM_CAP", "-1"),
            ("TWISTLAB_ANSATZ_CAP", "0"),
            ("TWISTLAB_GAUGE_GRID", "1/0"),
            ("TWISTLAB_GAUGE_GRID", " , "),
            ("TWISTLAB_LOG_LEVEL", "loud"),
        ],
    )
    def test_malformed_values(self, name, value):
        with pytest.raises(ConfigError):
            Settings.from_env({name: value})

    def test_cli_reports_config_errors(self, monkeypatch, sweedler_doc):
        from twistlab.cli import main

        monkeypatch.setenv("TWISTLAB_GAUGE_DIM_CAP", "many")
        with pytest.raises(SystemExit) as exc_info:
            main(["check", str(sweedler_doc)])
        assert exc_info.value.code == 2  # type: ignore[attr-defined]
