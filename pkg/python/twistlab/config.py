"""Environment-driven settings (TWISTLAB_* variables)."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError

DEFAULT_SEED = 20240601
DEFAULT_GAUGE_GRID = "0,1,-1,1/2,-1/2,2"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    seed: int = DEFAULT_SEED
    no_color: bool = False
    gauge_dim_cap: int = 4
    gauge_grid: tuple[Fraction, ...] = tuple(
        Fraction(s) for s in DEFAULT_GAUGE_GRID.split(",")
    )
    ansatz_cap: int = 16
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Settings:
        env = os.environ if environ is None else environ
        return cls(
            seed=_int(env, "TWISTLAB_SEED", DEFAULT_SEED),
            no_color=bool(env.get("TWISTLAB_NO_COLOR") or env.get("NO_COLOR")),
            gauge_dim_cap=_int(env, "TWISTLAB_GAUGE_DIM_CAP", 4, minimum=0),
            gauge_grid=_grid(env.get("TWISTLAB_GAUGE_GRID", DEFAULT_GAUGE_GRID)),
            ansatz_cap=_int(env, "TWISTLAB_ANSATZ_CAP", 16, minimum=1),
            log_level=_level(env.get("TWISTLAB_LOG_LEVEL", "WARNING")),
        )


def _int(env: Mapping[str, str], name: str, default: int, minimum: int | None = None) -> int:
    raw = env.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _grid(raw: str) -> tuple[Fraction, ...]:
    try:
        values = tuple(Fraction(part.strip()) for part in raw.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"TWISTLAB_GAUGE_GRID is not a list of rationals: {raw!r}") from e
    if not values:
        raise ConfigError("TWISTLAB_GAUGE_GRID is empty")
    return values


def _level(raw: str) -> str:
    name = raw.strip().upper()
    if name not in LOG_LEVELS:
        raise ConfigError(f"TWISTLAB_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {raw!r}")
    return name


def get_settings() -> Settings:
    return Settings.from_env()
