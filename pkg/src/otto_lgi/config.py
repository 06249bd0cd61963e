"""Plain key = value run configuration.

One assignment per line, ``#`` starts a comment, unknown keys are errors.
Every key has a documented default, so the empty file is a valid configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from otto_lgi.qubit import EngineParams

DEFAULT_SIGMA_BAR = 0.2


class ConfigError(ValueError):
    """Base class for configuration problems; carries a line number (0 = not from a line)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(message)
        self.line = line


class UnknownKey(ConfigError):
    pass


class BadValue(ConfigError):
    pass


class MissingRequired(ConfigError):
    pass


def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("value must be finite")
    return value


def _parse_positive_float(text: str) -> float:
    value = _parse_float(text)
    if value <= 0.0:
        raise ValueError("value must be positive")
    return value


def _parse_nonnegative_float(text: str) -> float:
    value = _parse_float(text)
    if value < 0.0:
        raise ValueError("value must be >= 0")
    return value


def _parse_int_ge2(text: str) -> int:
    value = int(text)
    if value < 2:
        raise ValueError("value must be an integer >= 2")
    return value


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_format(text: str) -> str:
    lowered = text.strip().lower()
    if lowered not in ("text", "json"):
        raise ValueError(f"format must be 'text' or 'json', got {text!r}")
    return lowered


@dataclass
class RunConfig:
    """All tunable inputs with their defaults.

    gamma0 defaults to 1 in the natural units of the stock parameter set; it is
    an assumption of this artifact and every summary records the value used.
    """

    # Engine parameters.
    omega1: float = 10.0
    omega2: float = 20.0
    tau1: float = 0.01
    tau2: float = 0.1
    T_h: float = 20.0
    T_c: float = 1.0
    gamma0: float = 1.0
    # Friction: sigma wins over sigma_bar when both are given explicitly
    # (that combination is rejected at parse time); default is sigma_bar = 0.2.
    sigma: float | None = None
    sigma_bar: float | None = None
    # Model switches and tolerances.
    equal_gamma: bool = False
    tau_q_tol: float = 1e-10
    # Sweep axis ranges (T_h axis, sigma_bar axis, T_c axis) and grid size.
    th_min: float = 4.0
    th_max: float = 500.0
    sigma_bar_min: float = 0.0
    sigma_bar_max: float = 2.4
    tc_min: float = 0.2
    tc_max: float = 300.0
    grid_nx: int = 200
    grid_ny: int = 200
    # Output.
    format: str = "text"
    # Bookkeeping: line number each explicitly-set key came from.
    source_lines: dict[str, int] = field(default_factory=dict)

    def resolved_sigma(self) -> float:
        if self.sigma is not None:
            return self.sigma
        if self.sigma_bar is not None:
            return self.sigma_bar * self.tau2
        return DEFAULT_SIGMA_BAR * self.tau2

    def engine_params(self) -> EngineParams:
        return EngineParams(
            omega1=self.omega1,
            omega2=self.omega2,
            tau1=self.tau1,
            tau2=self.tau2,
            T_h=self.T_h,
            T_c=self.T_c,
            gamma0=self.gamma0,
            sigma=self.resolved_sigma(),
        )


_PARSERS = {
    "omega1": _parse_positive_float,
    "omega2": _parse_positive_float,
    "tau1": _parse_positive_float,
    "tau2": _parse_positive_float,
    "T_h": _parse_positive_float,
    "T_c": _parse_positive_float,
    "gamma0": _parse_positive_float,
    "sigma": _parse_nonnegative_float,
    "sigma_bar": _parse_nonnegative_float,
    "equal_gamma": _parse_bool,
    "tau_q_tol": _parse_positive_float,
    "th_min": _parse_positive_float,
    "th_max": _parse_positive_float,
    "sigma_bar_min": _parse_nonnegative_float,
    "sigma_bar_max": _parse_positive_float,
    "tc_min": _parse_positive_float,
    "tc_max": _parse_positive_float,
    "grid_nx": _parse_int_ge2,
    "grid_ny": _parse_int_ge2,
    "format": _parse_format,
}

_FIELD_NAMES = {f.name for f in fields(RunConfig)} - {"source_lines"}
assert set(_PARSERS) == _FIELD_NAMES


def _attribution_line(config: RunConfig, message: str) -> int:
    """Line of the most recently set key mentioned in a validation message."""
    best = 0
    for key, line in config.source_lines.items():
        if key in message:
            best = max(best, line)
    return best


def _cross_validate(config: RunConfig) -> None:
    if config.sigma is not None and config.sigma_bar is not None:
        line = max(
            config.source_lines.get("sigma", 0), config.source_lines.get("sigma_bar", 0)
        )
        raise BadValue("sigma and sigma_bar may not both be set", line=line)
    for low_key, high_key in (
        ("th_min", "th_max"),
        ("tc_min", "tc_max"),
        ("sigma_bar_min", "sigma_bar_max"),
    ):
        low = getattr(config, low_key)
        high = getattr(config, high_key)
        if not low < high:
            line = max(
                config.source_lines.get(low_key, 0), config.source_lines.get(high_key, 0)
            )
            raise BadValue(f"{low_key} must be < {high_key}, got {low!r} >= {high!r}", line=line)
    try:
        config.engine_params()
    except ValueError as exc:
        raise BadValue(str(exc), line=_attribution_line(config, str(exc))) from exc


def apply_assignment(config: RunConfig, key: str, raw: str, line: int = 0) -> None:
    """Set one key from its textual value, with line-precise errors."""
    if key not in _PARSERS:
        raise UnknownKey(f"unknown key {key!r}", line=line)
    if raw == "":
        raise MissingRequired(f"key {key!r} has no value", line=line)
    try:
        value = _PARSERS[key](raw)
    except ValueError as exc:
        raise BadValue(f"bad value for {key!r}: {exc}", line=line) from exc
    setattr(config, key, value)
    config.source_lines[key] = line


def parse_config(text: str, overrides: list[str] | None = None) -> RunConfig:
    """Parse key = value text (plus optional KEY=VALUE overrides) into a RunConfig."""
    config = RunConfig()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        stripped = raw_line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise BadValue(f"expected 'key = value', got {raw_line.strip()!r}", line=lineno)
        key, raw_value = (part.strip() for part in stripped.split("=", 1))
        apply_assignment(config, key, raw_value, line=lineno)
    for item in overrides or []:
        if "=" not in item:
            raise BadValue(f"override must look like KEY=VALUE, got {item!r}")
        key, raw_value = (part.strip() for part in item.split("=", 1))
        apply_assignment(config, key, raw_value, line=0)
    _cross_validate(config)
    return config


def load_config(path: str | Path, overrides: list[str] | None = None) -> RunConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), overrides=overrides)
