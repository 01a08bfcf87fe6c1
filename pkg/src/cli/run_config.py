"""
File:           run_config.py
Created on:     15/10/26, 3:00 pm

Validated run configuration built from a config file and command line flags (flags win).
"""
from typing import Any, Dict, Mapping, Optional, Tuple
from dataclasses import dataclass, field, asdict
from pathlib import Path
import math

import numpy as np

from src.utils.config_reader import ConfigReader, ConfigReaderError
from src.utils.enum import Command, OutputFormat, SweepScale
from src.utils.errors import OttoEngineError
from src.utils.settings import Tolerances, DEFAULT_TOLERANCES
from src.optimizer.problem import DEFAULT_EH_BRACKET


class ConfigError(OttoEngineError):
    """ Carries the offending key so the CLI diagnostic can name it """

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


SIMULATE_AXES = ("beta", "chi", "xi")
OPTIMIZE_AXES = ("eta_c", "g0", "alpha", "d", "s")
CONSTRAINT_PARAMS = ("alpha", "d", "s")

FLOAT_KEYS = ("chi", "beta_c", "beta_h", "T_c", "T_h", "xi", "g0", "eta_c", "sigma_c", "sigma_h",
              "from", "to", "eh_lo", "eh_hi") + CONSTRAINT_PARAMS
INT_KEYS = ("points", "workers")
BOOL_KEYS = ("log", "verbose")
TEXT_KEYS = ("command", "constraint", "preset", "params", "axis", "format", "out")
LEVEL_KEYS = ("levels", "cold_levels")
KNOWN_KEYS = frozenset(FLOAT_KEYS + INT_KEYS + BOOL_KEYS + TEXT_KEYS + LEVEL_KEYS)
TRUE_TEXT = ("1", "true", "yes", "on")
FALSE_TEXT = ("0", "false", "no", "off", "")


@dataclass(frozen=True)
class SweepAxis:
    variable: str
    start: float
    stop: float
    count: int
    scale: SweepScale = SweepScale.LINEAR

    def values(self) -> np.ndarray:
        if self.scale == SweepScale.LOG:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    @property
    def is_simulation(self) -> bool:
        return self.variable in SIMULATE_AXES


@dataclass(frozen=True)
class RunConfig:
    command: Command
    levels: Optional[Tuple[float, ...]] = None
    cold_levels: Optional[Tuple[float, ...]] = None
    chi: Optional[float] = None
    beta_c: Optional[float] = None
    beta_h: Optional[float] = None
    xi: float = 1.0
    constraint: Optional[str] = None
    preset: Optional[str] = None
    params: Dict[str, float] = field(default_factory=dict)
    g0: Optional[float] = None
    eta_c: Optional[float] = None
    sigma_c: float = 1.0
    sigma_h: float = 1.0
    sweep: Optional[SweepAxis] = None
    output_format: OutputFormat = OutputFormat.CSV
    out: Optional[Path] = None
    workers: int = 1
    verbose: bool = False
    eh_bracket: Tuple[float, float] = DEFAULT_EH_BRACKET
    tolerances: Tolerances = DEFAULT_TOLERANCES

    @property
    def n_levels(self) -> Optional[int]:
        return len(self.levels) if self.levels else None

    @property
    def carnot(self) -> Optional[float]:
        """ eta_c as given, else 1 - beta_h / beta_c """
        if self.eta_c is not None:
            return self.eta_c
        if self.beta_c and self.beta_h:
            return 1.0 - self.beta_h / self.beta_c
        return None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["command"] = self.command.value
        data["output_format"] = self.output_format.value
        data["out"] = str(self.out) if self.out else None
        if self.sweep is not None:
            data["sweep"]["scale"] = self.sweep.scale.value
        return data


def _to_float(key: str, value: Any) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"cannot parse {value!r} as a number") from None
    if not math.isfinite(number):
        raise ConfigError(key, f"must be finite, got {value!r}")
    return number


def _to_int(key: str, value: Any) -> int:
    number = _to_float(key, value)
    if not number.is_integer():
        raise ConfigError(key, f"must be an integer, got {value!r}")
    return int(number)


def _to_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in TRUE_TEXT:
        return True
    if text in FALSE_TEXT:
        return False
    raise ConfigError(key, f"cannot parse {value!r} as a boolean")


def _to_levels(key: str, value: Any) -> Tuple[float, ...]:
    if isinstance(value, str):
        value = [item for item in value.replace(";", ",").split(",") if item.strip()]
    try:
        return tuple(_to_float(key, item) for item in value)
    except TypeError:
        raise ConfigError(key, f"cannot parse {value!r} as a list of levels") from None


def parse_params(text: str) -> Dict[str, float]:
    """ "alpha=0.5, s=0.9" -> {"alpha": 0.5, "s": 0.9} """
    params = dict()
    for item in text.split(","):
        if not item.strip():
            continue
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ConfigError("params", f"expected name=value, got {item.strip()!r}")
        params[name.strip()] = _to_float(f"params.{name.strip()}", value)
    return params


def _typed(raw: Mapping[str, Any]) -> Dict[str, Any]:
    values = dict()
    for key, value in raw.items():
        if value is None:
            continue
        if key.startswith("tol_"):
            values[key] = value
        elif key not in KNOWN_KEYS:
            raise ConfigError(key, "unknown key")
        elif key in FLOAT_KEYS:
            values[key] = _to_float(key, value)
        elif key in INT_KEYS:
            values[key] = _to_int(key, value)
        elif key in BOOL_KEYS:
            values[key] = _to_bool(key, value)
        elif key in LEVEL_KEYS:
            values[key] = _to_levels(key, value)
        else:
            values[key] = str(value).strip()
    return values


def _inverse_temperatures(values: Mapping[str, Any]) -> Tuple[Optional[float], Optional[float]]:
    has_beta = "beta_c" in values or "beta_h" in values
    has_temperature = "T_c" in values or "T_h" in values
    if has_beta and has_temperature:
        key = "T_c" if "T_c" in values else "T_h"
        raise ConfigError(key, "conflicting temperature spec, give either beta_c/beta_h or T_c/T_h")
    if has_temperature:
        betas = []
        for key in ("T_c", "T_h"):
            if key not in values:
                betas.append(None)
                continue
            if values[key] <= 0:
                raise ConfigError(key, f"temperature must be positive, got {values[key]}")
            betas.append(1.0 / values[key])
        return betas[0], betas[1]
    return values.get("beta_c"), values.get("beta_h")


def _require(values: Mapping[str, Any], *keys: str) -> None:
    for key in keys:
        if values.get(key) is None:
            raise ConfigError(key, "missing required key")


def _sweep_axis(values: Mapping[str, Any]) -> SweepAxis:
    _require(values, "axis", "from", "to", "points")
    variable = values["axis"]
    if variable not in SIMULATE_AXES + OPTIMIZE_AXES:
        raise ConfigError("axis", f"unknown sweep variable {variable!r}, expected one of "
                                  f"{', '.join(SIMULATE_AXES + OPTIMIZE_AXES)}")
    if values["points"] < 2:
        raise ConfigError("points", f"a sweep needs at least 2 points, got {values['points']}")
    scale = SweepScale.LOG if values.get("log") else SweepScale.LINEAR
    if scale == SweepScale.LOG and (values["from"] <= 0 or values["to"] <= 0):
        raise ConfigError("from", "a log sweep needs positive end points")
    return SweepAxis(variable, values["from"], values["to"], values["points"], scale)


def _validate(config: RunConfig) -> None:
    command = config.command
    swept = config.sweep.variable if config.sweep is not None else None
    simulation = command == Command.SIMULATE or (
        command == Command.SWEEP and config.sweep is not None and config.sweep.is_simulation
    )
    if simulation:
        if config.levels is None:
            raise ConfigError("levels", "missing required key")
        if swept == "chi" and config.cold_levels is not None:
            raise ConfigError(
                "cold_levels", "a chi sweep compresses the hot levels, drop cold_levels"
            )
        if config.chi is None and config.cold_levels is None and swept != "chi":
            raise ConfigError("chi", "missing required key (or give cold_levels)")
        if config.chi is not None and config.cold_levels is not None:
            raise ConfigError("cold_levels", "give either chi or cold_levels, not both")
        if config.beta_c is None:
            raise ConfigError("beta_c", "missing required key (or give T_c)")
        if config.beta_h is None:
            raise ConfigError("beta_h", "missing required key (or give T_h)")
        return
    if config.constraint is None and config.preset is None:
        raise ConfigError("constraint", "missing required key (or give preset)")
    if config.constraint is not None and config.preset is not None:
        raise ConfigError("preset", "give either constraint or preset, not both")
    if config.g0 is None and swept != "g0":
        raise ConfigError("g0", "missing required key")
    swept_eta = swept == "eta_c"
    if command in (Command.OPTIMIZE, Command.SWEEP, Command.COMPARE) and not swept_eta \
            and config.carnot is None:
        raise ConfigError("eta_c", "missing required key (or give both bath temperatures)")
    if command == Command.COMPARE and config.sweep is not None and not swept_eta:
        raise ConfigError("axis", "compare only sweeps eta_c")


def load_config(
        path: Optional[Path] = None,
        overrides: Optional[Mapping[str, Any]] = None
) -> RunConfig:
    """ Merge file keys with flag overrides (flags win) and validate the result """
    raw: Dict[str, Any] = dict()
    if path is not None:
        try:
            raw.update(ConfigReader(config_file_path=Path(path)).as_dict())
        except ConfigReaderError as err:
            raise ConfigError("config", str(err)) from err
    raw.update({key: value for key, value in (overrides or {}).items() if value is not None})
    values = _typed(raw)

    if "command" not in values:
        if "levels" in values:
            values["command"] = Command.SIMULATE.value
        elif "constraint" in values or "preset" in values:
            values["command"] = Command.OPTIMIZE.value
    _require(values, "command")
    try:
        command = Command(values["command"])
    except ValueError:
        raise ConfigError("command", f"unknown command {values['command']!r}") from None
    try:
        output_format = OutputFormat(values.get("format", OutputFormat.CSV.value))
    except ValueError:
        raise ConfigError("format", f"unknown format {values['format']!r}") from None

    beta_c, beta_h = _inverse_temperatures(values)
    params = parse_params(values.get("params", ""))
    params.update({key: values[key] for key in CONSTRAINT_PARAMS if key in values})
    sweep = None
    if command == Command.SWEEP or (command == Command.COMPARE and "axis" in values):
        sweep = _sweep_axis(values)
    eh_bracket = (
        values.get("eh_lo", DEFAULT_EH_BRACKET[0]), values.get("eh_hi", DEFAULT_EH_BRACKET[1])
    )
    if not 0 < eh_bracket[0] < eh_bracket[1]:
        raise ConfigError("eh_lo", f"bracket must satisfy 0 < eh_lo < eh_hi, got {eh_bracket}")
    workers = values.get("workers", 1)
    if workers < 1:
        raise ConfigError("workers", f"must be at least 1, got {workers}")
    try:
        tolerances = Tolerances.from_mapping(values)
    except (TypeError, ValueError) as err:
        raise ConfigError("tol", f"cannot parse tolerance override: {err}") from err

    config = RunConfig(
        command=command,
        levels=values.get("levels"),
        cold_levels=values.get("cold_levels"),
        chi=values.get("chi"),
        beta_c=beta_c,
        beta_h=beta_h,
        xi=values.get("xi", 1.0),
        constraint=values.get("constraint"),
        preset=values.get("preset"),
        params=params,
        g0=values.get("g0"),
        eta_c=values.get("eta_c"),
        sigma_c=values.get("sigma_c", 1.0),
        sigma_h=values.get("sigma_h", 1.0),
        sweep=sweep,
        output_format=output_format,
        out=Path(values["out"]) if values.get("out") else None,
        workers=workers,
        verbose=values.get("verbose", False),
        eh_bracket=eh_bracket,
        tolerances=tolerances,
    )
    _validate(config)
    return config
