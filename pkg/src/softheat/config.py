"""Flat ``key = value`` run configuration shared by the CLI subcommands."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping, Optional

from .analysis import DEFAULT_WARMUP_SKIP, DEFAULT_WINDOW_S, HeaterInput, LoadMasses
from .errors import DomainError, SoftHeatError
from .rig import G_STANDARD, NOMINAL_AREA, P_ATM, LeverRig, LoadMode
from .thermo import CV_AIR, GAMMA_AIR, GasProperties, check_gas_consistency

# Effective A * r_a that puts the 1.643 kg / 200 mm expansion load at 13 kPa,
# expressed as a lever arm for the nominal pouch area.
CALIBRATED_R_A = 1.643 * G_STANDARD * 0.200 / 13000.0 / NOMINAL_AREA


class ConfigError(SoftHeatError, ValueError):
    """Malformed config text or an unknown key."""


@dataclass
class RunConfig:
    gamma: Optional[float] = None
    c_v: Optional[float] = None
    A: float = NOMINAL_AREA
    r_a: float = CALIBRATED_R_A
    g: float = G_STANDARD
    wall_force: float = 0.0
    ambient_pressure: float = P_ATM
    smoothing_window_s: float = DEFAULT_WINDOW_S
    heater_volts: float = 3.92
    heater_amps: float = 0.91
    heater_threshold_v: float = 2.0
    warmup_skip: int = DEFAULT_WARMUP_SKIP
    output_dir: str = "out"
    cl_r_mx2: float = 0.200
    cl_m2_expand: float = 1.643
    cl_m2_restore: float = 1.361
    otto_r_mx1: float = 0.028
    otto_r_my1: float = 0.210
    otto_r_mx2: float = 0.028
    otto_m1: float = 13.6
    otto_m2: float = 1.00
    theta0_deg: float = 0.0

    def gas(self) -> GasProperties:
        if self.gamma is not None and self.c_v is not None:
            check_gas_consistency(self.gamma, self.c_v, 1e-9)
            return GasProperties(c_v_dimensionless=1.0 / (self.gamma - 1.0), gamma=self.gamma)
        if self.gamma is not None:
            return GasProperties.from_gamma(self.gamma)
        if self.c_v is not None:
            return GasProperties.from_cv(self.c_v)
        return GasProperties(c_v_dimensionless=CV_AIR, gamma=GAMMA_AIR)

    def rig(self, mode: LoadMode) -> LeverRig:
        common = dict(A=self.A, r_a=self.r_a, g=self.g, P_atm=self.ambient_pressure, wall_force=self.wall_force)
        if LoadMode(mode) is LoadMode.CONSTANT_LOAD:
            return LeverRig(r_mx2=self.cl_r_mx2, **common)
        return LeverRig(r_mx2=self.otto_r_mx2, r_mx1=self.otto_r_mx1, r_my1=self.otto_r_my1, **common)

    def masses(self, mode: LoadMode) -> LoadMasses:
        if LoadMode(mode) is LoadMode.CONSTANT_LOAD:
            return LoadMasses(m2_expand=self.cl_m2_expand, m2_restore=self.cl_m2_restore)
        return LoadMasses(m2_expand=self.otto_m2, m1=self.otto_m1)

    def heater(self) -> HeaterInput:
        return HeaterInput(self.heater_volts, self.heater_amps, self.heater_threshold_v)

    def validate(self) -> "RunConfig":
        self.gas()
        for mode in LoadMode:
            self.rig(mode)
        if not self.smoothing_window_s > 0:
            raise DomainError("smoothing_window_s must be positive")
        if self.warmup_skip < 0:
            raise DomainError("warmup_skip must be non-negative")
        if not (self.heater_volts > 0 and self.heater_amps > 0):
            raise DomainError("heater volts and amps must be positive")
        return self


KEYS = {
    "gas.gamma": "gamma",
    "gas.c_v": "c_v",
    "rig.A": "A",
    "rig.r_a": "r_a",
    "rig.g": "g",
    "rig.wall_force": "wall_force",
    "rig.theta0_deg": "theta0_deg",
    "ambient_pressure": "ambient_pressure",
    "smoothing_window_s": "smoothing_window_s",
    "heater.volts": "heater_volts",
    "heater.amps": "heater_amps",
    "heater.threshold_v": "heater_threshold_v",
    "warmup_skip": "warmup_skip",
    "output_dir": "output_dir",
    "constant_load.r_mx2": "cl_r_mx2",
    "constant_load.m2_expand": "cl_m2_expand",
    "constant_load.m2_restore": "cl_m2_restore",
    "otto.r_mx1": "otto_r_mx1",
    "otto.r_my1": "otto_r_my1",
    "otto.r_mx2": "otto_r_mx2",
    "otto.m1": "otto_m1",
    "otto.m2": "otto_m2",
}

_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(attr: str, text: str):
    kind = _TYPES[attr]
    try:
        if kind == "int":
            return int(text)
        if kind == "str":
            return text
        return float(text)
    except ValueError:
        raise ConfigError(f"bad value {text!r} for {attr}") from None


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def apply(config: RunConfig, values: Mapping[str, str]) -> RunConfig:
    updates = {}
    for key, text in values.items():
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}")
        attr = KEYS[key]
        updates[attr] = _convert(attr, text)
    return replace(config, **updates)


def load_config(path=None, overrides: Optional[Mapping[str, str]] = None) -> RunConfig:
    """Defaults, then the config file, then ``overrides`` (flags win)."""
    config = RunConfig()
    if path is not None:
        config = apply(config, parse_config_text(Path(path).read_text(encoding="utf-8"), str(path)))
    if overrides:
        # a flag naming one of gamma / c_v replaces the pair from the file
        given = {"gas.gamma", "gas.c_v"} & set(overrides)
        if len(given) == 1:
            config = replace(config, gamma=None, c_v=None)
        config = apply(config, overrides)
    return config.validate()


def format_config(config: RunConfig) -> str:
    lines = []
    for key, attr in KEYS.items():
        value = getattr(config, attr)
        if value is None:
            continue
        lines.append(f"{key} = {value!r}" if not isinstance(value, str) else f"{key} = {value}")
    return "\n".join(lines) + "\n"
