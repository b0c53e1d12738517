"""Run configuration: a flat ``key = value`` text format.

Keys follow the rows of the simulation-parameter table in snake_case.  Values
are numbers with an optional unit suffix (``30dB``, ``73.5GHz``, ``2.5km``);
dB quantities stay in dB inside ``RunConfig`` and are converted to linear
exactly once, in ``RunConfig.to_scenario``.  Lines starting with ``#`` are
comments.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields, replace

from .channel import LinkBudget, db_to_linear
from .impairments import DopplerConfig, PositionOffset
from .sim import Scenario


class ConfigError(ValueError):
    """Invalid configuration key or value."""


_UNITS = {
    "length": {"": 1.0, "m": 1.0, "km": 1e3},
    "frequency": {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9},
    "db": {"": 1.0, "db": 1.0, "dbi": 1.0},
    "dbm": {"": 1.0, "dbm": 1.0},
    "speed": {"": 1.0, "m/s": 1.0, "km/h": 1 / 3.6},
    "temperature": {"": 1.0, "k": 1.0},
    "angle": {"": 1.0, "deg": 1.0},
    "number": {"": 1.0},
}

_NUM = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+]?inf)\s*([A-Za-z/]*)\s*$")


def _spec(kind, lo=None, hi=None, doc="", optional=False, choices=None, integer=False):
    return {"kind": kind, "lo": lo, "hi": hi, "doc": doc, "optional": optional,
            "choices": choices, "integer": integer}


@dataclass(frozen=True)
class RunConfig:
    macro_radius: float = 5000.0
    micro_radius: float = 50.0
    vertical_distance: float = 10_000.0
    carrier_frequency: float = 73.5e9
    total_bandwidth: float = 5e9
    reuse_factor: int = 7
    bandwidth_per_user: float = 714e6
    array_size: int = 200
    rician_factor: float = 30.0
    back_off: float = 10.0
    transmitter_loss: float = 1.8
    atmospheric_and_cloud_loss: float = 7.9
    receiver_antenna_gain: float = 60.2
    receiver_noise_figure: float = 6.0
    other_receiver_loss: float = 1.8
    tx_power_per_element: float = 5.0
    noise_temperature: float = 290.0
    power_mode: str = "per_element"
    tiers: int = 5
    mci_distance: float = 2500.0
    mci_azimuth: float = 45.0
    beamformer: str = "nsb"
    airplane_speed: float = 200.0
    delta_vr: float | None = None
    position_offset: float | None = None
    trials: int = 500
    channel_draws: int = 20
    seed: int = 2021
    monte_carlo: bool = False
    workers: int = 1
    output_dir: str = ""
    plot: bool = False
    verbosity: int = 0

    def to_scenario(self) -> Scenario:
        losses_db = (self.back_off + self.transmitter_loss
                     + self.atmospheric_and_cloud_loss + self.other_receiver_loss)
        budget = LinkBudget(
            tx_power_per_element=float(db_to_linear(self.tx_power_per_element)) * 1e-3,
            rx_gain=float(db_to_linear(self.receiver_antenna_gain)),
            lumped_losses=float(db_to_linear(losses_db)),
            noise_temperature=self.noise_temperature,
            bandwidth=self.bandwidth_per_user,
            noise_figure=float(db_to_linear(self.receiver_noise_figure)),
            power_mode=self.power_mode,
        )
        doppler = None
        if self.delta_vr is not None:
            doppler = DopplerConfig(self.airplane_speed, 0.0, self.delta_vr, self.carrier_frequency)
        offset = None if self.position_offset is None else PositionOffset(self.position_offset)
        return Scenario(
            mci_distance=self.mci_distance, mci_azimuth=math.radians(self.mci_azimuth),
            macro_radius=self.macro_radius, micro_radius=self.micro_radius,
            tiers=self.tiers, altitude=self.vertical_distance, M=self.array_size,
            carrier=self.carrier_frequency, k_db=self.rician_factor, budget=budget,
            beamformer=self.beamformer, doppler=doppler, offset=offset,
            trials=self.trials, channel_draws=self.channel_draws, seed=self.seed,
            monte_carlo=self.monte_carlo, workers=self.workers)

    def linear(self, key: str) -> float:
        """Linear value of a dB-valued key (``10**(x/10)``; dBm keys come back in watts)."""
        kind = SPECS[key]["kind"]
        if kind == "db":
            return float(db_to_linear(getattr(self, key)))
        if kind == "dbm":
            return float(db_to_linear(getattr(self, key))) * 1e-3
        raise ConfigError(f"{key} is not a dB quantity")


SPECS = {
    "macro_radius": _spec("length", 0, None, "macro-cell radius R"),
    "micro_radius": _spec("length", 0, None, "micro-cell radius r"),
    "vertical_distance": _spec("length", 0, None, "platform altitude H_t"),
    "carrier_frequency": _spec("frequency", 0, None, "carrier f_c"),
    "total_bandwidth": _spec("frequency", 0, None, "total bandwidth (informational)"),
    "reuse_factor": _spec("number", 7, 7, "frequency reuse factor (D = 4r requires 7)", integer=True),
    "bandwidth_per_user": _spec("frequency", 0, None, "noise bandwidth B"),
    "array_size": _spec("number", 1, 2000, "M, elements per side", integer=True),
    "rician_factor": _spec("db", None, None, "Rician factor K (dB)"),
    "back_off": _spec("db", 0, None, "back-off loss (dB)"),
    "transmitter_loss": _spec("db", 0, None, "(dB)"),
    "atmospheric_and_cloud_loss": _spec("db", 0, None, "(dB)"),
    "receiver_antenna_gain": _spec("db", None, None, "G_r (dB)"),
    "receiver_noise_figure": _spec("db", 0, None, "N_F (dB)"),
    "other_receiver_loss": _spec("db", 0, None, "(dB)"),
    "tx_power_per_element": _spec("dbm", None, None, "per-element transmit power (dBm)"),
    "noise_temperature": _spec("temperature", 0, None, "T (K)"),
    "power_mode": _spec("choice", choices=("per_element", "total")),
    "tiers": _spec("number", 1, 5, "interfering tiers J", integer=True),
    "mci_distance": _spec("length", 0, None, "MCI centre distance from macro-cell centre"),
    "mci_azimuth": _spec("angle", -180, 180, "MCI azimuth (deg)"),
    "beamformer": _spec("choice", choices=("nsb", "nsb-d", "mpdrb")),
    "airplane_speed": _spec("speed", 0, None, "v_a"),
    "delta_vr": _spec("number", -1, 1, "radial velocity estimation error; none disables", optional=True),
    "position_offset": _spec("length", 0, None, "position error delta; none disables", optional=True),
    "trials": _spec("number", 1, None, "placement trials", integer=True),
    "channel_draws": _spec("number", 1, None, "channel draws per trial", integer=True),
    "seed": _spec("number", 0, None, "master seed", integer=True),
    "monte_carlo": _spec("bool"),
    "workers": _spec("number", 1, None, "worker threads", integer=True),
    "output_dir": _spec("str"),
    "plot": _spec("bool"),
    "verbosity": _spec("number", 0, 3, integer=True),
}


def _range_text(spec):
    lo, hi = spec["lo"], spec["hi"]
    if lo is not None and hi is not None:
        return f"[{lo}, {hi}]" if spec["kind"] != "length" else f"({lo}, {hi}]"
    if lo is not None:
        return f"> {lo}" if spec["kind"] in ("length", "frequency", "temperature") else f">= {lo}"
    return "any number"


def convert_value(key: str, raw):
    """Parse one value for ``key``; raises ``ConfigError`` naming the key."""
    if key not in SPECS:
        raise ConfigError(f"unknown config key {key!r}")
    spec = SPECS[key]
    kind = spec["kind"]
    text = str(raw).strip()
    if spec["optional"] and text.lower() in ("", "none", "off"):
        return None
    if kind == "str":
        return text
    if kind == "bool":
        low = text.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected true/false, got {text!r}")
    if kind == "choice":
        if text not in spec["choices"]:
            raise ConfigError(f"{key}: expected one of {spec['choices']}, got {text!r}")
        return text
    m = _NUM.match(text)
    if not m:
        raise ConfigError(f"{key}: cannot parse {text!r} as a number")
    num, unit = float(m.group(1)), m.group(2).lower()
    units = _UNITS[kind]
    if unit not in units:
        raise ConfigError(f"{key}: unit {m.group(2)!r} not accepted, expected one of {sorted(u for u in units if u)}")
    value = num * units[unit]
    lo, hi = spec["lo"], spec["hi"]
    strict = kind in ("length", "frequency", "temperature")
    too_low = lo is not None and (value <= lo if strict else value < lo)
    if too_low or (hi is not None and value > hi) or math.isnan(value):
        raise ConfigError(f"{key}: value {text} out of range, expected {_range_text(spec)}")
    if spec["integer"]:
        if value != int(value):
            raise ConfigError(f"{key}: expected an integer, got {text}")
        return int(value)
    return value


def parse_config(text: str = "", overrides: dict | None = None) -> RunConfig:
    """Build a validated ``RunConfig`` from config text plus ``overrides`` (which win)."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        values[key] = convert_value(key, raw)
    for key, raw in (overrides or {}).items():
        values[key] = convert_value(key, raw)
    cfg = RunConfig(**values)
    if cfg.mci_distance > cfg.macro_radius:
        raise ConfigError(f"mci_distance: {cfg.mci_distance} exceeds macro_radius {cfg.macro_radius}")
    return cfg


def load_config(path: str, overrides: dict | None = None) -> RunConfig:
    with open(path) as fh:
        return parse_config(fh.read(), overrides)


def emit_config(cfg: RunConfig) -> str:
    """Text form of ``cfg``; ``parse_config(emit_config(cfg)) == cfg``."""
    lines = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        kind = SPECS[f.name]["kind"]
        if v is None:
            text = "none"
        elif isinstance(v, bool):
            text = "true" if v else "false"
        elif isinstance(v, float):
            text = repr(v) + {"db": "dB", "dbm": "dBm"}.get(kind, "")
        else:
            text = str(v)
        lines.append(f"{f.name} = {text}")
    return "\n".join(lines) + "\n"


def with_overrides(cfg: RunConfig, **kw) -> RunConfig:
    return replace(cfg, **{k: convert_value(k, v) for k, v in kw.items()})
