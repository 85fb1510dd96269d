"""Run configuration: a flat JSON object whose keys carry their units."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fading import MAX_SEED, ChannelKind, ChannelModel
from .model import SystemParams, dbm_to_watts

PARAM_KEYS = {
    "p_max_watts": "p_max",
    "s_max_w_per_hz": "s_max",
    "w0_hz": "w0",
    "t_frame_s": "t_frame",
    "h_gain": "h_gain",
    "g_gain": "g_gain",
}
SIGMA2_KEYS = ("sigma2_dbm", "sigma2_watts")
SWEEP_KEYS = ("sweep_parameter", "sweep_values", "sweep_start", "sweep_stop", "sweep_n", "sweep_spacing")
MONTECARLO_KEYS = ("channel_model", "n_blocks", "seed")
KNOWN_KEYS = set(PARAM_KEYS) | set(SIGMA2_KEYS) | set(SWEEP_KEYS) | set(MONTECARLO_KEYS)

SWEEP_PARAMETERS = ("p_max", "s_max", "w0", "sigma2", "h_gain", "g_gain")


class ConfigError(ValueError):
    """Malformed or inconsistent configuration file."""


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(
                f"sweep_parameter must be one of {', '.join(SWEEP_PARAMETERS)}; got {self.parameter!r}"
            )
        if not self.values:
            raise ConfigError("sweep has no values")
        for v in self.values:
            if not (math.isfinite(v) and v > 0.0):
                raise ConfigError(f"sweep values must be positive and finite, got {v!r}")

    @classmethod
    def from_range(cls, parameter: str, start: float, stop: float, n: int, spacing: str = "linear") -> SweepSpec:
        if n < 2:
            raise ConfigError(f"sweep_n must be >= 2, got {n!r}")
        if spacing == "linear":
            values = np.linspace(start, stop, n)
        elif spacing == "log":
            if start <= 0.0 or stop <= 0.0:
                raise ConfigError("log-spaced sweeps need positive start and stop")
            values = np.geomspace(start, stop, n)
        else:
            raise ConfigError(f"sweep_spacing must be 'linear' or 'log', got {spacing!r}")
        return cls(parameter, tuple(float(v) for v in values))


@dataclass(frozen=True)
class MonteCarloSpec:
    model: ChannelModel
    n_blocks: int
    seed: int


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    sweep: SweepSpec | None = None
    montecarlo: MonteCarloSpec | None = None
    raw: dict = field(default_factory=dict, compare=False, repr=False)


def _line_of(text: str, key: str) -> int | None:
    match = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


class _DuplicateKey(Exception):
    def __init__(self, key: str):
        super().__init__(key)
        self.key = key


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise _DuplicateKey(key)
        seen[key] = value
    return seen


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse config text. Raises :class:`ConfigError` with a ``source:line:`` prefix.

    Physically impossible values (zero bandwidth, negative gain, ...) raise
    :class:`wpcn.model.InfeasibleParamsError` instead.
    """

    def fail(message: str, key: str | None = None) -> ConfigError:
        line = _line_of(text, key) if key else None
        where = f"{source}:{line}" if line else source
        return ConfigError(f"{where}: {message}")

    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except _DuplicateKey as exc:
        raise fail(f"duplicate key {exc.key!r}", exc.key) from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}:1: config must be a JSON object")

    for key in raw:
        if key not in KNOWN_KEYS:
            raise fail(f"unknown key {key!r}", key)

    def number(key: str) -> float:
        value = raw[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise fail(f"{key} must be a number, got {value!r}", key)
        return float(value)

    def integer(key: str) -> int:
        value = raw[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise fail(f"{key} must be an integer, got {value!r}", key)
        return value

    sigma_keys = [k for k in SIGMA2_KEYS if k in raw]
    if len(sigma_keys) == 2:
        raise fail("give either sigma2_dbm or sigma2_watts, not both", "sigma2_watts")
    if not sigma_keys:
        raise fail("missing required key 'sigma2_dbm' (or 'sigma2_watts')")
    missing = [k for k in PARAM_KEYS if k not in raw]
    if missing:
        raise fail(f"missing required key {missing[0]!r}")

    values = {field_name: number(key) for key, field_name in PARAM_KEYS.items()}
    if "sigma2_dbm" in raw:
        dbm = number("sigma2_dbm")
        if not math.isfinite(dbm):
            raise fail("sigma2_dbm must be finite", "sigma2_dbm")
        values["sigma2"] = dbm_to_watts(dbm)
    else:
        values["sigma2"] = number("sigma2_watts")
    params = SystemParams(**values)

    has_sweep = any(k in raw for k in SWEEP_KEYS)
    has_mc = any(k in raw for k in MONTECARLO_KEYS)
    if has_sweep and has_mc:
        raise fail("config mixes sweep and montecarlo keys; use one per run")

    sweep = None
    if has_sweep:
        if "sweep_parameter" not in raw:
            raise fail("missing required key 'sweep_parameter'")
        parameter = raw["sweep_parameter"]
        if not isinstance(parameter, str):
            raise fail("sweep_parameter must be a string", "sweep_parameter")
        range_keys = ("sweep_start", "sweep_stop", "sweep_n")
        if "sweep_values" in raw:
            extra = [k for k in (*range_keys, "sweep_spacing") if k in raw]
            if extra:
                raise fail(f"sweep_values cannot be combined with {extra[0]!r}", extra[0])
            listed = raw["sweep_values"]
            if not isinstance(listed, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in listed
            ):
                raise fail("sweep_values must be a list of numbers", "sweep_values")
            try:
                sweep = SweepSpec(parameter, tuple(float(v) for v in listed))
            except ConfigError as exc:
                raise fail(str(exc), "sweep_values") from None
        else:
            for k in range_keys:
                if k not in raw:
                    raise fail(f"missing required key {k!r}")
            spacing = raw.get("sweep_spacing", "linear")
            start, stop, n = number("sweep_start"), number("sweep_stop"), integer("sweep_n")
            try:
                sweep = SweepSpec.from_range(parameter, start, stop, n, spacing)
            except ConfigError as exc:
                raise fail(str(exc), "sweep_parameter") from None

    montecarlo = None
    if has_mc:
        for k in MONTECARLO_KEYS:
            if k not in raw:
                raise fail(f"missing required key {k!r}")
        kind = raw["channel_model"]
        if kind not in {c.value for c in ChannelKind}:
            raise fail(f"channel_model must be 'deterministic' or 'exponential', got {kind!r}", "channel_model")
        n_blocks = integer("n_blocks")
        if n_blocks < 1:
            raise fail("n_blocks must be >= 1", "n_blocks")
        seed = integer("seed")
        if not 0 <= seed <= MAX_SEED:
            raise fail("seed must be an unsigned 64-bit integer", "seed")
        model = ChannelModel(ChannelKind(kind), params.h_gain, params.g_gain)
        montecarlo = MonteCarloSpec(model, n_blocks, seed)

    return RunConfig(params, sweep, montecarlo, raw)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    return parse_config(text, str(path))
