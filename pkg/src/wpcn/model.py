"""Physical model of a single-user wireless-powered link.

One hybrid access point (HAP) sends energy on the downlink, and one user
harvests it to send data back on the uplink. All quantities are SI: watts,
hertz, seconds, joules, bits per second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LN2 = math.log(2.0)


class InfeasibleParamsError(ValueError):
    """Raised when a parameter set violates its physical invariants."""


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InfeasibleParamsError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Parameter set of the HAP/user link.

    ``sigma2`` is the noise power over the whole bandwidth ``w0``. A receiver
    listening on a fraction of the band sees that fraction of ``sigma2``.
    """

    sigma2: float
    p_max: float
    s_max: float
    w0: float
    t_frame: float
    h_gain: float
    g_gain: float

    def __post_init__(self) -> None:
        for name in ("sigma2", "p_max", "s_max", "w0", "t_frame"):
            value = float(getattr(self, name))
            _check_finite(name, value)
            if value <= 0.0:
                raise InfeasibleParamsError(f"{name} must be > 0, got {value!r}")
        for name in ("h_gain", "g_gain"):
            value = float(getattr(self, name))
            _check_finite(name, value)
            if value < 0.0:
                raise InfeasibleParamsError(f"{name} must be >= 0, got {value!r}")

    def replace(self, **changes: float) -> SystemParams:
        fields = {**self.__dict__, **changes}
        return SystemParams(**fields)


@dataclass(frozen=True)
class ObjectiveSpec:
    """Uplink throughput as a function of the energy-transfer fraction.

    The same objective serves both duplexing schemes: ``x`` is the share of
    the frame (TDD) or of the band (FDD) given to energy transfer.
    """

    gamma: float
    w0: float
    x_lo: float = 0.0
    x_hi: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma >= 0.0):
            raise ValueError(f"gamma must be finite and >= 0, got {self.gamma!r}")
        if not (math.isfinite(self.w0) and self.w0 > 0.0):
            raise ValueError(f"w0 must be finite and > 0, got {self.w0!r}")
        if not 0.0 <= self.x_lo <= self.x_hi <= 1.0:
            raise ValueError(
                f"need 0 <= x_lo <= x_hi <= 1, got [{self.x_lo!r}, {self.x_hi!r}]"
            )

    def __call__(self, x: float) -> float:
        return throughput(self, x)


@dataclass(frozen=True)
class EnergyAccount:
    epsilon: float  # harvested energy per frame, J
    p_u: float  # user transmit power, W
    p_d: float  # HAP transmit power, W


def dbm_to_watts(level_dbm: float) -> float:
    if not math.isfinite(level_dbm):
        raise ValueError(f"power level must be finite, got {level_dbm!r}")
    return 10.0 ** ((level_dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    return 10.0 * math.log10(watts) + 30.0


def gamma_tdd(params: SystemParams, p_d: float) -> float:
    """Effective uplink SNR when the HAP radiates ``p_d`` over the full band."""
    if p_d < 0.0:
        raise ValueError(f"p_d must be >= 0, got {p_d!r}")
    return params.g_gain * params.h_gain * p_d / params.sigma2


def gamma_fdd(params: SystemParams, s: float) -> float:
    """Effective uplink SNR when the HAP transmits at spectral density ``s``."""
    if s < 0.0:
        raise ValueError(f"s must be >= 0, got {s!r}")
    return params.g_gain * params.h_gain * s * params.w0 / params.sigma2


def throughput(obj: ObjectiveSpec, x: float) -> float:
    """Uplink rate in bit/s with a fraction ``x`` spent on energy transfer.

    Evaluates ``(1 - x) * w0 * log2(1 + gamma * x / (1 - x))``. The value at
    ``x = 1`` is the continuous limit, zero.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {x!r}")
    if x == 1.0 or x == 0.0:
        return 0.0
    rest = 1.0 - x
    return rest * obj.w0 * math.log1p(obj.gamma * x / rest) / LN2


def throughput_array(gamma: float, w0: float, x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`throughput` for grid scans."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0.0) | (x > 1.0)):
        raise ValueError("fractions must lie in [0, 1]")
    rest = 1.0 - x
    out = np.zeros_like(x)
    inner = (x > 0.0) & (x < 1.0)
    r = rest[inner]
    out[inner] = r * w0 * np.log1p(gamma * x[inner] / r) / LN2
    return out


def energy_account_tdd(params: SystemParams, p_d: float, tau: float) -> EnergyAccount:
    if not 0.0 <= tau < 1.0:
        raise ValueError(f"tau must lie in [0, 1), got {tau!r}")
    if p_d < 0.0:
        raise ValueError(f"p_d must be >= 0, got {p_d!r}")
    epsilon = tau * params.t_frame * p_d * params.h_gain
    p_u = epsilon / ((1.0 - tau) * params.t_frame)
    return EnergyAccount(epsilon=epsilon, p_u=p_u, p_d=p_d)


def energy_account_fdd(params: SystemParams, beta: float, s: float) -> EnergyAccount:
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta!r}")
    if s < 0.0:
        raise ValueError(f"s must be >= 0, got {s!r}")
    p_d = beta * params.w0 * s
    epsilon = params.t_frame * p_d * params.h_gain
    return EnergyAccount(epsilon=epsilon, p_u=epsilon / params.t_frame, p_d=p_d)
