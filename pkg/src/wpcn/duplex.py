"""Throughput-optimal resource split for TDD and FDD, and their comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    EnergyAccount,
    ObjectiveSpec,
    SystemParams,
    energy_account_fdd,
    energy_account_tdd,
    gamma_fdd,
    gamma_tdd,
    throughput,
)
from .optimizer import DEFAULT_TOL, maximize_concave

TIE_RTOL = 1e-9

# binding-constraint labels
PSD_CAP = "psd_cap"
POWER_CAP = "power_cap"
TIME_UNIT_INTERVAL = "time_unit_interval"
BANDWIDTH_UNIT_INTERVAL = "bandwidth_unit_interval"
INTERIOR = "interior"


@dataclass(frozen=True)
class TddSolution:
    tau_star: float
    p_d: float
    s_implied: float
    gamma: float
    rate: float
    binding: tuple[str, ...]

    def energy(self, params: SystemParams) -> EnergyAccount:
        return energy_account_tdd(params, self.p_d, self.tau_star)


@dataclass(frozen=True)
class FddSolution:
    beta_star: float
    s: float
    p_d: float
    beta_cap: float
    gamma: float
    rate: float
    binding: tuple[str, ...]

    def energy(self, params: SystemParams) -> EnergyAccount:
        return energy_account_fdd(params, self.beta_star, self.s)


@dataclass(frozen=True)
class Comparison:
    tdd: TddSolution
    fdd: FddSolution
    rate_ratio: float | None  # fdd / tdd; None when the TDD rate is zero
    winner: str  # "tdd", "fdd" or "tie"


def solve_tdd(params: SystemParams, tol: float = DEFAULT_TOL) -> TddSolution:
    """Harvest-then-transmit over the full band.

    The rate grows with the HAP power, so the power sits at the tighter of
    the amplifier cap and the spectral-density cap; only the time split is
    searched.
    """
    psd_power = params.w0 * params.s_max
    p_d = min(params.p_max, psd_power)
    binding = []
    if params.p_max <= psd_power:
        binding.append(POWER_CAP)
    if psd_power <= params.p_max:
        binding.append(PSD_CAP)

    obj = ObjectiveSpec(gamma_tdd(params, p_d), params.w0, 0.0, 1.0)
    res = maximize_concave(obj, 0.0, 1.0, tol)
    if res.x_star in (0.0, 1.0):
        binding.append(TIME_UNIT_INTERVAL)
    return TddSolution(
        tau_star=res.x_star,
        p_d=p_d,
        s_implied=p_d / params.w0,
        gamma=obj.gamma,
        rate=throughput(obj, res.x_star),
        binding=tuple(sorted(binding)),
    )


def fdd_beta_cap(params: SystemParams) -> float:
    """Largest energy-band fraction the amplifier can feed at full PSD."""
    return min(1.0, params.p_max / (params.w0 * params.s_max))


def solve_fdd(params: SystemParams, tol: float = DEFAULT_TOL) -> FddSolution:
    """Continuous energy transfer on a sub-band at the maximum PSD."""
    s = params.s_max
    beta_cap = fdd_beta_cap(params)
    obj = ObjectiveSpec(gamma_fdd(params, s), params.w0, 0.0, beta_cap)
    res = maximize_concave(obj, 0.0, beta_cap, tol)
    beta = res.x_star

    if beta == beta_cap and beta_cap < 1.0:
        binding = (POWER_CAP,)
    elif beta in (0.0, 1.0):
        binding = (BANDWIDTH_UNIT_INTERVAL,)
    else:
        binding = (INTERIOR,)
    return FddSolution(
        beta_star=beta,
        s=s,
        p_d=min(beta * params.w0 * s, params.p_max),
        beta_cap=beta_cap,
        gamma=obj.gamma,
        rate=throughput(obj, beta),
        binding=binding,
    )


def pick_winner(rate_tdd: float, rate_fdd: float, rtol: float = TIE_RTOL) -> str:
    if math.isclose(rate_tdd, rate_fdd, rel_tol=rtol, abs_tol=0.0) or rate_tdd == rate_fdd:
        return "tie"
    return "fdd" if rate_fdd > rate_tdd else "tdd"


def compare(params: SystemParams, tol: float = DEFAULT_TOL) -> Comparison:
    tdd = solve_tdd(params, tol)
    fdd = solve_fdd(params, tol)
    ratio = fdd.rate / tdd.rate if tdd.rate > 0.0 else None
    return Comparison(tdd, fdd, ratio, pick_winner(tdd.rate, fdd.rate))
