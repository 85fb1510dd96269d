"""Uplink throughput of a wireless-powered link under TDD and FDD duplexing."""

from .duplex import Comparison, FddSolution, TddSolution, compare, solve_fdd, solve_tdd
from .fading import ChannelKind, ChannelModel, MonteCarloReport, draw_block, monte_carlo
from .model import (
    EnergyAccount,
    InfeasibleParamsError,
    ObjectiveSpec,
    SystemParams,
    dbm_to_watts,
    energy_account_fdd,
    energy_account_tdd,
    gamma_fdd,
    gamma_tdd,
    throughput,
)
from .optimizer import MaximizerResult, OptimizerError, grid_oracle, maximize_concave

__version__ = "0.1.0"
