"""Monte-Carlo evaluation over independent block-fading frames.

Each block gets its own Philox substream keyed by the run seed, with the
block index in the counter. A block's draws therefore do not depend on which
worker handles it or in what order blocks run.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .duplex import compare
from .model import SystemParams
from .optimizer import DEFAULT_TOL

QUANTILE_LEVELS = {"p5": 0.05, "p50": 0.50, "p95": 0.95}
MAX_SEED = 2**64 - 1


class ChannelKind(str, Enum):
    DETERMINISTIC = "deterministic"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class ChannelModel:
    kind: ChannelKind
    mean_h: float
    mean_g: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        for name in ("mean_h", "mean_g"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class MonteCarloReport:
    n_blocks: int
    mean_rate_tdd: float
    mean_rate_fdd: float
    quantiles: dict  # {"tdd": {"p5": .., "p50": .., "p95": ..}, "fdd": {...}}
    seed: int


@dataclass(frozen=True)
class BlockResults:
    """Per-block draws and solutions, in block order."""

    h: np.ndarray
    g: np.ndarray
    tau_star: np.ndarray
    rate_tdd: np.ndarray
    beta_star: np.ndarray
    rate_fdd: np.ndarray


def block_rng(seed: int, block: int) -> np.random.Generator:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, block, 0, 0]))


def draw_block(model: ChannelModel, rng: np.random.Generator) -> tuple[float, float]:
    """Channel power gains ``(h, g)`` for one block."""
    if model.kind is ChannelKind.DETERMINISTIC:
        return model.mean_h, model.mean_g
    h = float(rng.exponential(model.mean_h))
    g = float(rng.exponential(model.mean_g))
    return h, g


def _run_range(args) -> np.ndarray:
    params, model, seed, start, stop, tol = args
    out = np.empty((stop - start, 6))
    for row, block in enumerate(range(start, stop)):
        h, g = draw_block(model, block_rng(seed, block))
        cmp = compare(params.replace(h_gain=h, g_gain=g), tol)
        out[row] = (h, g, cmp.tdd.tau_star, cmp.tdd.rate, cmp.fdd.beta_star, cmp.fdd.rate)
    return out


def simulate_blocks(
    params: SystemParams,
    model: ChannelModel,
    n_blocks: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> BlockResults:
    """Draw ``n_blocks`` channels and re-optimize both schemes on each.

    ``params.h_gain`` and ``params.g_gain`` are replaced by the drawn gains.
    """
    if n_blocks < 1:
        raise ValueError(f"n_blocks must be >= 1, got {n_blocks!r}")
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")

    if workers <= 1 or n_blocks < 2 * workers:
        table = _run_range((params, model, seed, 0, n_blocks, tol))
    else:
        edges = np.linspace(0, n_blocks, 4 * workers + 1).astype(int)
        jobs = [
            (params, model, seed, int(lo), int(hi), tol)
            for lo, hi in zip(edges[:-1], edges[1:])
            if hi > lo
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            table = np.concatenate(list(pool.map(_run_range, jobs)))
    return BlockResults(*(np.ascontiguousarray(table[:, k]) for k in range(6)))


def _mean(samples: np.ndarray) -> float:
    # shifted sum: a constant sample returns that constant exactly
    base = float(samples.min())
    return base + math.fsum(samples - base) / len(samples)


def _quantiles(samples: np.ndarray) -> dict:
    values = np.quantile(samples, list(QUANTILE_LEVELS.values()))
    return {name: float(v) for name, v in zip(QUANTILE_LEVELS, values)}


def summarize(blocks: BlockResults, seed: int) -> MonteCarloReport:
    return MonteCarloReport(
        n_blocks=len(blocks.rate_tdd),
        mean_rate_tdd=_mean(blocks.rate_tdd),
        mean_rate_fdd=_mean(blocks.rate_fdd),
        quantiles={"tdd": _quantiles(blocks.rate_tdd), "fdd": _quantiles(blocks.rate_fdd)},
        seed=seed,
    )


def monte_carlo(
    params: SystemParams,
    model: ChannelModel,
    n_blocks: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> MonteCarloReport:
    blocks = simulate_blocks(params, model, n_blocks, seed, tol, workers)
    return summarize(blocks, seed)
