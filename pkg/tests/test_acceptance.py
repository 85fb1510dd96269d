"""Exit criteria: the four reported scenarios, oracle agreement, the property
suite and run determinism. Each test appends one PASS/FAIL line to the
"acceptance criteria" section of the pytest summary."""

import json
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, scenario
from wpcn.cli import main
from wpcn.duplex import POWER_CAP, compare, solve_fdd, solve_tdd
from wpcn.fading import ChannelKind, ChannelModel, simulate_blocks
from wpcn.model import ObjectiveSpec, throughput, throughput_array
from wpcn.optimizer import grid_oracle, maximize_concave

N_DRAWS = 100
KBPS = 1e3


def record(number: int, title: str, checks: list[tuple[str, bool]]) -> None:
    failed = [name for name, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    detail = "; ".join(name for name, _ in checks) if not failed else "failed: " + "; ".join(failed)
    ACCEPTANCE_LINES.append(f"criterion {number} [{status}] {title} -- {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert not failed, ACCEPTANCE_LINES[-1]


def per_call_seconds(fn, repeats: int = 300) -> float:
    fn()
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def within(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol


def random_params(rng: np.random.Generator, n: int):
    def lu(lo, hi):
        return float(10.0 ** rng.uniform(np.log10(lo), np.log10(hi)))

    return [
        scenario(
            sigma2=lu(1e-17, 1e-13),
            p_max=lu(1e-3, 1.0),
            s_max=lu(1e-7, 1e-3),
            w0=lu(1e3, 1e6),
            h_gain=lu(1e-8, 1e-4),
            g_gain=lu(1e-8, 1e-4),
        )
        for _ in range(n)
    ]


def numeric(sol):
    return (sol.tau_star, sol.p_d, sol.s_implied, sol.gamma, sol.rate)


def test_criterion_1_scenario1():
    p = scenario()
    tdd, fdd = solve_tdd(p), solve_fdd(p)
    t_tdd = per_call_seconds(lambda: solve_tdd(p))
    t_fdd = per_call_seconds(lambda: solve_fdd(p))
    record(
        1,
        "scenario 1",
        [
            (f"tau*={tdd.tau_star:.4f} in 0.27+-0.005", within(tdd.tau_star, 0.27, 0.005)),
            (f"R_tdd={tdd.rate / KBPS:.3f} kbit/s in 38.3+-0.05", within(tdd.rate / KBPS, 38.3, 0.05)),
            (f"beta*={fdd.beta_star:.4f} in 0.27+-0.005", within(fdd.beta_star, 0.27, 0.005)),
            (f"R_fdd={fdd.rate / KBPS:.3f} kbit/s in 38.3+-0.05", within(fdd.rate / KBPS, 38.3, 0.05)),
            (f"solve_tdd {t_tdd * 1e6:.0f} us < 1 ms", t_tdd < 1e-3),
            (f"solve_fdd {t_fdd * 1e6:.0f} us < 1 ms", t_fdd < 1e-3),
        ],
    )


def test_criterion_2_scenario2():
    p1, p2 = scenario(), scenario(s_max=1e-4)
    fdd = solve_fdd(p2)
    record(
        2,
        "scenario 2",
        [
            (f"beta*={fdd.beta_star:.5f} in 0.100+-0.001", within(fdd.beta_star, 0.1, 0.001)),
            (f"binding={','.join(fdd.binding)} includes power_cap", POWER_CAP in fdd.binding),
            (f"R_fdd={fdd.rate / KBPS:.3f} kbit/s in 61.3+-0.05", within(fdd.rate / KBPS, 61.3, 0.05)),
            ("TDD numbers identical to scenario 1", numeric(solve_tdd(p2)) == numeric(solve_tdd(p1))),
        ],
    )


def test_criterion_3_scenarios_3_and_4():
    p = scenario(p_max=0.01)
    cmp = compare(p)
    tdd, fdd = cmp.tdd, cmp.fdd
    record(
        3,
        "scenarios 3-4",
        [
            (f"tau*={tdd.tau_star:.4f} in 0.42+-0.005", within(tdd.tau_star, 0.42, 0.005)),
            (f"R_tdd={tdd.rate / KBPS:.4f} kbit/s in 17.7+-0.05", within(tdd.rate / KBPS, 17.7, 0.05)),
            (f"beta*={fdd.beta_star:.5f} in 0.100+-0.001", within(fdd.beta_star, 0.1, 0.001)),
            (f"R_fdd={fdd.rate / KBPS:.3f} kbit/s in 32.4+-0.05", within(fdd.rate / KBPS, 32.4, 0.05)),
            (f"winner={cmp.winner}", cmp.winner == "fdd"),
        ],
    )


def test_criterion_4_oracle_equivalence():
    rng = np.random.default_rng(20240601)
    gammas = 10.0 ** rng.uniform(-3.0, 6.0, N_DRAWS)
    w0 = 1e4
    worst_x = worst_rate = 0.0
    start = time.perf_counter()
    for gamma in gammas:
        golden = maximize_concave(ObjectiveSpec(float(gamma), w0), 0.0, 1.0)
        grid = grid_oracle(lambda x: throughput_array(float(gamma), w0, x), 0.0, 1.0, 10**6, vectorized=True)
        worst_x = max(worst_x, abs(golden.x_star - grid.x_star))
        worst_rate = max(worst_rate, abs(golden.f_star - grid.f_star) / grid.f_star)
    elapsed = time.perf_counter() - start
    record(
        4,
        "golden section vs 1e6-point grid",
        [
            (f"max |dx|={worst_x:.2e} <= 2e-6", worst_x <= 2e-6),
            (f"max rel dR={worst_rate:.2e} <= 1e-9", worst_rate <= 1e-9),
            (f"{elapsed:.2f} s < 10 s", elapsed < 10.0),
        ],
    )


def test_criterion_5_property_suite():
    rng = np.random.default_rng(7)
    draws = random_params(rng, N_DRAWS)
    checks = []

    ok = True
    for p in draws:
        obj = ObjectiveSpec(p.g_gain * p.h_gain * p.p_max / p.sigma2, p.w0)
        ok &= throughput(obj, 0.0) == 0.0 and throughput(obj, 1.0) == 0.0
    checks.append(("endpoints zero", ok))

    ok = True
    for _ in range(N_DRAWS):
        obj = ObjectiveSpec(float(10.0 ** rng.uniform(-3, 6)), 1e4)
        x1, x2 = rng.uniform(0.0, 1.0, 2)
        lam = rng.uniform(0.0, 1.0)
        mid = throughput(obj, lam * x1 + (1 - lam) * x2)
        chord = lam * throughput(obj, x1) + (1 - lam) * throughput(obj, x2)
        ok &= mid >= chord - 1e-9 * max(chord, 1.0)
    checks.append(("concavity on random triples", ok))

    monotone = invariant = True
    for p in draws:
        sweep = np.geomspace(p.s_max / 100, p.s_max * 100, 20)
        rates = [solve_fdd(p.replace(s_max=float(s))).rate for s in sweep]
        monotone &= all(b >= a * (1 - 1e-9) for a, b in zip(rates, rates[1:]))
        above = [float(s) for s in sweep if p.w0 * s >= p.p_max]
        outputs = {numeric(solve_tdd(p.replace(s_max=s))) for s in above}
        invariant &= len(outputs) <= 1
    checks.append(("FDD non-decreasing along 20-point s_max sweep", monotone))
    checks.append(("TDD invariant where w0*s_max >= p_max", invariant))

    ok = True
    for p in draws:
        base = p.replace(s_max=p.p_max / p.w0)
        reduced = base.replace(p_max=base.p_max * float(rng.uniform(0.01, 0.99)))
        t0, t1 = solve_tdd(base).rate, solve_tdd(reduced).rate
        f0, f1 = solve_fdd(base).rate, solve_fdd(reduced).rate
        ok &= (f0 - f1) <= (t0 - t1) + 1e-9 * t0
    checks.append(("power reduction: FDD drop <= TDD drop", ok))

    # (h*k, p_max/k, s_max*k) keeps g*h*p_d fixed only while the amplifier cap
    # binds on both sides, i.e. k**2 >= p_max / (w0 * s_max) with w0*s_max >= p_max
    ok = True
    for p in draws:
        base = p if p.w0 * p.s_max >= p.p_max else p.replace(s_max=10 * p.p_max / p.w0)
        k_min = np.sqrt(base.p_max / (base.w0 * base.s_max))
        k = float(10.0 ** rng.uniform(np.log10(k_min), 3.0))
        scaled = base.replace(h_gain=base.h_gain * k, p_max=base.p_max / k, s_max=base.s_max * k)
        a, b = solve_tdd(base), solve_tdd(scaled)
        ok &= abs(a.tau_star - b.tau_star) <= 1e-6 and abs(a.rate - b.rate) <= 1e-9 * a.rate
    checks.append(("TDD gamma-scale invariance", ok))

    record(5, f"property suite ({N_DRAWS} draws each)", checks)


def _cli_bytes(tmp_path, config: dict, command: str, fmt: str) -> bytes:
    cfg = tmp_path / f"{command}.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / f"{command}.{fmt}"
    assert main([command, str(cfg), "--format", fmt, "--output", str(out)]) == 0
    return out.read_bytes()


def test_criterion_6_determinism(tmp_path):
    base = {
        "sigma2_dbm": -120,
        "p_max_watts": 0.1,
        "s_max_w_per_hz": 1e-5,
        "w0_hz": 1e4,
        "t_frame_s": 1e-3,
        "h_gain": 1e-6,
        "g_gain": 1e-6,
    }
    runs = [
        ("solve", base),
        ("compare", base),
        ("sweep", {**base, "sweep_parameter": "s_max", "sweep_start": 1e-6, "sweep_stop": 1e-3, "sweep_n": 20,
                   "sweep_spacing": "log"}),
        ("montecarlo", {**base, "channel_model": "exponential", "n_blocks": 2000, "seed": 42}),
    ]
    identical = True
    for command, config in runs:
        for fmt in ("csv", "json"):
            identical &= _cli_bytes(tmp_path, config, command, fmt) == _cli_bytes(tmp_path, config, command, fmt)

    p = scenario()
    tdd, fdd = solve_tdd(p), solve_fdd(p)
    blocks = simulate_blocks(p, ChannelModel(ChannelKind.DETERMINISTIC, 1e-6, 1e-6), 500, seed=42)
    exact = (
        np.all(blocks.tau_star == tdd.tau_star)
        and np.all(blocks.rate_tdd == tdd.rate)
        and np.all(blocks.beta_star == fdd.beta_star)
        and np.all(blocks.rate_fdd == fdd.rate)
    )
    in_band = within(tdd.tau_star, 0.27, 0.005) and within(tdd.rate / KBPS, 38.3, 0.05)
    record(
        6,
        "determinism",
        [
            ("repeated CLI runs byte-identical (solve/compare/sweep/montecarlo, csv+json)", identical),
            ("deterministic-channel Monte Carlo equals scenario 1 on all 500 blocks", bool(exact and in_band)),
        ],
    )
