"""Rendering of results as tables, CSV and JSON.

Machine formats carry full double precision (``repr`` round-trips); only
the human-readable table rounds, to three significant figures.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

from .duplex import Comparison, FddSolution, TddSolution, compare
from .fading import ChannelModel, MonteCarloReport
from .model import SystemParams

SWEEP_HEADER = (
    "param",
    "value",
    "tau_star",
    "rate_tdd_bps",
    "beta_star",
    "beta_cap",
    "rate_fdd_bps",
    "winner",
)
SOLVE_HEADER = (
    "tau_star",
    "p_d_tdd_watts",
    "gamma_tdd",
    "rate_tdd_bps",
    "beta_star",
    "beta_cap",
    "p_d_fdd_watts",
    "gamma_fdd",
    "rate_fdd_bps",
    "rate_ratio",
    "winner",
)
COMPARE_HEADER = ("rate_tdd_bps", "rate_fdd_bps", "rate_ratio", "winner")
MONTECARLO_HEADER = (
    "n_blocks",
    "seed",
    "channel_model",
    "mean_h",
    "mean_g",
    "mean_rate_tdd_bps",
    "mean_rate_fdd_bps",
    "tdd_p5",
    "tdd_p50",
    "tdd_p95",
    "fdd_p5",
    "fdd_p50",
    "fdd_p95",
)


def sig3(x: float | None) -> str:
    return "-" if x is None else f"{x:.3g}"


def kbps(rate: float) -> str:
    return f"{rate / 1e3:.3g} kbit/s"


# --- dict views (JSON) -----------------------------------------------------


def params_dict(params: SystemParams) -> dict:
    return asdict(params)


def tdd_dict(sol: TddSolution, params: SystemParams) -> dict:
    out = asdict(sol)
    out["binding"] = list(sol.binding)
    out["energy"] = asdict(sol.energy(params)) if sol.tau_star < 1.0 else None
    return out


def fdd_dict(sol: FddSolution, params: SystemParams) -> dict:
    out = asdict(sol)
    out["binding"] = list(sol.binding)
    out["energy"] = asdict(sol.energy(params))
    return out


def comparison_dict(cmp: Comparison) -> dict:
    return {
        "rate_tdd_bps": cmp.tdd.rate,
        "rate_fdd_bps": cmp.fdd.rate,
        "rate_ratio": cmp.rate_ratio,
        "winner": cmp.winner,
    }


def solve_document(params: SystemParams, cmp: Comparison) -> dict:
    return {
        "params": params_dict(params),
        "tdd": tdd_dict(cmp.tdd, params),
        "fdd": fdd_dict(cmp.fdd, params),
        "comparison": comparison_dict(cmp),
    }


def compare_document(params: SystemParams, cmp: Comparison) -> dict:
    return {"params": params_dict(params), "comparison": comparison_dict(cmp)}


def sweep_rows(params: SystemParams, parameter: str, values, tol: float) -> list[dict]:
    rows = []
    for value in values:
        cmp = compare(params.replace(**{parameter: value}), tol)
        rows.append(
            {
                "param": parameter,
                "value": value,
                "tau_star": cmp.tdd.tau_star,
                "rate_tdd_bps": cmp.tdd.rate,
                "beta_star": cmp.fdd.beta_star,
                "beta_cap": cmp.fdd.beta_cap,
                "rate_fdd_bps": cmp.fdd.rate,
                "winner": cmp.winner,
            }
        )
    return rows


def sweep_document(params: SystemParams, parameter: str, values, rows: list[dict]) -> dict:
    return {
        "params": params_dict(params),
        "sweep": {"parameter": parameter, "values": list(values)},
        "rows": rows,
    }


def montecarlo_dict(report: MonteCarloReport, model: ChannelModel) -> dict:
    return {
        "model": {"kind": model.kind.value, "mean_h": model.mean_h, "mean_g": model.mean_g},
        "n_blocks": report.n_blocks,
        "mean_rate_tdd": report.mean_rate_tdd,
        "mean_rate_fdd": report.mean_rate_fdd,
        "quantiles": report.quantiles,
        "seed": report.seed,
    }


def montecarlo_document(params: SystemParams, report: MonteCarloReport, model: ChannelModel) -> dict:
    return {"params": params_dict(params), "montecarlo": montecarlo_dict(report, model)}


def to_json(document: dict) -> str:
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


# --- CSV -------------------------------------------------------------------


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row[name]) for name in header])
    return buf.getvalue()


def solve_csv(cmp: Comparison) -> str:
    row = {
        "tau_star": cmp.tdd.tau_star,
        "p_d_tdd_watts": cmp.tdd.p_d,
        "gamma_tdd": cmp.tdd.gamma,
        "rate_tdd_bps": cmp.tdd.rate,
        "beta_star": cmp.fdd.beta_star,
        "beta_cap": cmp.fdd.beta_cap,
        "p_d_fdd_watts": cmp.fdd.p_d,
        "gamma_fdd": cmp.fdd.gamma,
        "rate_fdd_bps": cmp.fdd.rate,
        "rate_ratio": cmp.rate_ratio,
        "winner": cmp.winner,
    }
    return to_csv(SOLVE_HEADER, [row])


def compare_csv(cmp: Comparison) -> str:
    return to_csv(COMPARE_HEADER, [comparison_dict(cmp)])


def montecarlo_csv(report: MonteCarloReport, model: ChannelModel) -> str:
    q = report.quantiles
    row = {
        "n_blocks": report.n_blocks,
        "seed": report.seed,
        "channel_model": model.kind.value,
        "mean_h": model.mean_h,
        "mean_g": model.mean_g,
        "mean_rate_tdd_bps": report.mean_rate_tdd,
        "mean_rate_fdd_bps": report.mean_rate_fdd,
        **{f"{scheme}_{level}": q[scheme][level] for scheme in ("tdd", "fdd") for level in ("p5", "p50", "p95")},
    }
    return to_csv(MONTECARLO_HEADER, [row])


# --- tables ----------------------------------------------------------------


def _params_lines(params: SystemParams) -> list[str]:
    return [
        f"noise power     {sig3(params.sigma2)} W",
        f"power cap       {sig3(params.p_max)} W",
        f"PSD cap         {sig3(params.s_max)} W/Hz",
        f"bandwidth       {sig3(params.w0)} Hz",
        f"gains h, g      {sig3(params.h_gain)}, {sig3(params.g_gain)}",
    ]


def solve_table(params: SystemParams, cmp: Comparison) -> str:
    tdd, fdd = cmp.tdd, cmp.fdd
    lines = _params_lines(params)
    lines += [
        "",
        f"{'scheme':<8}{'fraction':>10}{'cap':>8}{'p_d [W]':>11}{'gamma':>10}{'rate':>15}  binding",
        f"{'TDD':<8}{'tau*=' + sig3(tdd.tau_star):>10}{'1':>8}{sig3(tdd.p_d):>11}"
        f"{sig3(tdd.gamma):>10}{kbps(tdd.rate):>15}  {','.join(tdd.binding)}",
        f"{'FDD':<8}{'beta*=' + sig3(fdd.beta_star):>10}{sig3(fdd.beta_cap):>8}{sig3(fdd.p_d):>11}"
        f"{sig3(fdd.gamma):>10}{kbps(fdd.rate):>15}  {','.join(fdd.binding)}",
        "",
    ]
    lines += compare_table(cmp).splitlines()
    return "\n".join(lines) + "\n"


def compare_table(cmp: Comparison) -> str:
    return (
        f"TDD rate {kbps(cmp.tdd.rate)}, FDD rate {kbps(cmp.fdd.rate)}, "
        f"FDD/TDD {sig3(cmp.rate_ratio)}, winner: {cmp.winner}\n"
    )


def sweep_table(rows: list[dict]) -> str:
    lines = [f"{'param':<8}{'value':>10}{'tau*':>8}{'TDD rate':>16}{'beta*':>8}{'cap':>8}{'FDD rate':>16}  winner"]
    for r in rows:
        lines.append(
            f"{r['param']:<8}{sig3(r['value']):>10}{sig3(r['tau_star']):>8}{kbps(r['rate_tdd_bps']):>16}"
            f"{sig3(r['beta_star']):>8}{sig3(r['beta_cap']):>8}{kbps(r['rate_fdd_bps']):>16}  {r['winner']}"
        )
    return "\n".join(lines) + "\n"


def montecarlo_table(report: MonteCarloReport, model: ChannelModel) -> str:
    q = report.quantiles
    lines = [
        f"channel model   {model.kind.value} (mean h {sig3(model.mean_h)}, mean g {sig3(model.mean_g)})",
        f"blocks          {report.n_blocks}",
        f"seed            {report.seed}",
        "",
        f"{'scheme':<8}{'mean':>15}{'p5':>15}{'p50':>15}{'p95':>15}",
    ]
    for name, mean in (("tdd", report.mean_rate_tdd), ("fdd", report.mean_rate_fdd)):
        lines.append(
            f"{name.upper():<8}{kbps(mean):>15}{kbps(q[name]['p5']):>15}"
            f"{kbps(q[name]['p50']):>15}{kbps(q[name]['p95']):>15}"
        )
    return "\n".join(lines) + "\n"
