"""
Experiment drivers behind the CLI subcommands and the MCP tools.

Every driver takes a validated run configuration and returns a RunTable.
Sweep points are independent and evaluated concurrently in worker threads;
rows keep sweep order.
"""

from __future__ import annotations

import asyncio
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from config import config
from core.coupled_system import (
    gaussian_exponent_at,
    gaussian_exponents,
    solve_quench,
    steady_state_exponent,
)
from core.gaussian_core import GaussianExponent, exponent_to_covariance
from core.metrics import circuit_depth, depth_diagnostics, mutual_information, synchronization
from core.transport import (
    alpha_of_t,
    coherent_complexity,
    fidelity_series,
    nonadiabaticity,
    read_protocol_table,
    tfd_theta,
)
from logging_config import get_logger
from models import (
    CoupledParams,
    DepthSweepConfig,
    QuenchConfig,
    QuenchSpec,
    SyncSweepConfig,
    SweepVariable,
    TransportConfig,
    TransportProtocol,
)
from utils import render_csv

logger = get_logger(__name__)


@dataclass
class RunTable:
    command: str
    config: BaseModel
    columns: List[str]
    rows: List[Sequence[Any]]
    summary: Dict[str, Any] = field(default_factory=dict)

    def to_csv(self, digits: Optional[int] = None) -> str:
        return render_csv(
            self.columns,
            self.rows,
            metadata={"command": self.command, "config": self.config},
            digits=digits or config.significant_digits,
        )


def params_at(base: CoupledParams, variable: SweepVariable, value: float) -> CoupledParams:
    """
    Parameters at one sweep point.

    delta is omega1^2 - omega2^2 with omega2 held; detuning is omega2 - omega1
    with omega1 held.
    """
    if variable == "g":
        return base.model_copy(update={"g": float(value)})
    if variable == "omega_c":
        if value < 0:
            raise ValueError(f"omega_c must be non-negative, got {value}")
        return base.model_copy(update={"omega_c": float(value)})
    if variable == "delta":
        omega1_sq = base.omega2**2 + value
        if omega1_sq <= 0:
            raise ValueError(f"delta = {value} leaves omega1^2 = {omega1_sq:.6g} <= 0")
        return base.model_copy(update={"omega1": math.sqrt(omega1_sq)})
    if variable == "detuning":
        omega2 = base.omega1 + value
        if omega2 <= 0:
            raise ValueError(f"detuning = {value} leaves omega2 = {omega2:.6g} <= 0")
        return base.model_copy(update={"omega2": float(omega2)})
    raise ValueError(f"unknown sweep variable {variable!r}")


def _base_params(cfg: DepthSweepConfig | SyncSweepConfig) -> CoupledParams:
    return CoupledParams(
        omega1=cfg.omega1,
        omega2=cfg.omega2,
        g=cfg.g,
        omega_c=cfg.omega_c,
        theta=cfg.theta,
        omega_R=cfg.omega_r,
    )


def quenched_exponent(p: CoupledParams, at_time: float, step: Optional[float] = None) -> GaussianExponent:
    """State at `at_time` after switching the coupling on (0 -> p.g) at fixed frequencies."""
    spec = QuenchSpec(
        omega_i1=p.omega1,
        omega_i2=p.omega2,
        omega_f1=p.omega1,
        omega_f2=p.omega2,
        g_f=p.g,
        omega_c=p.omega_c,
        theta=p.theta,
    )
    t_end = at_time if at_time > 0 else (step or config.ermakov_step)
    post, sol = solve_quench(spec, np.array([0.0, t_end]), p.omega_R, step)
    return gaussian_exponent_at(post, sol, at_time)


async def _gather_points(fn, values: np.ndarray) -> List[Sequence[Any]]:
    return list(await asyncio.gather(*(asyncio.to_thread(fn, float(v)) for v in values)))


# ===== Coupled oscillators =====

async def depth_sweep(cfg: DepthSweepConfig) -> RunTable:
    base = _base_params(cfg)
    logger.info(f"Depth sweep over {cfg.sweep}: {cfg.grid.count} points (at_time={cfg.at_time})")

    def point(value: float) -> Sequence[Any]:
        p = params_at(base, cfg.sweep, value)
        if cfg.at_time is None:
            exp, _ = steady_state_exponent(p)
        else:
            exp = quenched_exponent(p, cfg.at_time)
        diag = depth_diagnostics(exp, cfg.omega_r, p.omega_c, p.g)
        return (value, diag.depth, diag.weak_limit, diag.field_limit, diag.strong_limit)

    rows = await _gather_points(point, cfg.grid.values())
    depths = [row[1] for row in rows]
    return RunTable(
        command="depth-sweep",
        config=cfg,
        columns=[cfg.sweep, "depth", "weak_limit_diag", "field_limit_diag", "strong_limit_diag"],
        rows=rows,
        summary={"min_depth": min(depths), "max_depth": max(depths)},
    )


async def sync_sweep(cfg: SyncSweepConfig) -> RunTable:
    base = _base_params(cfg)
    logger.info(f"Synchronization sweep over {cfg.sweep}: {cfg.grid.count} points")

    def point(value: float) -> Sequence[Any]:
        p = params_at(base, cfg.sweep, value)
        exp, _ = steady_state_exponent(p)
        sigma = exponent_to_covariance(exp)
        return (value, synchronization(sigma), mutual_information(sigma))

    rows = await _gather_points(point, cfg.grid.values())
    return RunTable(
        command="sync-sweep",
        config=cfg,
        columns=[cfg.sweep, "S_c", "I"],
        rows=rows,
        summary={
            "mean_S_c": float(np.mean([r[1] for r in rows])),
            "mean_I": float(np.mean([r[2] for r in rows])),
        },
    )


def _quench_rows(cfg: QuenchConfig) -> RunTable:
    spec = cfg.quench_spec()
    post, sol = solve_quench(spec, cfg.grid.values(), cfg.omega_r, cfg.step)
    if sol.residual > 1e-6:
        logger.warning(f"⚠️ Ermakov residual {sol.residual:.3g}; consider a smaller --step")

    a1, a2, a12 = gaussian_exponents(post, sol)
    rows = []
    for i, t in enumerate(sol.t_grid):
        exp = GaussianExponent(complex(a1[i]), complex(a2[i]), complex(a12[i]))
        sigma = exponent_to_covariance(exp)
        rows.append(
            (
                float(t),
                synchronization(sigma),
                mutual_information(sigma),
                circuit_depth(exp, cfg.omega_r),
                float(sol.h1[i]),
                float(sol.h2[i]),
            )
        )

    mean_sc = float(np.mean([r[1] for r in rows]))
    mean_i = float(np.mean([r[2] for r in rows]))
    mean_depth = float(np.mean([r[3] for r in rows]))
    rows.append(("mean", mean_sc, mean_i, mean_depth, None, None))
    return RunTable(
        command="quench",
        config=cfg,
        columns=["t", "S_c", "I", "depth", "h1", "h2"],
        rows=rows,
        summary={
            "mean_S_c": mean_sc,
            "mean_I": mean_i,
            "mean_depth": mean_depth,
            "ermakov_residual": sol.residual,
        },
    )


async def quench_timeseries(cfg: QuenchConfig) -> RunTable:
    logger.info(
        f"Quench: omega_i=({cfg.omega_i1:g}, {cfg.omega_i2:g}) -> omega_f=({cfg.omega_f1:g}, {cfg.omega_f2:g}), "
        f"g: 0 -> {cfg.g_f:g}, omega_c={cfg.omega_c:g}, {cfg.grid.count} points"
    )
    return await asyncio.to_thread(_quench_rows, cfg)


# ===== Transport =====

def build_protocol(cfg: TransportConfig, kind: str) -> TransportProtocol:
    table = read_protocol_table(cfg.table_path) if kind == "tabulated" else None
    return TransportProtocol(
        kind=kind, d0=cfg.d0, length=cfg.length, duration=cfg.duration, table=table
    )


async def transport_run(cfg: TransportConfig) -> RunTable:
    params = cfg.transport_params()
    t_grid = cfg.grid.values()
    vartheta = tfd_theta(params.beta, params.omega)
    logger.info(f"Transport: protocols={cfg.protocols}, omega={params.omega:g}, vartheta={vartheta:.6g}")

    def protocol_rows(kind: str) -> List[Sequence[Any]]:
        traj = alpha_of_t(params, build_protocol(cfg, kind), t_grid)
        fid = fidelity_series(traj)
        return [
            (
                kind,
                float(t),
                float(a.real),
                float(a.imag),
                float(f),
                coherent_complexity(complex(a), vartheta),
                nonadiabaticity(complex(a)),
            )
            for t, a, f in zip(traj.t_grid, traj.alpha, fid)
        ]

    blocks = await asyncio.gather(*(asyncio.to_thread(protocol_rows, kind) for kind in cfg.protocols))
    rows = [row for block in blocks for row in block]
    summary = {f"max_Q_{kind}": max(r[6] for r in block) for kind, block in zip(cfg.protocols, blocks)}
    summary["vartheta"] = vartheta
    return RunTable(
        command="transport",
        config=cfg,
        columns=["protocol", "t", "re_alpha", "im_alpha", "F", "C", "Q"],
        rows=rows,
        summary=summary,
    )
