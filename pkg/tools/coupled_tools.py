from typing import Literal, Optional

from mcp.server.fastmcp import FastMCP
from pydantic import Field

from context import get_app_context
from core.experiments import RunTable, depth_sweep, quench_timeseries, sync_sweep
from logging_config import get_logger
from models import DepthSweepConfig, GridSpec, QuenchConfig, SyncSweepConfig

logger = get_logger(__name__)


def _grid(start: Optional[float], stop: Optional[float], count: Optional[int]) -> Optional[GridSpec]:
    if start is None and stop is None and count is None:
        return None
    if start is None or stop is None or count is None:
        raise ValueError("grid_start, grid_stop and grid_count must be given together")
    return GridSpec(start=start, stop=stop, count=count)


def _drop_none(**values) -> dict:
    return {k: v for k, v in values.items() if v is not None}


def format_run_summary(handle: str, table: RunTable) -> str:
    """Short text report of a stored run for the MCP client."""
    lines = [
        f"✅ {table.command} run stored",
        f"📁 Handle: {handle}",
        f"📊 Rows: {len(table.rows)} | Columns: {', '.join(table.columns)}",
    ]
    for key, value in table.summary.items():
        lines.append(f"  - {key}: {value:.6g}" if isinstance(value, float) else f"  - {key}: {value}")
    lines.append("Use `read_run` with the handle to fetch the CSV.")
    return "\n".join(lines)


def register_coupled_tools(mcp: FastMCP):
    """Register the coupled-oscillator run tools."""

    logger.info("Registering coupled-oscillator tools with MCP server")

    @mcp.tool(
        name="run_depth_sweep",
        description="""Circuit depth of the two coupled oscillators in a magnetic field, swept over one parameter.

        Columns: sweep value, depth, weak-coupling, field-dominated and strong-coupling estimates.
        Uses the steady state unless `at_time` is given, in which case the coupling is quenched
        from 0 at t = 0 and the state at `at_time` is used.

        Returns:
            Run handle plus min/max depth
        """,
    )
    async def run_depth_sweep(
        sweep: Literal["g", "omega_c", "delta", "detuning"] = Field(
            default="g", description="Swept parameter"
        ),
        omega1: Optional[float] = Field(default=None, description="Natural frequency of oscillator 1"),
        omega2: Optional[float] = Field(default=None, description="Natural frequency of oscillator 2"),
        g: Optional[float] = Field(default=None, description="Coupling (held value when not swept)"),
        omega_c: Optional[float] = Field(default=None, description="Cyclotron frequency"),
        omega_r: Optional[float] = Field(default=None, description="Reference-state frequency"),
        theta: Optional[float] = Field(default=None, description="Mixing-angle override"),
        grid_start: Optional[float] = Field(default=None, description="First sweep value"),
        grid_stop: Optional[float] = Field(default=None, description="Last sweep value"),
        grid_count: Optional[int] = Field(default=None, description="Number of sweep points"),
        at_time: Optional[float] = Field(default=None, description="Time after the coupling quench"),
    ) -> str:
        try:
            cfg = DepthSweepConfig.model_validate(
                _drop_none(
                    sweep=sweep, omega1=omega1, omega2=omega2, g=g, omega_c=omega_c,
                    omega_r=omega_r, theta=theta, at_time=at_time,
                    grid=_grid(grid_start, grid_stop, grid_count),
                )
            )
            table = await depth_sweep(cfg)
            handle = await get_app_context(mcp).run_store.store_run(table)
            return format_run_summary(handle, table)
        except ValueError as e:
            logger.warning(f"run_depth_sweep rejected: {e}")
            return f"❌ Error: {e}"
        except Exception as e:
            logger.exception(f"Error in run_depth_sweep: {e}")
            return f"❌ Error running depth sweep: {str(e)}"

    @mcp.tool(
        name="run_sync_sweep",
        description="""Steady-state synchronization S_c and mutual information I (nats) of the
        coupled oscillators, swept over one parameter (detuning by default).

        Returns:
            Run handle plus mean S_c and mean I
        """,
    )
    async def run_sync_sweep(
        sweep: Literal["g", "omega_c", "delta", "detuning"] = Field(
            default="detuning", description="Swept parameter"
        ),
        omega1: Optional[float] = Field(default=None, description="Natural frequency of oscillator 1"),
        omega2: Optional[float] = Field(default=None, description="Natural frequency of oscillator 2"),
        g: Optional[float] = Field(default=None, description="Coupling"),
        omega_c: Optional[float] = Field(default=None, description="Cyclotron frequency"),
        omega_r: Optional[float] = Field(default=None, description="Reference-state frequency"),
        theta: Optional[float] = Field(default=None, description="Mixing-angle override"),
        grid_start: Optional[float] = Field(default=None, description="First sweep value"),
        grid_stop: Optional[float] = Field(default=None, description="Last sweep value"),
        grid_count: Optional[int] = Field(default=None, description="Number of sweep points"),
    ) -> str:
        try:
            cfg = SyncSweepConfig.model_validate(
                _drop_none(
                    sweep=sweep, omega1=omega1, omega2=omega2, g=g, omega_c=omega_c,
                    omega_r=omega_r, theta=theta,
                    grid=_grid(grid_start, grid_stop, grid_count),
                )
            )
            table = await sync_sweep(cfg)
            handle = await get_app_context(mcp).run_store.store_run(table)
            return format_run_summary(handle, table)
        except ValueError as e:
            logger.warning(f"run_sync_sweep rejected: {e}")
            return f"❌ Error: {e}"
        except Exception as e:
            logger.exception(f"Error in run_sync_sweep: {e}")
            return f"❌ Error running synchronization sweep: {str(e)}"

    @mcp.tool(
        name="run_quench",
        description="""Time series after a sudden quench of the coupled oscillators (coupling 0 -> g_f).

        Columns: t, S_c, I, depth, h1, h2, followed by a 'mean' row of time averages.

        Returns:
            Run handle plus time-averaged S_c, I and depth
        """,
    )
    async def run_quench(
        omega_i1: Optional[float] = Field(default=None, description="Pre-quench frequency 1"),
        omega_i2: Optional[float] = Field(default=None, description="Pre-quench frequency 2"),
        omega_f1: Optional[float] = Field(default=None, description="Post-quench frequency 1"),
        omega_f2: Optional[float] = Field(default=None, description="Post-quench frequency 2"),
        g_f: Optional[float] = Field(default=None, description="Post-quench coupling"),
        omega_c: Optional[float] = Field(default=None, description="Cyclotron frequency"),
        omega_r: Optional[float] = Field(default=None, description="Reference-state frequency"),
        theta: Optional[float] = Field(default=None, description="Post-quench mixing-angle override"),
        step: Optional[float] = Field(default=None, description="Ermakov integration step"),
        t_stop: Optional[float] = Field(default=None, description="End of the time series"),
        count: Optional[int] = Field(default=None, description="Number of output times"),
    ) -> str:
        try:
            grid = None
            if t_stop is not None or count is not None:
                defaults = QuenchConfig().grid
                grid = GridSpec(
                    start=0.0,
                    stop=t_stop if t_stop is not None else defaults.stop,
                    count=count if count is not None else defaults.count,
                )
            cfg = QuenchConfig.model_validate(
                _drop_none(
                    omega_i1=omega_i1, omega_i2=omega_i2, omega_f1=omega_f1, omega_f2=omega_f2,
                    g_f=g_f, omega_c=omega_c, omega_r=omega_r, theta=theta, step=step, grid=grid,
                )
            )
            table = await quench_timeseries(cfg)
            handle = await get_app_context(mcp).run_store.store_run(table)
            return format_run_summary(handle, table)
        except ValueError as e:
            logger.warning(f"run_quench rejected: {e}")
            return f"❌ Error: {e}"
        except Exception as e:
            logger.exception(f"Error in run_quench: {e}")
            return f"❌ Error running quench: {str(e)}"
