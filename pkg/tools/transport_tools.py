from typing import List, Literal, Optional

from mcp.server.fastmcp import FastMCP
from pydantic import Field

from context import get_app_context
from core.experiments import transport_run
from logging_config import get_logger
from models import TransportConfig
from tools.coupled_tools import _drop_none, _grid, format_run_summary

logger = get_logger(__name__)


def register_transport_tools(mcp: FastMCP):
    """Register the ion-transport run tool."""

    logger.info("Registering transport tools with MCP server")

    @mcp.tool(
        name="run_transport",
        description="""Coherent transport of a trapped ion in a moving harmonic trap.

        Protocols: 'sudden' (trap jumps by d0 at t = 0), 'smooth' (d = L sin^2(pi t / 2T)),
        'tabulated' (two-column file given by table_path).

        Columns: protocol, t, Re alpha, Im alpha, fidelity F, TFD complexity C, nonadiabaticity Q.

        Returns:
            Run handle plus the peak Q of each protocol
        """,
    )
    async def run_transport(
        protocols: Optional[List[Literal["sudden", "smooth", "tabulated"]]] = Field(
            default=None, description="Protocols to simulate (default: sudden and smooth)"
        ),
        m: Optional[float] = Field(default=None, description="Ion mass"),
        omega: Optional[float] = Field(default=None, description="Trap frequency"),
        beta: Optional[float] = Field(default=None, description="Inverse temperature of the TFD state"),
        d0: Optional[float] = Field(default=None, description="Sudden jump length"),
        length: Optional[float] = Field(default=None, description="Smooth transport length L"),
        duration: Optional[float] = Field(default=None, description="Smooth transport time T"),
        table_path: Optional[str] = Field(default=None, description="Path of a tabulated protocol"),
        grid_stop: Optional[float] = Field(default=None, description="End time (grid starts at 0)"),
        grid_count: Optional[int] = Field(default=None, description="Number of output times"),
    ) -> str:
        try:
            grid = None
            if grid_stop is not None or grid_count is not None:
                defaults = TransportConfig().grid
                grid = _grid(
                    0.0,
                    grid_stop if grid_stop is not None else defaults.stop,
                    grid_count if grid_count is not None else defaults.count,
                )
            cfg = TransportConfig.model_validate(
                _drop_none(
                    protocols=protocols, m=m, omega=omega, beta=beta, d0=d0, length=length,
                    duration=duration, table_path=table_path, grid=grid,
                )
            )
            table = await transport_run(cfg)
            handle = await get_app_context(mcp).run_store.store_run(table)
            return format_run_summary(handle, table)
        except ValueError as e:
            logger.warning(f"run_transport rejected: {e}")
            return f"❌ Error: {e}"
        except Exception as e:
            logger.exception(f"Error in run_transport: {e}")
            return f"❌ Error running transport: {str(e)}"
