"""
MCP Server for the harmonic-information simulations.
Exposes the coupled-oscillator and transport runs as tools.
"""

import os

# FastMCP imports
from mcp.server.fastmcp import FastMCP

# Local imports
from logging_config import get_logger
from config import config
from core.run_store import RunStore

# Tool imports
from tools import register_coupled_tools, register_run_tools, register_transport_tools

logger = get_logger(__name__)

SERVER_NAME = "harmonic-information"

# ===== Initialize Global Managers =====
run_store = RunStore()


# ===== FastMCP Server =====
mcp = FastMCP(
    SERVER_NAME,
    host=os.getenv("MCP_HOST", "127.0.0.1"),
    port=int(os.getenv("MCP_SERVER_PORT", "8001")),
)

# Register all tools
register_coupled_tools(mcp)
register_transport_tools(mcp)
register_run_tools(mcp)


# ===== Resource Implementations =====
@mcp.resource("config://server")
def get_server_config() -> str:
    """Get server configuration information."""
    return f"""Harmonic Information MCP Server Configuration:
- Server Name: {SERVER_NAME}
- Runs Path: {run_store.base_path}
- Max Stored Runs: {run_store.max_runs}
- Ermakov Step: {config.ermakov_step}
- Significant Digits: {config.significant_digits}
- Available Tools: run_depth_sweep, run_sync_sweep, run_quench, run_transport, list_runs, read_run
- Transport Support: stdio, SSE
"""


# ===== Main Function =====
def main():
    """Main entry point for the MCP server."""
    transport = os.getenv("MCP_TRANSPORT", "stdio")
    logger.info(f"🔬 Harmonic Information MCP Server ({transport})")

    if transport == "sse":
        logger.info(f"🌐 Starting SSE transport on http://{mcp.settings.host}:{mcp.settings.port}/sse")

    mcp.run(transport)


if __name__ == "__main__":
    main()
