"""
Application context for the MCP server.
Hands the shared run store to tools without a circular import.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import TYPE_CHECKING

# Use forward references to avoid circular imports
if TYPE_CHECKING:
    from mcp.server.fastmcp import FastMCP
    from core.run_store import RunStore


@dataclass
class AppContext:
    """Shared state available to every registered tool."""

    run_store: "RunStore"


def get_app_context(mcp: "FastMCP") -> AppContext:
    """Typed access to the server's global run store."""
    from mcp_server import run_store

    return AppContext(run_store=run_store)
