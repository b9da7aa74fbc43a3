from mcp.server.fastmcp import FastMCP
from pydantic import Field

from context import get_app_context
from logging_config import get_logger

logger = get_logger(__name__)

# rows shown by read_run before truncation
PREVIEW_ROWS = 200


def register_run_tools(mcp: FastMCP):
    """Register tools for browsing stored runs."""

    logger.info("Registering run storage tools with MCP server")

    @mcp.tool(
        name="list_runs",
        description="List stored simulation runs, newest first, with their handles and sizes.",
    )
    async def list_runs() -> str:
        try:
            runs = await get_app_context(mcp).run_store.list_runs()
            if not runs:
                return "No stored runs."
            lines = [f"📁 {len(runs)} stored runs:"]
            for run in runs:
                lines.append(
                    f"- {run['handle']} ({run['command']}, {run['size_bytes']} bytes, "
                    f"{run['modified_at'].isoformat(timespec='seconds')})"
                )
            return "\n".join(lines)
        except Exception as e:
            logger.exception(f"Error in list_runs: {e}")
            return f"❌ Error listing runs: {str(e)}"

    @mcp.tool(
        name="read_run",
        description="Return the CSV of a stored run. Long runs are truncated to the first rows.",
    )
    async def read_run(
        handle: str = Field(description="Run handle returned by a run_* tool"),
        max_rows: int = Field(default=PREVIEW_ROWS, description="Maximum data rows to return"),
    ) -> str:
        try:
            text = await get_app_context(mcp).run_store.read_run(handle)
            if text is None:
                return f"❌ Error: run '{handle}' not found. Use `list_runs` to see stored runs."
            lines = text.splitlines()
            header = [line for line in lines if line.startswith("#")]
            body = [line for line in lines if not line.startswith("#")]
            # body[0] is the column header
            if len(body) - 1 > max_rows:
                omitted = len(body) - 1 - max_rows
                body = body[: max_rows + 1] + [f"# ... {omitted} more rows"]
            return "\n".join(header + body)
        except ValueError as e:
            return f"❌ Error: {e}"
        except Exception as e:
            logger.exception(f"Error in read_run: {e}")
            return f"❌ Error reading run: {str(e)}"
