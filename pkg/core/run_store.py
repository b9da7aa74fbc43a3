"""
Run storage for the MCP server.
Persists rendered run tables as CSV files and manages their cleanup.
"""

import hashlib
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from config import config
from core.experiments import RunTable
from logging_config import get_logger
from utils import use_csv

logger = get_logger(__name__)


class RunStore:
    """Stores run CSVs under a base directory and hands out file handles."""

    def __init__(self, base_path: Optional[str] = None, max_runs: Optional[int] = None):
        self.base_path = Path(base_path or config.runs_path)
        self.max_runs = max_runs or config.max_stored_runs
        logger.info(f"Run store initialized with base path: {self.base_path}")

    def _path_for(self, handle: str) -> Path:
        if Path(handle).name != handle or not handle.endswith(".csv"):
            raise ValueError(f"invalid run handle: {handle!r}")
        return self.base_path / handle

    async def store_run(self, table: RunTable) -> str:
        """Render and store a run; returns its handle."""
        text = table.to_csv()
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:8]
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        handle = f"{table.command}_{timestamp}_{digest}.csv"

        logger.info(f"STORE: Saving {table.command} run ({len(table.rows)} rows) to {handle}")
        await use_csv(str(self._path_for(handle)), "w", text)

        stats = await self.cleanup_oldest_runs(keep_count=self.max_runs)
        if stats["cleaned"]:
            logger.info(f"STORE: Pruned {stats['cleaned']} old runs")
        return handle

    async def read_run(self, handle: str) -> Optional[str]:
        text = await use_csv(str(self._path_for(handle)), "r")
        if text is None:
            logger.warning(f"READ: No run found for handle: {handle}")
        return text

    async def list_runs(self) -> List[Dict[str, Any]]:
        """All stored runs, newest first."""
        if not self.base_path.exists():
            return []

        runs = []
        for file_path in self.base_path.glob("*.csv"):
            stat = file_path.stat()
            runs.append(
                {
                    "handle": file_path.name,
                    "command": file_path.name.split("_", 1)[0],
                    "size_bytes": stat.st_size,
                    "modified_at": datetime.fromtimestamp(stat.st_mtime),
                }
            )
        return sorted(runs, key=lambda x: (x["modified_at"], x["handle"]), reverse=True)

    async def remove_run(self, handle: str) -> bool:
        file_path = self._path_for(handle)
        try:
            if file_path.exists():
                file_path.unlink()
                logger.info(f"REMOVE: Deleted run file: {handle}")
                return True
            return False
        except OSError as e:
            logger.error(f"REMOVE: Failed to delete {handle}: {e}")
            return False

    async def cleanup_oldest_runs(self, keep_count: int = 50) -> Dict[str, Any]:
        """Keep only the newest N runs, remove the rest."""
        runs = await self.list_runs()
        cleaned_count = 0
        freed_bytes = 0
        errors = []

        for run in runs[keep_count:]:
            if await self.remove_run(run["handle"]):
                cleaned_count += 1
                freed_bytes += run["size_bytes"]
            else:
                errors.append(f"Failed to remove {run['handle']}")

        return {
            "cleaned": cleaned_count,
            "freed_mb": round(freed_bytes / (1024 * 1024), 2),
            "errors": errors,
        }

    async def get_storage_stats(self) -> Dict[str, Any]:
        runs = await self.list_runs()
        total_size = sum(r["size_bytes"] for r in runs)
        return {
            "total_runs": len(runs),
            "total_size_mb": round(total_size / (1024 * 1024), 2),
            "newest_run": runs[0]["handle"] if runs else None,
            "oldest_run": runs[-1]["handle"] if runs else None,
        }
