"""Utility functions for run output."""

from .csv_handler import format_value, render_csv, use_csv

__all__ = ["format_value", "render_csv", "use_csv"]
