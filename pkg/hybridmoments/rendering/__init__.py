from .tables import format_float, save_csv, series_csv, trajectory_csv, write_series, write_trajectory
from .text import render_eom, render_eom_report

__all__ = [
    "format_float",
    "render_eom",
    "render_eom_report",
    "save_csv",
    "series_csv",
    "trajectory_csv",
    "write_series",
    "write_trajectory",
]
