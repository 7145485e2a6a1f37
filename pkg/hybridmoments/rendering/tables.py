from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, TextIO, Union

import numpy as np

from ..dynamics.state import Trajectory, symbol_names
from ..hamiltonian.eom import StateSymbol

TIME_COLUMN = "t"


def format_float(value: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(value))


def write_series(
    stream: TextIO,
    header: Sequence[str],
    times: np.ndarray,
    columns: Iterable[np.ndarray],
) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([TIME_COLUMN, *header])
    matrix = np.column_stack([np.asarray(times, dtype=float), *[np.asarray(c, dtype=float) for c in columns]])
    for row in matrix:
        writer.writerow([format_float(value) for value in row])


def write_trajectory(
    stream: TextIO,
    trajectory: Trajectory,
    aliases: Optional[Mapping[StateSymbol, str]] = None,
) -> None:
    """Header ``t`` plus one column per state symbol, one row per emitted step."""
    header = symbol_names(trajectory.layout, aliases)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([TIME_COLUMN, *header])
    for time, row in zip(trajectory.times, trajectory.values):
        writer.writerow([format_float(time), *(format_float(value) for value in row)])


def trajectory_csv(trajectory: Trajectory, aliases: Optional[Mapping[StateSymbol, str]] = None) -> str:
    buffer = io.StringIO()
    write_trajectory(buffer, trajectory, aliases)
    return buffer.getvalue()


def save_csv(path: Union[str, Path], text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def series_csv(header: Sequence[str], times: np.ndarray, columns: Iterable[np.ndarray]) -> str:
    buffer = io.StringIO()
    write_series(buffer, header, times, columns)
    return buffer.getvalue()
