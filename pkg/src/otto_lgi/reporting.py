"""Columnar and structured output: CSV tables, JSON summaries and loaders.

All floating-point values are written with 17 significant digits so that every
file round-trips to the exact double that produced it, independent of locale.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import IO, Iterable, NamedTuple

import numpy as np

from otto_lgi.lgi import NoQuantumPhase, threshold_temperature
from otto_lgi.sweep import Cell, Phase, PhaseDiagram, critical_values


def fmt_float(value: float) -> str:
    return f"{value:.17g}"


def write_table(handle: IO[str], header: list[str], rows: Iterable[tuple]) -> None:
    """CSV with a header row, '.' decimal point and '\n' line endings."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else fmt_float(cell) for cell in row])


class SeriesTable(NamedTuple):
    header: list[str]
    columns: list[np.ndarray]


def write_series_csv(handle: IO[str], header: list[str], columns: list[np.ndarray]) -> None:
    write_table(handle, header, zip(*[np.asarray(c, dtype=float) for c in columns]))


def read_series_csv(handle: IO[str]) -> SeriesTable:
    reader = csv.reader(handle)
    header = next(reader)
    raw = [row for row in reader if row]
    columns = [np.array([float(row[k]) for row in raw]) for k in range(len(header))]
    return SeriesTable(header=header, columns=columns)


class SweepTable(NamedTuple):
    header: list[str]
    axis1: np.ndarray
    axis2: np.ndarray
    tau_h: np.ndarray
    tau_q: np.ndarray
    phase: list[str]


def sweep_rows(diagram: PhaseDiagram) -> Iterable[tuple]:
    xs = diagram.axis_x.values()
    ys = diagram.axis_y.values()
    for iy in range(diagram.axis_y.n):
        for ix in range(diagram.axis_x.n):
            cell: Cell = diagram.cells[iy][ix]
            yield (
                float(xs[ix]),
                float(ys[iy]),
                cell.tau_h,
                cell.tau_q,
                cell.phase.value,
            )


def write_sweep_csv(handle: IO[str], diagram: PhaseDiagram) -> None:
    header = [diagram.axis_x.name, diagram.axis_y.name, "tau_h", "tau_q", "class"]
    write_table(handle, header, sweep_rows(diagram))


def read_sweep_csv(handle: IO[str]) -> SweepTable:
    reader = csv.reader(handle)
    header = next(reader)
    if len(header) != 5 or header[2:] != ["tau_h", "tau_q", "class"]:
        raise ValueError(f"not a sweep table header: {header!r}")
    rows = [row for row in reader if row]
    return SweepTable(
        header=header,
        axis1=np.array([float(r[0]) for r in rows]),
        axis2=np.array([float(r[1]) for r in rows]),
        tau_h=np.array([float(r[2]) for r in rows]),
        tau_q=np.array([float(r[3]) for r in rows]),
        phase=[r[4] for r in rows],
    )


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _axis_summary(axis) -> dict:
    return {"name": axis.name, "low": axis.low, "high": axis.high, "n": axis.n}


def _critical_summary(critical) -> dict | None:
    if critical is None:
        return None
    return {
        "value": critical.value,
        "bracket": [critical.bracket_low, critical.bracket_high],
    }


def sweep_summary(diagram: PhaseDiagram) -> dict:
    """JSON-ready summary: axes, regimes, critical values and cell counts."""
    counts = {phase.value: 0 for phase in Phase}
    for row in diagram.cells:
        for cell in row:
            counts[cell.phase.value] += 1
    try:
        t_q = threshold_temperature(diagram.base.omega2, diagram.base.gamma0)
    except NoQuantumPhase:
        t_q = None
    c1, c2 = critical_values(diagram) if diagram.column_regimes is not None else (None, None)
    return {
        "kind": "phase_diagram_summary",
        "axis_x": _axis_summary(diagram.axis_x),
        "axis_y": _axis_summary(diagram.axis_y),
        "engine": {
            "omega1": diagram.base.omega1,
            "omega2": diagram.base.omega2,
            "tau1": diagram.base.tau1,
            "tau2": diagram.base.tau2,
            "T_h": diagram.base.T_h,
            "T_c": diagram.base.T_c,
            "gamma0": diagram.base.gamma0,
            "sigma": diagram.base.sigma,
            "sigma_bar": diagram.base.sigma_bar,
        },
        "equal_gamma": diagram.equal_gamma,
        "threshold_temperature": _json_safe(t_q),
        "regime_axis": diagram.regime_axis,
        "column_regimes": list(diagram.column_regimes or []),
        "column_transitions": list(diagram.column_transitions or []),
        "regime_c1": _critical_summary(c1),
        "regime_c2": _critical_summary(c2),
        "counts": counts,
    }


def dump_json(data: dict, handle: IO[str]) -> None:
    json.dump(data, handle, indent=2)
    handle.write("\n")


def write_text_record(handle: IO[str], record: dict) -> None:
    """key = value lines mirroring the configuration syntax."""
    for key, value in record.items():
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = fmt_float(value)
        else:
            text = str(value)
        handle.write(f"{key} = {text}\n")


def write_record(handle: IO[str], record: dict, fmt: str) -> None:
    if fmt == "json":
        dump_json({k: _json_safe(v) for k, v in record.items()}, handle)
    else:
        write_text_record(handle, record)


def ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
