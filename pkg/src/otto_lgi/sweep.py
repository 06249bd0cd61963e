"""Phase-diagram sweeps classifying each engine parameterization.

A cell is Quantum when the heating branch can still violate the Leggett-Garg
bound over the whole heating stroke (tau_q > tau_h, strict), Classical when a
closed positive-work cycle exists but decoherence wins, and Infeasible when no
such cycle exists at all.

Per fixed value of the non-T_h axis, the ordered sequence of cells along T_h
falls into one of three regimes:

    i   single quantum-classical transition (all-Quantum columns are also
        labeled i; their boundary lies above the swept range),
    ii  multiple alternating transitions,
    iii no quantum cell.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import numpy as np

from otto_lgi.cycle import InfeasibleCycle, optimal_times
from otto_lgi.lgi import UNBOUNDED, quantum_time
from otto_lgi.qubit import EngineParams, damping_rate

AXIS_NAMES = ("T_h", "T_c", "sigma_bar")

# Ties |tau_q - tau_h| below this count as Classical.
TIE_TOLERANCE = 1e-12


class NotBracketed(ValueError):
    """A regime boundary is absent from the swept range."""


class Phase(Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Cell:
    """Classification of one grid point plus its timing diagnostics."""

    phase: Phase
    tau_h: float  # NaN when infeasible
    tau_q: float  # math.inf when unbounded


@dataclass(frozen=True)
class AxisSpec:
    """One sweep axis: parameter name, inclusive range and point count."""

    name: str
    low: float
    high: float
    n: int

    def __post_init__(self) -> None:
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis name must be one of {AXIS_NAMES}, got {self.name!r}")
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValueError("axis range must be finite")
        if self.low < 0.0 or self.high <= self.low:
            raise ValueError(
                f"axis range must satisfy 0 <= low < high, got [{self.low!r}, {self.high!r}]"
            )
        if self.n < 2:
            raise ValueError(f"axis needs at least 2 points, got {self.n!r}")

    def values(self) -> np.ndarray:
        return np.linspace(self.low, self.high, self.n)


class CriticalValue(NamedTuple):
    """A regime boundary on the sweep axis with its bracketing interval."""

    value: float
    bracket_low: float
    bracket_high: float


@dataclass(frozen=True)
class PhaseDiagram:
    """Rectangular grid of cell classifications; cells[iy][ix] row-major in y."""

    base: EngineParams
    axis_x: AxisSpec
    axis_y: AxisSpec
    cells: tuple[tuple[Cell, ...], ...]
    equal_gamma: bool
    regime_axis: str | None  # axis along which column regimes are labeled
    column_regimes: tuple[str, ...] | None
    column_transitions: tuple[int, ...] | None

    def regime_axis_values(self) -> np.ndarray:
        if self.regime_axis is None:
            raise NotBracketed("diagram has no T_h axis, so no regime labels")
        axis = self.axis_y if self.axis_y.name == self.regime_axis else self.axis_x
        return axis.values()


def classify_cell(
    params: EngineParams,
    equal_gamma: bool = False,
    tau_q_tol: float = 1e-10,
) -> Cell:
    """Classify one parameter point by comparing tau_q with tau_h."""
    gamma_heat = damping_rate(params.omega2, params.T_h, params.gamma0)
    tq = quantum_time(params.omega2, gamma_heat, tau_q_tol)
    tq_value = math.inf if tq is UNBOUNDED else float(tq)
    try:
        opt = optimal_times(params, equal_gamma)
    except InfeasibleCycle:
        return Cell(phase=Phase.INFEASIBLE, tau_h=float("nan"), tau_q=tq_value)
    quantum = tq_value - opt.tau_h > TIE_TOLERANCE
    return Cell(
        phase=Phase.QUANTUM if quantum else Phase.CLASSICAL,
        tau_h=opt.tau_h,
        tau_q=tq_value,
    )


def _cell_params(base: EngineParams, assignments: dict[str, float]) -> EngineParams:
    kwargs: dict[str, float] = {}
    for name, value in assignments.items():
        if name == "sigma_bar":
            kwargs["sigma"] = value * base.tau2
        else:
            kwargs[name] = value
    return replace(base, **kwargs)


def _diagnostic_tau_q(
    base: EngineParams, assignments: dict[str, float], tau_q_tol: float
) -> float:
    """Best-effort tau_q for cells whose parameters fail validation."""
    t_h = assignments.get("T_h", base.T_h)
    try:
        gamma_heat = damping_rate(base.omega2, t_h, base.gamma0)
        tq = quantum_time(base.omega2, gamma_heat, tau_q_tol)
    except ValueError:
        return float("nan")
    return math.inf if tq is UNBOUNDED else float(tq)


def resolve_threads(threads: int | None) -> int:
    """Worker count: explicit cap, else OTTO_LGI_THREADS, else one per CPU."""
    if threads is None:
        env = os.environ.get("OTTO_LGI_THREADS", "0")
        try:
            threads = int(env)
        except ValueError as exc:
            raise ValueError(f"OTTO_LGI_THREADS must be an integer, got {env!r}") from exc
    if threads < 0:
        raise ValueError(f"thread count must be >= 0, got {threads!r}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def sweep(
    base: EngineParams,
    axis_x: AxisSpec,
    axis_y: AxisSpec,
    equal_gamma: bool = False,
    tau_q_tol: float = 1e-10,
    threads: int | None = None,
) -> PhaseDiagram:
    """Classify every grid point; deterministic for identical inputs.

    Cells are independent pure functions of their coordinates, so the column
    work may be scheduled on any number of threads; assembly is by index and
    the output is bit-identical regardless of the worker count.
    """
    if axis_x.name == axis_y.name:
        raise ValueError(f"axes must differ, both are {axis_x.name!r}")
    xs = axis_x.values()
    ys = axis_y.values()

    def one_cell(xv: float, yv: float) -> Cell:
        assignments = {axis_x.name: float(xv), axis_y.name: float(yv)}
        try:
            params = _cell_params(base, assignments)
        except ValueError:
            return Cell(
                phase=Phase.INFEASIBLE,
                tau_h=float("nan"),
                tau_q=_diagnostic_tau_q(base, assignments, tau_q_tol),
            )
        return classify_cell(params, equal_gamma, tau_q_tol)

    def one_column(ix: int) -> list[Cell]:
        return [one_cell(xs[ix], ys[iy]) for iy in range(axis_y.n)]

    workers = min(resolve_threads(threads), axis_x.n)
    if workers <= 1:
        columns = [one_column(ix) for ix in range(axis_x.n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(one_column, range(axis_x.n)))
    cells = tuple(
        tuple(columns[ix][iy] for ix in range(axis_x.n)) for iy in range(axis_y.n)
    )

    regime_axis: str | None = None
    regimes: tuple[str, ...] | None = None
    transitions: tuple[int, ...] | None = None
    if (axis_x.name == "T_h") != (axis_y.name == "T_h"):
        if axis_x.name == "T_h":
            regime_axis = axis_y.name
            slices = [list(cells[iy]) for iy in range(axis_y.n)]
        else:
            regime_axis = axis_x.name
            slices = [[cells[iy][ix] for iy in range(axis_y.n)] for ix in range(axis_x.n)]
        labeled = [column_regime(s) for s in slices]
        regimes = tuple(label for label, _ in labeled)
        transitions = tuple(count for _, count in labeled)

    return PhaseDiagram(
        base=base,
        axis_x=axis_x,
        axis_y=axis_y,
        cells=cells,
        equal_gamma=equal_gamma,
        regime_axis=regime_axis,
        column_regimes=regimes,
        column_transitions=transitions,
    )


def column_regime(column: list[Cell]) -> tuple[str, int]:
    """Regime label and quantum/classical transition count of one T_h-ordered column.

    Infeasible cells are skipped. Zero quantum cells -> iii; two or more
    transitions -> ii; otherwise i (an all-quantum column is regime i with its
    boundary above the swept range, recognizable by a zero transition count).
    """
    if not column:
        raise ValueError("column must be nonempty")
    phases = [c.phase for c in column if c.phase is not Phase.INFEASIBLE]
    if not any(p is Phase.QUANTUM for p in phases):
        return "iii", 0
    transitions = sum(1 for a, b in zip(phases, phases[1:]) if a is not b)
    return ("ii" if transitions >= 2 else "i"), transitions


def critical_values(
    diagram: PhaseDiagram, strict: bool = False
) -> tuple[CriticalValue | None, CriticalValue | None]:
    """Regime boundaries along the non-T_h axis.

    c1 is the last axis value still labeled i before the first non-i column;
    c2 is the first axis value from which every later column is iii. Each comes
    with the adjacent-column bracket as its uncertainty. Missing boundaries are
    None, or raise NotBracketed when strict.
    """
    if diagram.column_regimes is None:
        raise NotBracketed("diagram has no regime labels (no T_h axis)")
    labels = list(diagram.column_regimes)
    values = diagram.regime_axis_values()

    c1: CriticalValue | None = None
    first_non_i = next((k for k, lab in enumerate(labels) if lab != "i"), None)
    if first_non_i is not None and first_non_i > 0:
        c1 = CriticalValue(
            value=float(values[first_non_i - 1]),
            bracket_low=float(values[first_non_i - 1]),
            bracket_high=float(values[first_non_i]),
        )

    c2: CriticalValue | None = None
    k = len(labels)
    while k > 0 and labels[k - 1] == "iii":
        k -= 1
    # labels[k:] is the maximal all-iii suffix; it must exist and not span everything.
    if k != len(labels) and k > 0:
        c2 = CriticalValue(
            value=float(values[k]),
            bracket_low=float(values[k - 1]),
            bracket_high=float(values[k]),
        )

    if strict:
        if c1 is None:
            raise NotBracketed("regime-i boundary (c1) not bracketed by the sweep range")
        if c2 is None:
            raise NotBracketed("all-iii boundary (c2) not bracketed by the sweep range")
    return c1, c2
