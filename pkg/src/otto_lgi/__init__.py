"""Finite-time single-qubit Otto engine simulator with Leggett-Garg diagnostics.

Natural units hbar = k_B = 1 everywhere. The qubit Hamiltonian is
H = omega * sigma_z / 2 and polarizations are P = <sigma_z>/2.
"""

from otto_lgi.qubit import (
    MIN_TEMPERATURE,
    BathCoupling,
    EngineParams,
    damping_rate,
    equilibrium_polarization,
    relax_polarization,
    thermal_occupation,
)
from otto_lgi.oracle import (
    DensityMatrix,
    StepTooLarge,
    Trajectory,
    correlation_numeric,
    evolve,
    lindblad_rhs,
    steady_state,
)
from otto_lgi.lgi import (
    UNBOUNDED,
    LGResult,
    NoQuantumPhase,
    Unbounded,
    correlation_xx,
    k3,
    lg_scan,
    quantum_time,
    threshold_temperature,
    violation_horizon,
)
from otto_lgi.cycle import (
    CycleSolution,
    DegenerateDenominator,
    InfeasibleCycle,
    NoFixedPoint,
    OptimalPoint,
    branch_rates,
    branch_work,
    cycle_fixed_point,
    delta_p_eq,
    entropy_production,
    feasible,
    friction_increment,
    heating_polarization_gain,
    heats,
    optimal_times,
    r_and_xmax,
    solve_cycle,
    total_work,
)
from otto_lgi.sweep import (
    AxisSpec,
    Cell,
    CriticalValue,
    NotBracketed,
    Phase,
    PhaseDiagram,
    classify_cell,
    column_regime,
    critical_values,
    sweep,
)
from otto_lgi.config import (
    BadValue,
    ConfigError,
    MissingRequired,
    RunConfig,
    UnknownKey,
    load_config,
    parse_config,
)

__version__ = "0.1.0"
