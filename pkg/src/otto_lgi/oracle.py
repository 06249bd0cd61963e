"""Brute-force Lindblad integrator used as the verification oracle.

Integrates the damped-qubit master equation in the state picture,

    drho/dt = -i [omega sigma_z / 2, rho]
              + gamma0 n     D[sigma_+] rho
              + gamma0 (n+1) D[sigma_-] rho,

with D[L]rho = L rho L^dag - {L^dag L, rho}/2, using classical fixed-step RK4.
Fixed stepping keeps the oracle simple and bit-reproducible; every analytic
formula in the package is checked against trajectories produced here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from otto_lgi.qubit import damping_rate, thermal_occupation

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Pauli algebra sanity check, done once at import.
assert np.array_equal(SIGMA_X @ SIGMA_X, IDENTITY_2)
assert np.array_equal(SIGMA_PLUS.conj().T, SIGMA_MINUS)

# Excited-state (sigma_z = +1) and ground-state projectors.
_P_UP = SIGMA_PLUS @ SIGMA_MINUS
_P_DOWN = SIGMA_MINUS @ SIGMA_PLUS


class StepTooLarge(ValueError):
    """RK4 step exceeds the stability/accuracy budget of the oracle."""


@dataclass(frozen=True)
class DensityMatrix:
    """2x2 Hermitian unit-trace state: populations plus the (up, down) coherence."""

    p_up: float
    p_down: float
    coherence: complex

    @classmethod
    def from_matrix(cls, m: np.ndarray, atol: float = 1e-9) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if abs(m[0, 1] - np.conj(m[1, 0])) > atol or abs(m[0, 0].imag) > atol or abs(m[1, 1].imag) > atol:
            raise ValueError("matrix is not Hermitian within tolerance")
        return cls(p_up=float(m[0, 0].real), p_down=float(m[1, 1].real), coherence=complex(m[0, 1]))

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.p_up, self.coherence], [np.conj(self.coherence), self.p_down]],
            dtype=complex,
        )

    @property
    def polarization(self) -> float:
        return 0.5 * (self.p_up - self.p_down)

    def check(self, trace_atol: float = 1e-10, eig_floor: float = -1e-10) -> None:
        """Raise if the trace or positivity invariants are violated."""
        tr = self.p_up + self.p_down
        if abs(tr - 1.0) > trace_atol:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond {trace_atol}")
        evals = np.linalg.eigvalsh(self.matrix())
        if evals.min() < eig_floor:
            raise ValueError(f"negative eigenvalue {evals.min()!r} below floor {eig_floor}")


class Trajectory(NamedTuple):
    times: np.ndarray
    states: np.ndarray  # shape (len(times), 2, 2)


def lindblad_rhs(rho: np.ndarray, omega: float, T: float, gamma0: float) -> np.ndarray:
    """Right-hand side of the master equation for an arbitrary 2x2 matrix."""
    rho = np.asarray(rho, dtype=complex)
    n = thermal_occupation(omega, T)
    h = 0.5 * omega * SIGMA_Z
    drho = -1j * (h @ rho - rho @ h)
    # Absorption channel, rate gamma0 * n.
    drho += gamma0 * n * (
        SIGMA_PLUS @ rho @ SIGMA_MINUS - 0.5 * (_P_DOWN @ rho + rho @ _P_DOWN)
    )
    # Emission channel, rate gamma0 * (n + 1).
    drho += gamma0 * (n + 1.0) * (
        SIGMA_MINUS @ rho @ SIGMA_PLUS - 0.5 * (_P_UP @ rho + rho @ _P_UP)
    )
    return drho


def max_stable_step(omega: float, T: float, gamma0: float) -> float:
    """Largest dt the oracle accepts: min(1/omega, 1/gamma) / 50."""
    gamma = damping_rate(omega, T, gamma0)
    return min(1.0 / omega, 1.0 / gamma) / 50.0


def _rk4_step(m: np.ndarray, dt: float, omega: float, T: float, gamma0: float) -> np.ndarray:
    k1 = lindblad_rhs(m, omega, T, gamma0)
    k2 = lindblad_rhs(m + 0.5 * dt * k1, omega, T, gamma0)
    k3 = lindblad_rhs(m + 0.5 * dt * k2, omega, T, gamma0)
    k4 = lindblad_rhs(m + dt * k3, omega, T, gamma0)
    return m + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def evolve(
    rho0: DensityMatrix | np.ndarray,
    omega: float,
    T: float,
    gamma0: float,
    t_final: float,
    dt: float,
) -> Trajectory:
    """Fixed-step RK4 trajectory of a density matrix, sampled at multiples of dt."""
    if isinstance(rho0, DensityMatrix):
        rho = rho0.matrix()
    else:
        rho = DensityMatrix.from_matrix(rho0).matrix()
    if t_final <= 0.0:
        raise ValueError(f"t_final must be positive, got {t_final!r}")
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    bound = max_stable_step(omega, T, gamma0)
    if dt > bound * (1.0 + 1e-12):
        raise StepTooLarge(f"dt={dt!r} exceeds min(1/omega, 1/gamma)/50 = {bound!r}")
    n_steps = round(t_final / dt)
    if n_steps < 1 or abs(n_steps * dt - t_final) > 1e-9 * t_final:
        raise ValueError("t_final must be a positive multiple of dt")

    states = np.empty((n_steps + 1, 2, 2), dtype=complex)
    states[0] = rho
    for k in range(n_steps):
        rho = _rk4_step(rho, dt, omega, T, gamma0)
        states[k + 1] = rho
    times = dt * np.arange(n_steps + 1)
    return Trajectory(times=times, states=states)


def steady_state(omega: float, T: float, gamma0: float) -> DensityMatrix:
    """Stationary state of the damped qubit: the diagonal Gibbs state of H."""
    damping_rate(omega, T, gamma0)  # validates all three inputs
    z = -math.tanh(0.5 * omega / T)
    return DensityMatrix(p_up=0.5 * (1.0 + z), p_down=0.5 * (1.0 - z), coherence=0.0 + 0.0j)


def correlation_numeric(
    omega: float,
    T: float,
    gamma0: float,
    tau_grid: np.ndarray,
    dt: float | None = None,
) -> np.ndarray:
    """Symmetrized steady-state autocorrelation of sigma_x on the given lag grid.

    Regression route in state form: evolve the operator-weighted matrix
    (sigma_x rho_ss + rho_ss sigma_x)/2 under the same Lindbladian and read off
    Tr[sigma_x * X(tau)] at each lag.
    """
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or tau.size == 0:
        raise ValueError("tau_grid must be a nonempty 1-d array")
    if tau[0] < 0.0 or np.any(np.diff(tau) <= 0.0):
        raise ValueError("tau_grid must be nonnegative and strictly increasing")
    if dt is None:
        dt = 0.5 * max_stable_step(omega, T, gamma0)
    elif dt > max_stable_step(omega, T, gamma0) * (1.0 + 1e-12):
        raise StepTooLarge("dt exceeds the oracle step bound")

    rho_ss = steady_state(omega, T, gamma0).matrix()
    x_state = 0.5 * (SIGMA_X @ rho_ss + rho_ss @ SIGMA_X)

    out = np.empty(tau.size)
    t_now = 0.0
    for k, t_target in enumerate(tau):
        span = t_target - t_now
        if span > 0.0:
            n = max(1, math.ceil(span / dt))
            h = span / n
            for _ in range(n):
                x_state = _rk4_step(x_state, h, omega, T, gamma0)
            t_now = t_target
        out[k] = float(np.trace(SIGMA_X @ x_state).real)
    return out
