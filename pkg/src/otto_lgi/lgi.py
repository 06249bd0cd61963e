"""Leggett-Garg machinery for the damped qubit.

The three-measurement Leggett-Garg combination K3 = C21 + C32 - C31 of a
dichotomic observable obeys K3 <= 1 under macrorealism; the damped qubit
reaches at most 1.5. With equally spaced measurements separated by t the
sigma_x correlator C(tau) = exp(-gamma tau / 2) cos(omega tau) gives

    K3(t) = 2 exp(-gamma t / 2) cos(omega t) - exp(-gamma t) cos(2 omega t).

The quantum time tau_q is the largest total measurement span 2t for which
K3(t) > 1 still holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_LOG_SILVER = math.log(1.0 + math.sqrt(2.0))
_SCAN_CHUNK = 1 << 20


class NoQuantumPhase(ValueError):
    """Raised when gamma0 >= 2*omega2: no violation survives at any temperature."""


class Unbounded:
    """Tagged result for a violation horizon with no finite end (gamma == 0)."""

    _instance = None

    def __new__(cls) -> "Unbounded":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unbounded"


UNBOUNDED = Unbounded()


@dataclass(frozen=True)
class LGResult:
    """A sampled K3 curve together with the violation horizon for (omega, gamma)."""

    omega: float
    gamma: float
    t_samples: np.ndarray
    k3_values: np.ndarray
    tau_q: float | Unbounded
    violated: bool


def correlation_xx(tau, omega: float, gamma: float):
    """Symmetrized steady-state sigma_x correlator exp(-gamma tau/2) cos(omega tau)."""
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr < 0.0):
        raise ValueError("tau must be >= 0")
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    out = np.exp(-0.5 * gamma * tau_arr) * np.cos(omega * tau_arr)
    return float(out) if np.isscalar(tau) else out


def k3(t, omega: float, gamma: float):
    """Leggett-Garg combination for three equally spaced measurements."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be >= 0")
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    decay = np.exp(-0.5 * gamma * t_arr)
    out = 2.0 * decay * np.cos(omega * t_arr) - decay * decay * np.cos(2.0 * omega * t_arr)
    return float(out) if np.isscalar(t) else out


def violation_horizon(gamma: float) -> float:
    """Measurement spacing beyond which K3 <= 1 is guaranteed for damping gamma.

    From the envelope 2 e^{-gamma t/2} + e^{-gamma t} <= 1 for
    t >= (2/gamma) ln(1 + sqrt(2)).
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    return 2.0 * _LOG_SILVER / gamma


def _last_violation_index(omega: float, gamma: float, n: int, step: float) -> int | None:
    """Index of the last grid point t_i = i*step with K3(t_i) > 1, scanning backward."""
    hi = n - 1
    while hi > 0:
        lo = max(0, hi - _SCAN_CHUNK)
        idx = np.arange(lo, hi + 1)
        values = k3(idx * step, omega, gamma)
        pos = np.nonzero(values > 1.0)[0]
        if pos.size:
            last = int(lo + pos[-1])
            if last == n - 1:
                # Unreachable: the envelope bound forces K3 < 1 at the horizon.
                raise RuntimeError("violation found at the scan horizon")
            return last
        hi = lo
    return None


@lru_cache(maxsize=65536)
def quantum_time(omega: float, gamma: float, tol: float = 1e-10) -> float | Unbounded:
    """Largest total measurement span 2t with K3(t) > 1, or 0 when none exists.

    gamma == 0 returns the UNBOUNDED sentinel (violations recur forever).
    The search scans (0, violation_horizon] with at least 1000 points per
    oscillation period, locates the last sign change of K3 - 1 and refines it
    by bisection to absolute tolerance tol on the returned span.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if gamma == 0.0:
        return UNBOUNDED

    t_max = violation_horizon(gamma)
    period = 2.0 * math.pi / omega
    n = max(2048, math.ceil(1000.0 * t_max / period) + 1)
    step = t_max / (n - 1)

    last = _last_violation_index(omega, gamma, n, step)
    if last is None:
        return 0.0

    lo = last * step
    hi = (last + 1) * step
    while hi - lo > 0.5 * tol:
        mid = 0.5 * (lo + hi)
        if k3(mid, omega, gamma) > 1.0:
            lo = mid
        else:
            hi = mid
    t_star = 0.5 * (lo + hi)
    return 2.0 * t_star


def lg_scan(
    omega: float,
    gamma: float,
    t_max: float,
    n: int,
    tol: float = 1e-10,
) -> LGResult:
    """Sample K3 on [0, t_max] and attach the violation horizon for (omega, gamma)."""
    if t_max <= 0.0 or n < 2:
        raise ValueError("t_max must be positive and n >= 2")
    t = np.linspace(0.0, t_max, n)
    values = k3(t, omega, gamma)
    tau_q = quantum_time(omega, gamma, tol)
    violated = tau_q is UNBOUNDED or tau_q > 0.0
    return LGResult(
        omega=omega, gamma=gamma, t_samples=t, k3_values=values, tau_q=tau_q, violated=violated
    )


def threshold_temperature(omega2: float, gamma0: float) -> float:
    """Hot-bath temperature at which the damping reaches 2*omega2.

    T_q = omega2 / (2 acoth(2 omega2 / gamma0)); above it the heating-branch
    decoherence kills every Leggett-Garg violation. Requires gamma0 < 2*omega2.
    """
    if omega2 <= 0.0:
        raise ValueError(f"omega2 must be positive, got {omega2!r}")
    if gamma0 <= 0.0:
        raise ValueError(f"gamma0 must be positive, got {gamma0!r}")
    if gamma0 >= 2.0 * omega2:
        raise NoQuantumPhase(
            f"gamma0={gamma0!r} >= 2*omega2={2.0 * omega2!r}: "
            "the qubit is classical at every temperature"
        )
    return omega2 / (2.0 * math.atanh(gamma0 / (2.0 * omega2)))
