"""Closed-form thermal quantities and isochoric relaxation laws for a single qubit.

Natural units hbar = k_B = 1. The qubit Hamiltonian is H = omega * sigma_z / 2,
so the state is fully described on an isochore by the polarization
P = <sigma_z>/2 in [-1/2, 1/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Temperatures below this floor would overflow exp(omega/T) silently; they are
# rejected instead (strict zero temperature is never needed).
MIN_TEMPERATURE = 1e-12


def _check_positive(name: str, value: float) -> None:
    if not value > 0.0 or not math.isfinite(value):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


def _check_temperature(name: str, value: float) -> None:
    if not math.isfinite(value) or value < MIN_TEMPERATURE:
        raise ValueError(
            f"{name} must be >= {MIN_TEMPERATURE} (absolute units), got {value!r}"
        )


def _check_polarization(name: str, value: float) -> None:
    if not math.isfinite(value) or abs(value) > 0.5:
        raise ValueError(f"{name} must lie in [-1/2, 1/2], got {value!r}")


def thermal_occupation(omega: float, T: float) -> float:
    """Bosonic occupation 1/(exp(omega/T) - 1) of a bath mode at frequency omega."""
    _check_positive("omega", omega)
    _check_temperature("T", T)
    x = omega / T
    if x > 700.0:
        # exp(x) would overflow; the occupation itself underflows smoothly.
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def damping_rate(omega: float, T: float, gamma0: float) -> float:
    """Effective damping gamma0 * coth(omega/(2T)) = gamma0 * (2n + 1) >= gamma0."""
    _check_positive("gamma0", gamma0)
    return gamma0 * (2.0 * thermal_occupation(omega, T) + 1.0)


def equilibrium_polarization(omega: float, T: float) -> float:
    """Thermal polarization -tanh(omega/(2T))/2 of the Gibbs state of H."""
    _check_positive("omega", omega)
    _check_temperature("T", T)
    return -0.5 * math.tanh(0.5 * omega / T)


def relax_polarization(P0: float, omega: float, T: float, gamma0: float, t: float) -> float:
    """Polarization after relaxing toward the bath for time t at fixed frequency.

    Solves dP/dt = -gamma * (P - P_eq), i.e. P(t) = P_eq + (P0 - P_eq) e^{-gamma t}.
    """
    _check_polarization("P0", P0)
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    gamma = damping_rate(omega, T, gamma0)
    peq = equilibrium_polarization(omega, T)
    return peq + (P0 - peq) * math.exp(-gamma * t)


@dataclass(frozen=True)
class BathCoupling:
    """A bath attachment point: frequency, temperature and the derived rates."""

    omega: float
    T: float
    gamma0: float
    n: float
    gamma: float

    @classmethod
    def for_bath(cls, omega: float, T: float, gamma0: float) -> "BathCoupling":
        n = thermal_occupation(omega, T)
        return cls(omega=omega, T=T, gamma0=gamma0, n=n, gamma=gamma0 * (2.0 * n + 1.0))


@dataclass(frozen=True)
class EngineParams:
    """The eight cycle parameters of the two-level Otto engine.

    omega1 < omega2 are the cold/hot stroke frequencies, tau1/tau2 the
    expansion/compression durations, T_h/T_c the bath temperatures, gamma0 the
    bare coupling and sigma the internal friction coefficient (each unitary
    stroke of duration tau adds sigma^2/tau to the polarization).

    The engine condition omega1/T_c > omega2/T_h is deliberately NOT enforced
    here; such inputs are representable and are flagged infeasible downstream.
    """

    omega1: float
    omega2: float
    tau1: float
    tau2: float
    T_h: float
    T_c: float
    gamma0: float
    sigma: float

    def __post_init__(self) -> None:
        _check_positive("omega1", self.omega1)
        _check_positive("omega2", self.omega2)
        if not self.omega1 < self.omega2:
            raise ValueError(
                f"omega1 must be < omega2, got omega1={self.omega1!r}, omega2={self.omega2!r}"
            )
        _check_positive("tau1", self.tau1)
        _check_positive("tau2", self.tau2)
        _check_temperature("T_h", self.T_h)
        _check_temperature("T_c", self.T_c)
        if not self.T_h > self.T_c:
            raise ValueError(
                f"T_h must be > T_c, got T_h={self.T_h!r}, T_c={self.T_c!r}"
            )
        _check_positive("gamma0", self.gamma0)
        if not math.isfinite(self.sigma) or self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma!r}")

    @property
    def sigma_bar(self) -> float:
        """Reduced friction coefficient sigma / tau2."""
        return self.sigma / self.tau2

    def hot_bath(self) -> BathCoupling:
        return BathCoupling.for_bath(self.omega2, self.T_h, self.gamma0)

    def cold_bath(self) -> BathCoupling:
        return BathCoupling.for_bath(self.omega1, self.T_c, self.gamma0)
