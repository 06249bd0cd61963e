"""Finite-time Otto-cycle thermodynamics for the two-level engine.

Cycle layout (steady state), with corner polarizations:

    A --heating (omega2, T_h, tau_h)--> B --expansion (tau1)--> C
      --cooling (omega1, T_c, tau_c)--> D --compression (tau2)--> A

Unitary strokes of duration tau add the friction increment sigma^2/tau to the
polarization. x = exp(-gamma_c tau_c) and y = exp(-gamma_h tau_h) measure the
residual (incomplete) thermalization on the cold and hot isochores.

Sign convention: total_work returns the work done ON the system over one
cycle, so engine operation means W_total <= 0; reports expose W_out = -W_total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from otto_lgi.qubit import EngineParams, damping_rate, equilibrium_polarization


class InfeasibleCycle(ValueError):
    """No closed positive-work cycle exists for these parameters."""


class NoFixedPoint(ValueError):
    """x*y = 1: both baths fully decoupled, the cycle map has no unique fixed point."""


class DegenerateDenominator(ValueError):
    """DeltaP_eq + sigma^2/tau1 <= 0: the reduced quantities are undefined."""


class OptimalPoint(NamedTuple):
    tau_h: float
    tau_c: float
    x: float
    y: float


class Corners(NamedTuple):
    P_A: float
    P_B: float
    P_C: float
    P_D: float


class BranchWork(NamedTuple):
    W_adiabatic: float
    W_irreversible: float
    W_total: float


class BranchRates(NamedTuple):
    gamma_h: float
    gamma_c: float


@dataclass(frozen=True)
class CycleSolution:
    """Steady-state cycle bookkeeping at the minimum-time zero-work point."""

    params: EngineParams
    x: float
    y: float
    tau_h: float
    tau_c: float
    R: float
    x_max: float
    P_A: float
    P_B: float
    P_C: float
    P_D: float
    W_total: float
    W_out: float
    Q_h: float
    Q_c: float
    delta_S: float
    feasible: bool


def branch_rates(params: EngineParams, equal_gamma: bool = False) -> BranchRates:
    """Damping rates of the two isochores, each at its own stroke frequency.

    equal_gamma forces gamma_c to the hot-branch value, reproducing the common
    single-gamma simplification.
    """
    gamma_h = damping_rate(params.omega2, params.T_h, params.gamma0)
    gamma_c = gamma_h if equal_gamma else damping_rate(params.omega1, params.T_c, params.gamma0)
    return BranchRates(gamma_h=gamma_h, gamma_c=gamma_c)


def delta_p_eq(params: EngineParams) -> float:
    """Equilibrium polarization gap: P_eq(omega2, T_h) - P_eq(omega1, T_c).

    Positive exactly when omega1/T_c > omega2/T_h (the engine condition).
    """
    return equilibrium_polarization(params.omega2, params.T_h) - equilibrium_polarization(
        params.omega1, params.T_c
    )


def friction_increment(sigma: float, tau_i: float) -> float:
    """Polarization gained from nonadiabatic driving over a stroke of duration tau_i."""
    if tau_i <= 0.0:
        raise ValueError(f"tau_i must be positive, got {tau_i!r}")
    return sigma * sigma / tau_i


def r_and_xmax(params: EngineParams) -> tuple[float, float]:
    """Reduced friction strength R and the largest admissible cold relaxation factor.

    R       = sigma^2 omega1 (1/tau1 + 1/tau2) / (dOmega (dP + sigma^2/tau1))
    x_max   = (dP - sigma^2/tau2) / (dP + sigma^2/tau1)
    """
    dp = delta_p_eq(params)
    s1 = friction_increment(params.sigma, params.tau1)
    s2 = friction_increment(params.sigma, params.tau2)
    denom = dp + s1
    if denom <= 0.0:
        raise DegenerateDenominator(
            f"DeltaP_eq + sigma^2/tau1 = {denom!r} <= 0; no engine regime exists"
        )
    d_omega = params.omega2 - params.omega1
    r = params.sigma**2 * params.omega1 * (1.0 / params.tau1 + 1.0 / params.tau2) / (d_omega * denom)
    x_max = (dp - s2) / denom
    return r, x_max


def feasible(params: EngineParams) -> bool:
    """Closed-cycle condition: positive polarization gap and sigma^2/tau2 <= gap.

    Equality saturates the friction bound (thermalization times diverge there);
    optimal_times additionally needs strict inequality and a positive-work margin.
    """
    dp = delta_p_eq(params)
    return dp > 0.0 and friction_increment(params.sigma, params.tau2) <= dp


def optimal_times(params: EngineParams, equal_gamma: bool = False) -> OptimalPoint:
    """Minimum-time thermalization point with vanishing positive work.

    tau_h = -(1/gamma_h) ln[(x_max - sqrt(R x_max (1+R-x_max))) / (x_max (R+1))]
    tau_c = -(1/gamma_c) ln[(x_max - sqrt(R x_max (1+R-x_max))) / (R+1)]

    The returned factors satisfy x = x_max * y and W_total(x, y) = 0 identically.
    Raises InfeasibleCycle when the square root or either logarithm leaves its
    domain, which is exactly the no-positive-work region (diverging times).
    """
    dp = delta_p_eq(params)
    if dp <= 0.0:
        raise InfeasibleCycle(
            f"equilibrium polarization gap {dp!r} <= 0 (omega1/T_c <= omega2/T_h)"
        )
    s2 = friction_increment(params.sigma, params.tau2)
    if s2 >= dp:
        raise InfeasibleCycle(
            f"friction bound saturated: sigma^2/tau2 = {s2!r} >= DeltaP_eq = {dp!r}; "
            "thermalization times diverge"
        )
    r, x_max = r_and_xmax(params)
    disc = r * x_max * (1.0 + r - x_max)
    if disc < 0.0:
        raise InfeasibleCycle(f"negative square-root argument {disc!r}")
    num = x_max - math.sqrt(disc)
    if num <= 0.0:
        raise InfeasibleCycle(
            "no positive-work cycle: friction consumes the full polarization gap "
            f"(x_max = {x_max!r} <= R = {r!r})"
        )
    y = num / (x_max * (r + 1.0))
    x = num / (r + 1.0)
    rates = branch_rates(params, equal_gamma)
    tau_h = -math.log(y) / rates.gamma_h + 0.0
    tau_c = -math.log(x) / rates.gamma_c + 0.0
    return OptimalPoint(tau_h=tau_h, tau_c=tau_c, x=x, y=y)


def cycle_fixed_point(params: EngineParams, x: float, y: float) -> Corners:
    """Unique steady-state corner polarizations for given relaxation factors.

    Solves the four-branch map P_B = P_h + (P_A - P_h) y, P_C = P_B + s1,
    P_D = P_c + (P_C - P_c) x, P_A = P_D + s2.
    """
    for name, v in (("x", x), ("y", y)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
    if x * y >= 1.0:
        raise NoFixedPoint("x*y = 1: every polarization is a fixed point of the cycle map")
    p_h = equilibrium_polarization(params.omega2, params.T_h)
    p_c = equilibrium_polarization(params.omega1, params.T_c)
    s1 = friction_increment(params.sigma, params.tau1)
    s2 = friction_increment(params.sigma, params.tau2)
    p_b = (p_h * (1.0 - y) + y * p_c * (1.0 - x) + y * (x * s1 + s2)) / (1.0 - x * y)
    p_c_corner = p_b + s1
    p_d = p_c + (p_c_corner - p_c) * x
    p_a = p_d + s2
    return Corners(P_A=p_a, P_B=p_b, P_C=p_c_corner, P_D=p_d)


def heating_polarization_gain(params: EngineParams, x: float, y: float) -> float:
    """Closed form for P_B - P_A over the hot isochore.

    dP (1-x)(1-y)/(1-xy) - sigma^2 (1-y)(x/tau1 + 1/tau2)/(1-xy)
    """
    if x * y >= 1.0:
        raise NoFixedPoint("x*y = 1: heating gain undefined")
    dp = delta_p_eq(params)
    sig2 = params.sigma**2
    one_m_xy = 1.0 - x * y
    return (
        dp * (1.0 - x) * (1.0 - y) / one_m_xy
        - sig2 * (1.0 - y) * (x / params.tau1 + 1.0 / params.tau2) / one_m_xy
    )


def branch_work(
    omega_i: float, omega_f: float, tau_i: float, P0: float, sigma: float
) -> BranchWork:
    """Adiabatic, irreversible and total work of one unitary stroke.

    W_ad  = (omega_f - omega_i) (sigma^2/(2 tau_i) + P0)
    W_irr = (omega_f + omega_i)/2 * sigma^2/tau_i
    W_tot = (omega_f - omega_i) P0 + sigma^2/tau_i * omega_f
    """
    s = friction_increment(sigma, tau_i)
    w_ad = (omega_f - omega_i) * (0.5 * s + P0)
    w_irr = 0.5 * (omega_f + omega_i) * s
    w_tot = (omega_f - omega_i) * P0 + s * omega_f
    return BranchWork(W_adiabatic=w_ad, W_irreversible=w_irr, W_total=w_tot)


def heats(params: EngineParams, corners: Corners) -> tuple[float, float]:
    """Heat absorbed on the hot and cold isochores: omega * (polarization change)."""
    q_h = params.omega2 * (corners.P_B - corners.P_A)
    q_c = params.omega1 * (corners.P_D - corners.P_C)
    return q_h, q_c


def total_work(params: EngineParams, x: float, y: float) -> float:
    """Work done ON the system over one steady-state cycle (engine ⇔ result <= 0)."""
    gain = heating_polarization_gain(params, x, y)
    sig2 = params.sigma**2
    return -(params.omega2 - params.omega1) * gain + sig2 * params.omega1 * (
        1.0 / params.tau1 + 1.0 / params.tau2
    )


def entropy_production(params: EngineParams, x: float, y: float) -> float:
    """Total entropy pushed into the two reservoirs over one cycle.

    (omega1/T_c - omega2/T_h)(P_B - P_A) + omega1 sigma^2/T_c (1/tau1 + 1/tau2)
    """
    gain = heating_polarization_gain(params, x, y)
    sig2 = params.sigma**2
    return (params.omega1 / params.T_c - params.omega2 / params.T_h) * gain + (
        params.omega1 * sig2 / params.T_c
    ) * (1.0 / params.tau1 + 1.0 / params.tau2)


def solve_cycle(params: EngineParams, equal_gamma: bool = False) -> CycleSolution:
    """Full cycle record at the optimal (minimum-time, zero-work) point.

    At sigma = 0 the optimal point degenerates to x = y = 1 (zero-duration
    isochores): work, heats and entropy vanish and the corner polarizations are
    indeterminate (reported as NaN).
    """
    opt = optimal_times(params, equal_gamma)
    r, x_max = r_and_xmax(params)
    if opt.x * opt.y >= 1.0:
        nan = float("nan")
        return CycleSolution(
            params=params,
            x=opt.x,
            y=opt.y,
            tau_h=opt.tau_h,
            tau_c=opt.tau_c,
            R=r,
            x_max=x_max,
            P_A=nan,
            P_B=nan,
            P_C=nan,
            P_D=nan,
            W_total=0.0,
            W_out=0.0,
            Q_h=0.0,
            Q_c=0.0,
            delta_S=0.0,
            feasible=True,
        )
    corners = cycle_fixed_point(params, opt.x, opt.y)
    q_h, q_c = heats(params, corners)
    w = total_work(params, opt.x, opt.y)
    ds = entropy_production(params, opt.x, opt.y)
    return CycleSolution(
        params=params,
        x=opt.x,
        y=opt.y,
        tau_h=opt.tau_h,
        tau_c=opt.tau_c,
        R=r,
        x_max=x_max,
        P_A=corners.P_A,
        P_B=corners.P_B,
        P_C=corners.P_C,
        P_D=corners.P_D,
        W_total=w,
        W_out=-w,
        Q_h=q_h,
        Q_c=q_c,
        delta_S=ds,
        feasible=True,
    )
