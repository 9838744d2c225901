"""Bathtub failure model and preventive-maintenance optimization.

The internal failure rate evolves linearly within each period with a
piecewise aging slope g_j shaped like a bathtub: negative with shrinking
magnitude during run-in, zero during useful life, positive during wear-out.
Expected failures per period combine the start-of-period rate with the
within-period growth, both damped by preventive maintenance: a maintenance
improvement factor rho removes the fraction rho of accumulated aging, and
splitting the contract's M maintenance actions across the horizon shrinks
the within-period growth term to (1 - rho) + rho/M of its unmaintained
value.

The per-period count under M maintenance actions is

    E[N_j] = [phi_0 + (1 - rho) (phi_{j-1} - phi_0)] t_j
             + (t_j^2 g_j / 2) [(1 - rho) + rho / M]

which, on a uniform grid, telescopes into the equivalent expanded form
phi_0 t + rho t^2 g_j / (2M) + t^2 (1 - rho)/2 (g_j + 2 sum_{k<j} g_k).
Both forms are exercised by the test suite.

The optimal maintenance count minimizes expected repair plus maintenance
cost.  Only the within-period growth depends on M, so the trade-off is
K/M + c_M (M - 1) with K = rho/2 * sum_j c_rj g_j t_j^2, giving the closed
form M* = round(sqrt(K / c_M)), clamped to at least one.  A brute-force
integer search over the same objective acts as the oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .scenario import FailureParams, PeriodGrid, RateSeries, Scenario

#: Internal rates are floored at zero; undershoot beyond this tolerance is
#: reported as a model warning.
_FLOOR_TOLERANCE = 1e-15


@dataclass(frozen=True)
class MaintenancePlan:
    """A maintenance count with its expected repair+maintenance cost."""

    m_count: int
    is_optimal: bool
    objective_value: float


def aging_factor(j: int, f: FailureParams, grid: PeriodGrid) -> float:
    """Aging slope g_j for period j (1-based).

    Run-in (j <= z1): -(k1/m) (j/m)^(k1-1); useful life (z1 < j <= z2): 0;
    wear-out (z2 < j <= z3): +(k2/m) ((j-z2)/m)^(k2-1).
    """
    z1, z2, z3 = f.stage_bounds
    if not 1 <= j <= grid.z_periods:
        raise ValueError(f"period index {j} outside 1..{grid.z_periods}")
    if j <= z1:
        return -(f.k1 / f.m) * (j / f.m) ** (f.k1 - 1.0)
    if j <= z2:
        return 0.0
    return (f.k2 / f.m) * ((j - z2) / f.m) ** (f.k2 - 1.0)


def aging_series(f: FailureParams, grid: PeriodGrid) -> RateSeries:
    """All Z aging slopes as a series."""
    return RateSeries("aging", tuple(aging_factor(j, f, grid) for j in range(1, grid.z_periods + 1)))


def internal_rate_series(f: FailureParams, grid: PeriodGrid) -> RateSeries:
    """Internal failure rate at the end of each period.

    With an override the stored series is returned verbatim.  Otherwise the
    rate follows phi_j = phi_{j-1} + g_j t_j from phi_0, floored at zero
    (aggressive run-in parameters can undershoot; that is reported as a
    warning, not an error).
    """
    if f.internal_series_override is not None:
        return RateSeries("internal", tuple(float(x) for x in f.internal_series_override))
    values = []
    phi = f.phi0_int
    for j in range(1, grid.z_periods + 1):
        phi = phi + aging_factor(j, f, grid) * grid.t_j[j - 1]
        if phi < -_FLOOR_TOLERANCE:
            warnings.warn(
                f"internal rate undershoots zero in period {j} ({phi:.3e}); floored",
                stacklevel=2,
            )
        phi = max(phi, 0.0)
        values.append(phi)
    return RateSeries("internal", tuple(values))


def rate_increments(f: FailureParams, grid: PeriodGrid, internal: RateSeries) -> np.ndarray:
    """Per-period rate changes phi_j - phi_{j-1} realised by the series.

    Derived from the series itself so that overrides and floored series stay
    consistent with the failure arithmetic (g_j t_j equals the increment).
    """
    phi = internal.as_array()
    prev = np.concatenate(([f.phi0_int], phi[:-1]))
    return phi - prev


def expected_failures(m: int, s: Scenario, internal: RateSeries) -> np.ndarray:
    """Expected failure counts for all periods under m maintenance actions.

    The start-of-period rate keeps only (1 - rho) of the aging accumulated
    so far (maintenance restores the fraction rho), and the within-period
    growth term carries the (1 - rho) + rho/m split.  Results are floored
    at zero.
    """
    if m < 1:
        raise ValueError("maintenance count must be >= 1")
    f, grid = s.failure, s.grid
    t = np.asarray(grid.t_j)
    phi = internal.as_array()
    prev = np.concatenate(([f.phi0_int], phi[:-1]))
    delta = phi - prev
    start_rate = f.phi0_int + (1.0 - f.rho) * (prev - f.phi0_int)
    counts = start_rate * t + (t * delta / 2.0) * ((1.0 - f.rho) + f.rho / m)
    return np.maximum(counts, 0.0)


def expected_failures_in_period(j: int, m: int, s: Scenario, internal: RateSeries) -> float:
    """Expected failures in period j (1-based) under m maintenance actions."""
    if not 1 <= j <= s.grid.z_periods:
        raise ValueError(f"period index {j} outside 1..{s.grid.z_periods}")
    return float(expected_failures(m, s, internal)[j - 1])


def _repair_plus_maintenance(m: int, s: Scenario, internal: RateSeries) -> float:
    costs = np.asarray(s.cost.repair_costs(s.grid.z_periods))
    repair = float(np.dot(costs, expected_failures(m, s, internal)))
    return repair + s.cost.avg_maintenance_cost * (m - 1)


def optimal_pm_count(s: Scenario, internal: RateSeries) -> MaintenancePlan:
    """Closed-form optimal number of preventive maintenance actions.

    M* = round(sqrt(rho * sum_j c_rj g_j t_j^2 / (2 c_M))), clamped to >= 1;
    a nonpositive radicand (net-declining rate over the horizon) clamps to
    a single action.  Halves round up for determinism.
    """
    costs = np.asarray(s.cost.repair_costs(s.grid.z_periods))
    t = np.asarray(s.grid.t_j)
    delta = rate_increments(s.failure, s.grid, internal)
    # g_j t_j^2 = delta_j t_j
    aging_cost = float(np.dot(costs, delta * t))
    c_m = s.cost.avg_maintenance_cost
    if c_m <= 0:
        m_star = 1 if aging_cost <= 0 else s.grid.z_periods
    else:
        radicand = s.failure.rho * aging_cost / (2.0 * c_m)
        m_star = max(1, int(math.floor(math.sqrt(max(radicand, 0.0)) + 0.5)))
    return MaintenancePlan(m_star, True, _repair_plus_maintenance(m_star, s, internal))


def brute_force_pm_count(s: Scenario, internal: RateSeries, m_max: int) -> MaintenancePlan:
    """Exhaustive integer argmin of expected repair + maintenance cost.

    Ties break toward the smaller count.  Serves as the oracle for
    :func:`optimal_pm_count`.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    best_m, best_value = 1, math.inf
    for m in range(1, m_max + 1):
        value = _repair_plus_maintenance(m, s, internal)
        if value < best_value:
            best_m, best_value = m, value
    return MaintenancePlan(best_m, False, best_value)
