"""Dynamic learning and forgetting: repair/training/forgetting time budgets,
the efficiency multiplier A, training cost, and total contract cost as a
function of the training frequency lf.

Time budget
-----------
Repair time is one block of ``repair_hours`` per expected failure, so the
cumulative repair time is t_r = sum_j phi_j t_j * repair_hours.  Each period
also loses time to external failures and to maintenance visits; what is
left is surplus, and the fraction lf of it goes to training:

    t_l = [R - S - Q - U] * lf

with R = sum t_j, Q/S the internal/external repair-time sums and U the
per-period maintenance time allocation (m/Z visits of
``maintenance_hours`` each).  Interruptions erode the benefit of training;
the revised forgetting model lets technicians claw part of it back through
on-site practice (exponent epsilon), giving

    t_f = S + V * lf^(1-2 eps),
    V   = 2 sum_j (phi_j / 2)^(1-eps) (t_j - phi_j^ext t_j r)^(1-2 eps)

while the simple variant forgets all interrupted time: t_f = S + Q + U.

Efficiency multiplier
---------------------
A = t_r^(-alpha_auto) * (t_l - t_f)^(-alpha_indu) scales the repair bill:
experience (alpha_auto) and net effective training (alpha_indu) both follow
power laws.  A candidate lf with t_l - t_f <= 0 is infeasible, not clamped;
silently flooring it would corrupt the optimizer.

Total contract cost
-------------------
cost(lf) = repair(m) * A(lf) + c_M (m - 1) + delay(m) + l * t_l(lf).
The A-term falls in lf while the training bill rises linearly, so the cost
is convex with an interior minimum; its lf-derivative has the closed form
used by the optimizer's tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .costs import CostBreakdown, expected_delay_cost, expected_repair_cost, maintenance_cost
from .scenario import PeriodGrid, LearningParams, RateSeries, Scenario


class InfeasibleTrainingError(ValueError):
    """Training at this lf is impossible (no surplus, or forgetting wins)."""


class ReducedTerms(NamedTuple):
    """Aggregates of the time budget: q, r, s, u and the forgetting scale v."""

    q: float
    r: float
    s: float
    u: float
    v: float

    @property
    def net(self) -> float:
        """Trainable-hours coefficient R - S - Q - U."""
        return self.r - self.s - self.q - self.u


@dataclass(frozen=True)
class LearningState:
    """Realised time budget and efficiency multiplier at one lf."""

    t_repair: float
    t_training: float
    t_forgetting: float
    effective_training: float
    a_factor: float
    training_cost: float


@dataclass(frozen=True)
class FsCostResult:
    """Total contract cost with its learning state and reduced terms."""

    breakdown: CostBreakdown
    state: LearningState
    terms: ReducedTerms


def total_repair_time(internal: RateSeries, grid: PeriodGrid, repair_hours: float = 1.0) -> float:
    """Cumulative repair hours: sum_j phi_j t_j, scaled by hours per repair."""
    return float(np.dot(internal.as_array(), np.asarray(grid.t_j))) * repair_hours


def maintenance_allocation(m: int, grid: PeriodGrid, maintenance_hours: float) -> np.ndarray:
    """Per-period maintenance hours: m/Z visits per period of fixed length."""
    per_period = (m / grid.z_periods) * maintenance_hours
    return np.full(grid.z_periods, per_period)


def _interruption_hours(m: int, s: Scenario, internal: RateSeries, external: RateSeries):
    """Per-period internal repair, external repair and maintenance hours."""
    t = np.asarray(s.grid.t_j)
    r_hours = s.learning.repair_hours
    internal_h = internal.as_array() * t * r_hours
    external_h = external.as_array() * t * r_hours
    maint_h = maintenance_allocation(m, s.grid, s.learning.maintenance_hours)
    return internal_h, external_h, maint_h


def reduced_terms(m: int, s: Scenario, internal: RateSeries, external: RateSeries) -> ReducedTerms:
    """The q/r/s/u/v aggregates for m maintenance actions."""
    internal_h, external_h, maint_h = _interruption_hours(m, s, internal, external)
    t = np.asarray(s.grid.t_j)
    eps = s.learning.epsilon
    v = 2.0 * float(np.sum(
        (internal.as_array() / 2.0) ** (1.0 - eps) * (t - external_h) ** (1.0 - 2.0 * eps)
    ))
    return ReducedTerms(
        q=float(np.sum(internal_h)),
        r=float(np.sum(t)),
        s=float(np.sum(external_h)),
        u=float(np.sum(maint_h)),
        v=v,
    )


def training_time(lf: float, m: int, s: Scenario, internal: RateSeries,
                  external: RateSeries) -> float:
    """Total training hours: surplus time times lf.

    Raises :class:`InfeasibleTrainingError` if any period has no surplus
    left after repairs and maintenance.
    """
    if not 0.0 < lf < 1.0:
        raise ValueError("lf must lie in (0, 1)")
    internal_h, external_h, maint_h = _interruption_hours(m, s, internal, external)
    surplus = np.asarray(s.grid.t_j) - internal_h - external_h - maint_h
    if np.any(surplus <= 0.0):
        j = int(np.argmax(surplus <= 0.0)) + 1
        raise InfeasibleTrainingError(f"no surplus time left for training in period {j}")
    return float(np.sum(surplus)) * lf


def forgetting_time(lf: float, s: Scenario, internal: RateSeries, external: RateSeries,
                    m: int) -> float:
    """Training hours lost to forgetting.

    The simple variant forgets every interrupted hour (repairs internal and
    external plus maintenance).  The revised variant keeps the external term
    but lets on-site rework recover part of the internally interrupted
    training, leaving S + V lf^(1-2 eps).
    """
    internal_h, external_h, maint_h = _interruption_hours(m, s, internal, external)
    if s.learning.forgetting_model == "simple":
        return float(np.sum(internal_h + external_h + maint_h))
    eps = s.learning.epsilon
    t = np.asarray(s.grid.t_j)
    rework = 2.0 * (internal.as_array() / 2.0) ** (1.0 - eps) \
        * ((t - external_h) * lf) ** (1.0 - 2.0 * eps)
    return float(np.sum(external_h + rework))


def learning_effect(t_r: float, t_eff: float, lp: LearningParams) -> float:
    """Efficiency multiplier t_r^(-alpha_auto) * t_eff^(-alpha_indu).

    Both times must be positive; exhausted effective training signals an
    infeasible lf.
    """
    if t_r <= 0.0:
        raise InfeasibleTrainingError("cumulative repair time must be > 0")
    if t_eff <= 0.0:
        raise InfeasibleTrainingError("effective training time exhausted by forgetting")
    return t_r ** -lp.alpha_auto * t_eff ** -lp.alpha_indu


def training_cost(lf: float, m: int, s: Scenario, internal: RateSeries,
                  external: RateSeries) -> float:
    """Training bill in dollars: hourly cost times total training hours."""
    return s.learning.unit_training_cost * training_time(lf, m, s, internal, external)


def learning_state(lf: float, m: int, s: Scenario, internal: RateSeries,
                   external: RateSeries) -> LearningState:
    """Evaluate the full time budget and multiplier at one lf."""
    t_r = total_repair_time(internal, s.grid, s.learning.repair_hours)
    t_l = training_time(lf, m, s, internal, external)
    t_f = forgetting_time(lf, s, internal, external, m)
    t_eff = t_l - t_f
    a = learning_effect(t_r, t_eff, s.learning)
    return LearningState(
        t_repair=t_r,
        t_training=t_l,
        t_forgetting=t_f,
        effective_training=t_eff,
        a_factor=a,
        training_cost=s.learning.unit_training_cost * t_l,
    )


def total_fs_cost(lf: float, m: int, s: Scenario, internal: RateSeries,
                  external: RateSeries) -> FsCostResult:
    """Total full-service contract cost (dollars) at training frequency lf."""
    state = learning_state(lf, m, s, internal, external)
    breakdown = CostBreakdown(
        repair=expected_repair_cost(m, s, internal) * state.a_factor,
        maintenance=maintenance_cost(m, s.cost.avg_maintenance_cost),
        delay=expected_delay_cost(m, s, internal),
        training=state.training_cost,
    )
    return FsCostResult(breakdown, state, reduced_terms(m, s, internal, external))


def fs_cost_lf_derivative(lf: float, m: int, s: Scenario, internal: RateSeries,
                          external: RateSeries) -> float:
    """Analytic d(total cost)/d(lf) at a feasible lf.

    With T = R - S - Q - U the training bill contributes l T, and the repair
    term contributes via the chain rule through the effective training time
    t_eff(lf) = T lf - t_f(lf):

        repair * q^(-a_auto) * (-a_indu) * t_eff^(-a_indu - 1) * t_eff'(lf)

    where t_eff' = T - (1 - 2 eps) V lf^(-2 eps) for the revised forgetting
    model and T for the simple one.
    """
    lp = s.learning
    terms = reduced_terms(m, s, internal, external)
    state = learning_state(lf, m, s, internal, external)
    if lp.forgetting_model == "simple":
        d_eff = terms.net
    else:
        d_eff = terms.net - (1.0 - 2.0 * lp.epsilon) * terms.v * lf ** (-2.0 * lp.epsilon)
    repair = expected_repair_cost(m, s, internal)
    d_repair = repair * state.t_repair ** -lp.alpha_auto * (-lp.alpha_indu) \
        * state.effective_training ** (-lp.alpha_indu - 1.0) * d_eff
    return d_repair + lp.unit_training_cost * terms.net
