"""Training-frequency optimization, customer choice and contract pricing.

Customers pick the contract with the smaller disutility: a fixed-price
contract costs exactly its price, while pay-per-repair costs
(1 + beta) * (expected repairs + maintenance) plus a risk penalty
alpha_i (1 + beta)^2 Var / 2 that grows with the customer's risk aversion
alpha_i ~ U[0, alpha_max].  The indifference threshold

    tau(P) = 2 [P - (1 + beta) (E + C_M)] / ((1 + beta)^2 Var)

makes the fixed-price market share 1 - tau/alpha_max (clipped to [0, 1];
the customer exactly at the threshold signs the fixed-price contract).

The posted price follows the closed-form pricing rule

    P = repair*A + beta E_os + C_M/2 + (1 + 2 beta) C_M_os / 2 + delay/2
        + alpha_max (1 + beta)^2 Var / 4 + training

clamped between the competitive floor (total cost plus the pay-per-repair
margin) and the ownership-cost ceiling.  With the benchmark inputs (no
learning, shared maintenance plan, no training) this rule is exactly the
argmax of the quadratic market-profit objective; with learning it passes
cost changes through one-for-one, which is what keeps total profit flat
across training frequencies.

This module works in report units (thousands of dollars); cost-side inputs
are converted once on entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .costs import (
    CostBreakdown,
    OsCostMoments,
    expected_delay_cost,
    expected_repair_cost,
    maintenance_cost,
    os_cost_moments,
)
from .failure import internal_rate_series, optimal_pm_count
from .learning import (
    InfeasibleTrainingError,
    learning_state,
    reduced_terms,
    total_fs_cost,
)
from .scenario import (
    DOLLARS_PER_REPORT_UNIT,
    MarketParams,
    RateSeries,
    Scenario,
    simulate_external_rates,
)

VARIANTS = ("bench", "auto", "full")

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ConvergenceError(RuntimeError):
    """The bracketed search ran out of iterations before reaching tolerance."""


class InfeasiblePriceError(ValueError):
    """No admissible price: the floor exceeds the ceiling."""

    def __init__(self, lower: float, upper: float):
        self.lower = lower
        self.upper = upper
        super().__init__(f"price floor {lower:.3f} exceeds ceiling {upper:.3f}")


@dataclass(frozen=True)
class LfSolution:
    """Optimized training frequency and the search metadata."""

    lf_star: float
    cost_at_star: float
    vertex_hint: float
    iterations: int
    feasible_range: tuple[float, float]


@dataclass(frozen=True)
class PricingSolution:
    """Posted price with bounds, market share, profit and cost breakdown.

    Monetary fields are in thousands of dollars.  ``lf_star`` is set for the
    full variant only.
    """

    price: float
    lower_bound: float
    upper_bound: float
    interior_price: float
    fs_share: float
    profit: float
    breakdown: CostBreakdown
    variant: str
    m_count: int
    lf_star: float | None = None


def golden_section(f, lo: float, hi: float, tol: float = 1e-6,
                   max_iter: int = 200) -> tuple[float, float, int]:
    """Minimize a unimodal function on [lo, hi] to absolute x-tolerance tol.

    Returns (argmin, minimum, iterations).
    """
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    iterations = 0
    while b - a > tol:
        if iterations >= max_iter:
            raise ConvergenceError(f"no convergence after {max_iter} iterations")
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        iterations += 1
    x = (a + b) / 2.0
    return x, f(x), iterations


def feasible_lf_range(m: int, s: Scenario, internal: RateSeries,
                      external: RateSeries) -> tuple[float, float]:
    """Open interval of lf values with positive effective training time.

    The lower edge is the root of t_l(lf) - t_f(lf) = 0; the upper edge is
    the lf < 1 limit.  Raises :class:`InfeasibleTrainingError` when
    forgetting exceeds training everywhere.
    """
    terms = reduced_terms(m, s, internal, external)
    lp = s.learning

    def effective(lf: float) -> float:
        if lp.forgetting_model == "simple":
            return terms.net * lf - (terms.s + terms.q + terms.u)
        return terms.net * lf - terms.s - terms.v * lf ** (1.0 - 2.0 * lp.epsilon)

    hi = 1.0 - 1e-12
    if terms.net <= 0.0 or effective(hi) <= 0.0:
        raise InfeasibleTrainingError("forgetting exceeds training for every lf in (0, 1)")
    lo = 1e-15
    if effective(lo) > 0.0:
        return lo, hi
    root = hi
    for _ in range(200):
        mid = math.sqrt(lo * root)
        if effective(mid) > 0.0:
            root = mid
        else:
            lo = mid
        if root / lo < 1.0 + 1e-12:
            break
    return root, hi


def optimize_lf(m: int, s: Scenario, internal: RateSeries,
                external: RateSeries) -> LfSolution:
    """Minimize total contract cost over the feasible training frequencies.

    Bracketed golden-section search seeded around the turning-point hint
    v / (2 (r - s - q - u)), refined to absolute lf tolerance 1e-6.
    """
    terms = reduced_terms(m, s, internal, external)
    lo_edge, hi_edge = feasible_lf_range(m, s, internal, external)
    hint = terms.v / (2.0 * terms.net) if terms.net > 0 else float("nan")

    lo = lo_edge * (1.0 + 1e-9) + 1e-15
    hi = hi_edge

    def objective(lf: float) -> float:
        return total_fs_cost(lf, m, s, internal, external).breakdown.total

    # Expand a window around the hint until the minimum is interior.
    left = min(max(lo, hint / 8.0), hi)
    right = max(min(hi, hint * 8.0), lo)
    for _ in range(64):
        mid = math.sqrt(left * right)
        interior = objective(mid)
        grew = False
        if objective(left) < interior and left > lo:
            left = max(lo, left / 8.0)
            grew = True
        if objective(right) < interior and right < hi:
            right = min(hi, right * 8.0)
            grew = True
        if not grew:
            break

    lf_star, cost_star, iterations = golden_section(objective, left, right, tol=1e-6)
    return LfSolution(
        lf_star=lf_star,
        cost_at_star=cost_star,
        vertex_hint=hint,
        iterations=iterations,
        feasible_range=(lo_edge, hi_edge),
    )


def disutility(choice: str, alpha_i: float, price: float, osm: OsCostMoments,
               beta: float) -> float:
    """Customer disutility of one contract choice ('FS' or 'OS').

    A fixed-price contract costs its price; pay-per-repair costs the marked-
    up expected bill plus the variance penalty weighted by alpha_i.
    """
    if alpha_i < 0:
        raise ValueError("risk aversion must be >= 0")
    if choice == "FS":
        return price
    if choice == "OS":
        return (1.0 + beta) * osm.mean + alpha_i * (1.0 + beta) ** 2 * osm.variance / 2.0
    raise ValueError(f"unknown contract choice {choice!r}")


def fs_market_share(price: float, osm: OsCostMoments, mk: MarketParams) -> float:
    """Fraction of customers whose risk aversion favors the fixed price.

    Degenerate zero-variance markets split sharply: everyone signs at or
    below the marked-up expected bill, nobody above it.
    """
    threshold = (1.0 + mk.beta) * osm.mean
    if osm.variance <= 0.0:
        return 1.0 if price <= threshold else 0.0
    tau = 2.0 * (price - threshold) / ((1.0 + mk.beta) ** 2 * osm.variance)
    if tau <= 0.0:
        return 1.0
    return min(max(1.0 - tau / mk.alpha_max, 0.0), 1.0)


def expected_profit(price: float, fs_cost: CostBreakdown, osm: OsCostMoments,
                    mk: MarketParams) -> float:
    """Market-wide expected profit at a posted price.

    Fixed-price customers contribute price minus total cost; the rest stay
    on pay-per-repair and contribute the mark-up margin.
    """
    share = fs_market_share(price, osm, mk)
    per_customer = (price - fs_cost.total) * share + mk.beta * osm.mean * (1.0 - share)
    return mk.d_customers * per_customer


def price_bounds(fs_cost: CostBreakdown, osm: OsCostMoments,
                 mk: MarketParams) -> tuple[float, float]:
    """Admissible price interval.

    The floor makes the fixed-price margin at least the pay-per-repair
    margin; the ceiling is what ownership minus leasing and operations
    leaves for service.
    """
    lower = fs_cost.total + mk.beta * osm.mean
    return lower, mk.resolved_ceiling()


def _interior_price(fs_cost: CostBreakdown, osm: OsCostMoments, mk: MarketParams) -> float:
    beta = mk.beta
    risk_premium = mk.alpha_max * (1.0 + beta) ** 2 * osm.variance / 4.0
    return (fs_cost.repair
            + beta * osm.repair_mean
            + 0.5 * fs_cost.maintenance
            + 0.5 * (1.0 + 2.0 * beta) * osm.maintenance
            + 0.5 * fs_cost.delay
            + risk_premium
            + fs_cost.training)


def optimal_price(s: Scenario, variant: str = "full",
                  internal: RateSeries | None = None,
                  external: RateSeries | None = None,
                  lf: float | None = None) -> PricingSolution:
    """Price one model variant.

    ``bench`` prices with no learning, the pay-per-repair maintenance plan
    and no training; ``auto`` applies the cumulative experience multiplier
    Z^(-alpha_auto) at the optimized maintenance count; ``full`` adds
    training at the optimized (or explicitly given) frequency lf.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if internal is None:
        internal = internal_rate_series(s.failure, s.grid)
    if external is None:
        external = simulate_external_rates(s)

    osm = os_cost_moments(s, internal).scaled(1.0 / DOLLARS_PER_REPORT_UNIT)
    lf_star: float | None = None

    if variant == "bench":
        m = s.cost.m0_os
        a_factor, training = 1.0, 0.0
    elif variant == "auto":
        m = optimal_pm_count(s, internal).m_count
        a_factor = s.grid.z_periods ** -s.learning.alpha_auto
        training = 0.0
    else:
        m = optimal_pm_count(s, internal).m_count
        if lf is None:
            solution = optimize_lf(m, s, internal, external)
            lf_star = solution.lf_star
        else:
            lf_star = lf
        state = learning_state(lf_star, m, s, internal, external)
        a_factor, training = state.a_factor, state.training_cost

    breakdown = CostBreakdown(
        repair=expected_repair_cost(m, s, internal) * a_factor,
        maintenance=maintenance_cost(m, s.cost.avg_maintenance_cost),
        delay=expected_delay_cost(m, s, internal),
        training=training,
    ).scaled(1.0 / DOLLARS_PER_REPORT_UNIT)

    interior = _interior_price(breakdown, osm, s.market)
    lower, upper = price_bounds(breakdown, osm, s.market)
    if lower > upper:
        raise InfeasiblePriceError(lower, upper)
    price = min(max(interior, lower), upper)
    return PricingSolution(
        price=price,
        lower_bound=lower,
        upper_bound=upper,
        interior_price=interior,
        fs_share=fs_market_share(price, osm, s.market),
        profit=expected_profit(price, breakdown, osm, s.market),
        breakdown=breakdown,
        variant=variant,
        m_count=m,
        lf_star=lf_star,
    )


def price_variants(s: Scenario) -> dict[str, PricingSolution]:
    """Price all three model variants on shared rate inputs."""
    internal = internal_rate_series(s.failure, s.grid)
    external = simulate_external_rates(s)
    return {v: optimal_price(s, v, internal, external) for v in VARIANTS}
