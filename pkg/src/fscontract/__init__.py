"""Pricing of full-service repair contracts with optimized maintenance,
dynamic learning/forgetting and a customer-choice market model."""

from .costs import (
    CostBreakdown,
    OsCostMoments,
    expected_delay_cost,
    expected_repair_cost,
    maintenance_cost,
    os_cost_moments,
)
from .failure import (
    MaintenancePlan,
    aging_factor,
    aging_series,
    brute_force_pm_count,
    expected_failures,
    expected_failures_in_period,
    internal_rate_series,
    optimal_pm_count,
)
from .learning import (
    FsCostResult,
    InfeasibleTrainingError,
    LearningState,
    ReducedTerms,
    forgetting_time,
    fs_cost_lf_derivative,
    learning_effect,
    learning_state,
    reduced_terms,
    total_fs_cost,
    total_repair_time,
    training_cost,
    training_time,
)
from .pricing import (
    ConvergenceError,
    InfeasiblePriceError,
    LfSolution,
    PricingSolution,
    disutility,
    expected_profit,
    fs_market_share,
    optimal_price,
    optimize_lf,
    price_bounds,
    price_variants,
)
from .report import (
    KpiRecord,
    SweepSpec,
    compare_models,
    emit_report,
    profit_premium_sweep,
    read_kpi_csv,
    sweep,
)
from .scenario import (
    BASELINE_INTERNAL_SERIES,
    INTERNAL_RATE_TABLE_PATH,
    ConfigError,
    CostParams,
    FailureParams,
    LearningParams,
    MarketParams,
    PeriodGrid,
    RateSeries,
    Scenario,
    ScenarioValidationError,
    Violation,
    default_scenario,
    load_internal_table,
    load_scenario,
    save_scenario,
    scaled_to_mean,
    simulate_external_rates,
    validate_scenario,
)

__version__ = "0.1.0"
