"""Model comparisons, parameter sweeps and report emission.

KPI tables compare the full model ("new"), the autonomous-learning-only
model ("old") and pure pay-per-repair service, or trace one KPI set along a
swept parameter.  Emitters produce CSV, markdown, plain x/y plot data and a
dependency-free SVG line chart; all outputs are byte-deterministic for
identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .costs import os_cost_moments
from .failure import internal_rate_series
from .pricing import (
    InfeasiblePriceError,
    InfeasibleTrainingError,
    PricingSolution,
    optimal_price,
)
from .scenario import (
    DOLLARS_PER_REPORT_UNIT,
    Scenario,
    ScenarioValidationError,
    scaled_to_mean,
    validate_scenario,
)

SWEEP_PARAMS = ("beta", "phi_int_mean", "lf", "unit_training_cost")
FORMATS = ("csv", "markdown", "plotdata", "svg")

CSV_HEADER = "variant,param,value,price,cost,profit,fs_share"


@dataclass(frozen=True)
class KpiRecord:
    """One row of a comparison or sweep table (prices in thousands of $)."""

    variant: str
    swept_param: str | None
    swept_value: float
    price: float
    cost: float
    profit: float
    fs_share: float
    feasible: bool = True


@dataclass(frozen=True)
class SweepSpec:
    """A sweep axis: which parameter, which values, which model variant."""

    param: str
    values: tuple[float, ...]
    variant: str = "full"

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ValueError(f"unknown sweep parameter {self.param!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")


def _record(sol: PricingSolution, param: str | None, value: float) -> KpiRecord:
    return KpiRecord(
        variant=sol.variant,
        swept_param=param,
        swept_value=value,
        price=sol.price,
        cost=sol.breakdown.total,
        profit=sol.profit,
        fs_share=sol.fs_share,
    )


def compare_models(s: Scenario) -> list[KpiRecord]:
    """The three-way KPI comparison: full model, old model, pay-per-repair.

    The pay-per-repair row prices at cost plus mark-up; its market share is
    not applicable and reported as NaN.
    """
    full = optimal_price(s, "full")
    auto = optimal_price(s, "auto")
    osm = os_cost_moments(s, internal_rate_series(s.failure, s.grid))
    osm = osm.scaled(1.0 / DOLLARS_PER_REPORT_UNIT)
    beta = s.market.beta
    os_row = KpiRecord(
        variant="os",
        swept_param=None,
        swept_value=float("nan"),
        price=(1.0 + beta) * osm.mean,
        cost=osm.mean,
        profit=s.market.d_customers * beta * osm.mean,
        fs_share=float("nan"),
    )
    return [_record(full, None, float("nan")), _record(auto, None, float("nan")), os_row]


def _swept_scenario(s: Scenario, param: str, value: float) -> Scenario:
    if param == "beta":
        return replace(s, market=replace(s.market, beta=value))
    if param == "phi_int_mean":
        return scaled_to_mean(s, value)
    if param == "lf":
        return replace(s, learning=replace(s.learning, lf=value))
    return replace(s, learning=replace(s.learning, unit_training_cost=value))


def sweep(spec: SweepSpec, s: Scenario) -> list[KpiRecord]:
    """Evaluate the KPI set at each swept value, everything else held fixed.

    An lf sweep prices the full model at the given training frequency
    instead of re-optimizing it.  A swept value that breaks a scenario
    invariant raises :class:`ScenarioValidationError`; a value that is
    merely infeasible (training exhausted, empty price interval) yields a
    flagged NaN record and the sweep continues.
    """
    records = []
    for value in spec.values:
        scenario = _swept_scenario(s, spec.param, value)
        violations = validate_scenario(scenario)
        if violations:
            raise ScenarioValidationError(violations)
        lf = value if spec.param == "lf" and spec.variant == "full" else None
        try:
            sol = optimal_price(scenario, spec.variant, lf=lf)
            records.append(_record(sol, spec.param, value))
        except (InfeasibleTrainingError, InfeasiblePriceError):
            nan = float("nan")
            records.append(KpiRecord(spec.variant, spec.param, value,
                                     nan, nan, nan, nan, feasible=False))
    return records


def profit_premium_sweep(s: Scenario, values: tuple[float, ...]) -> list[tuple[float, float]]:
    """Full-model profit advantage over the old model per unit training cost.

    The old model never trains, so its profit is evaluated once at the base
    scenario.
    """
    auto_profit = optimal_price(s, "auto").profit
    out = []
    for value in values:
        scenario = replace(s, learning=replace(s.learning, unit_training_cost=value))
        out.append((value, optimal_price(scenario, "full").profit - auto_profit))
    return out


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def _num(x: float) -> str:
    return "NA" if math.isnan(x) else f"{x:.6f}"


def _csv_lines(records: list[KpiRecord]) -> list[str]:
    lines = [CSV_HEADER]
    for r in records:
        param = r.swept_param or ""
        value = "" if math.isnan(r.swept_value) else f"{r.swept_value:.6f}"
        lines.append(",".join([r.variant, param, value, _num(r.price), _num(r.cost),
                               _num(r.profit), _num(r.fs_share)]))
    return lines


def _markdown_lines(records: list[KpiRecord]) -> list[str]:
    header = CSV_HEADER.split(",")
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join(["---"] * len(header)) + "|"]
    for row in _csv_lines(records)[1:]:
        lines.append("| " + " | ".join(row.split(",")) + " |")
    return lines


def _plotdata_lines(records: list[KpiRecord]) -> list[str]:
    lines = ["# value price cost profit fs_share"]
    for r in records:
        x = "nan" if math.isnan(r.swept_value) else f"{r.swept_value:.6f}"
        lines.append(" ".join([x, _num(r.price), _num(r.cost), _num(r.profit),
                               _num(r.fs_share)]))
    return lines


_SVG_KPIS = ("price", "cost", "profit", "fs_share")
_PANEL_W, _PANEL_H, _MARGIN = 480, 120, 46


def _svg_polyline(points: list[tuple[float, float]]) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" points="{coords}"/>'


def _svg_text(records: list[KpiRecord]) -> str:
    xs = [r.swept_value for r in records]
    if any(math.isnan(x) for x in xs):
        xs = list(range(1, len(records) + 1))
    height = _MARGIN + len(_SVG_KPIS) * (_PANEL_H + _MARGIN)
    width = _PANEL_W + 2 * _MARGIN
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    x_lo, x_hi = min(xs), max(xs)
    x_span = (x_hi - x_lo) or 1.0
    for i, kpi in enumerate(_SVG_KPIS):
        ys = [getattr(r, kpi) for r in records]
        clean = [y for y in ys if not math.isnan(y)]
        y_lo = min(clean) if clean else 0.0
        y_hi = max(clean) if clean else 1.0
        y_span = (y_hi - y_lo) or 1.0
        top = _MARGIN + i * (_PANEL_H + _MARGIN)
        parts.append(f'<g transform="translate({_MARGIN},{top})">')
        parts.append(f'<rect width="{_PANEL_W}" height="{_PANEL_H}" fill="none" '
                     'stroke="#888" stroke-width="1"/>')
        parts.append(f'<text x="0" y="-8" font-family="monospace" font-size="12">{kpi}</text>')
        parts.append(f'<text x="{_PANEL_W}" y="-8" text-anchor="end" font-family="monospace" '
                     f'font-size="10">min={y_lo:.6g} max={y_hi:.6g}</text>')
        points = []
        for x, y in zip(xs, ys):
            if math.isnan(y):
                continue
            px = (x - x_lo) / x_span * _PANEL_W
            py = _PANEL_H - (y - y_lo) / y_span * _PANEL_H
            points.append((px, py))
        if points:
            parts.append(_svg_polyline(points))
        parts.append(f'<text x="0" y="{_PANEL_H + 14}" font-family="monospace" '
                     f'font-size="10">{x_lo:.6g}</text>')
        parts.append(f'<text x="{_PANEL_W}" y="{_PANEL_H + 14}" text-anchor="end" '
                     f'font-family="monospace" font-size="10">{x_hi:.6g}</text>')
        parts.append('</g>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"


def emit_report(records: list[KpiRecord], fmt: str, path: str | Path) -> None:
    """Write the records in the requested format (deterministic bytes)."""
    if not records:
        raise ValueError("no records to emit")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "csv":
        text = "\n".join(_csv_lines(records)) + "\n"
    elif fmt == "markdown":
        text = "\n".join(_markdown_lines(records)) + "\n"
    elif fmt == "plotdata":
        text = "\n".join(_plotdata_lines(records)) + "\n"
    else:
        text = _svg_text(records)
    Path(path).write_text(text, encoding="utf-8")


def read_kpi_csv(path: str | Path) -> list[KpiRecord]:
    """Parse a CSV emitted by :func:`emit_report` back into records."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: not a KPI csv")
    records = []
    for line in lines[1:]:
        variant, param, value, price, cost, profit, share = line.split(",")

        def num(cell: str) -> float:
            return float("nan") if cell in ("NA", "") else float(cell)

        records.append(KpiRecord(
            variant=variant,
            swept_param=param or None,
            swept_value=num(value),
            price=num(price),
            cost=num(cost),
            profit=num(profit),
            fs_share=num(share),
            feasible=not math.isnan(num(price)),
        ))
    return records
