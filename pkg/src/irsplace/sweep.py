"""Parameter sweeps producing plot-ready CSV tables.

A sweep varies one scenario variable over an arithmetic range and evaluates a
list of named output columns at each point. Column names may carry power
modifiers, e.g. ``rate_active_pf5`` (P_F = 5 dBm) or ``x_opt_m_pa15``
(P_A = 15 dBm); ``m`` marks a negative value (``_pfm5`` is -5 dBm).
"""

from __future__ import annotations

import csv
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .config import ScenarioParams, dbm_to_linear
from .exceptions import InfeasibleError
from .link import Direction, Mode, evaluate_link
from .placement import (
    RateWeights,
    optimize_active,
    optimize_active_sum,
    optimize_passive,
    optimize_passive_sum,
    suboptimal_active_dl,
)

__all__ = ["SweepSpec", "PRESETS", "VARIABLES", "sweep_values", "run_sweep", "write_csv", "read_csv"]

# variable name -> key-column header
VARIABLES = {
    "P_F_dbm": "pf_dbm",
    "N": "n",
    "w_DL": "w_dl",
    "H": "h_m",
    "x_AI": "x_ai_m",
}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    step: float
    outputs: tuple[str, ...]
    preset: str | None = None
    overrides: dict = field(default_factory=dict)
    weights: RateWeights = RateWeights()

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}; choose from {sorted(VARIABLES)}")
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValueError(f"sweep step must be positive, got {self.step}")
        if not self.start <= self.stop:
            raise ValueError(f"sweep start {self.start} exceeds stop {self.stop}")
        if not self.outputs:
            raise ValueError("sweep needs at least one output column")
        for name in self.outputs:
            _parse_column(name)

    @classmethod
    def from_preset(cls, name: str) -> SweepSpec:
        try:
            return PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None

    @property
    def header(self) -> list[str]:
        return [VARIABLES[self.variable], *self.outputs]


@dataclass(frozen=True)
class _Point:
    params: ScenarioParams
    weights: RateWeights
    x_ai: float | None  # set only for placement sweeps


def _rate(mode: Mode, direction: Direction) -> Callable[[_Point], float]:
    def column(pt: _Point) -> float:
        if pt.x_ai is not None:
            return evaluate_link(pt.x_ai, pt.params, mode, direction).rate
        opt = optimize_active if mode is Mode.ACTIVE else optimize_passive
        return opt(pt.params, direction).objective

    return column


def _sumrate(mode: Mode) -> Callable[[_Point], float]:
    def column(pt: _Point) -> float:
        if pt.x_ai is not None:
            dl = evaluate_link(pt.x_ai, pt.params, mode, Direction.DL).rate
            ul = evaluate_link(pt.x_ai, pt.params, mode, Direction.UL).rate
            return pt.weights.w_dl * dl + pt.weights.w_ul * ul
        opt = optimize_active_sum if mode is Mode.ACTIVE else optimize_passive_sum
        return opt(pt.params, pt.weights).objective

    return column


_COLUMNS: dict[str, Callable[[_Point], float]] = {
    "rate_active_dl": _rate(Mode.ACTIVE, Direction.DL),
    "rate_active_ul": _rate(Mode.ACTIVE, Direction.UL),
    "rate_passive_dl": _rate(Mode.PASSIVE, Direction.DL),
    "rate_passive_ul": _rate(Mode.PASSIVE, Direction.UL),
    "sumrate_active": _sumrate(Mode.ACTIVE),
    "sumrate_passive": _sumrate(Mode.PASSIVE),
    "x_opt_active_dl": lambda pt: optimize_active(pt.params, Direction.DL).x_opt,
    "x_subopt_active_dl": lambda pt: suboptimal_active_dl(pt.params).x_opt,
    "x_opt_passive_dl": lambda pt: optimize_passive(pt.params, Direction.DL).x_opt,
    "x_opt_active_sum": lambda pt: optimize_active_sum(pt.params, pt.weights).x_opt,
    "x_opt_passive_sum": lambda pt: optimize_passive_sum(pt.params, pt.weights).x_opt,
}
_ALIASES = {
    "rate_active": "rate_active_dl",
    "rate_passive": "rate_passive_dl",
    "x_opt_m": "x_opt_active_dl",
    "x_subopt_m": "x_subopt_active_dl",
}
_MODIFIER = re.compile(r"_(pf|pa|pu)(m?)(\d+(?:p\d+)?)$")
_MODIFIER_FIELDS = {"pf": "irs_amp_power", "pa": "ap_power", "pu": "user_power"}


def _parse_column(name: str) -> tuple[Callable[[_Point], float], dict]:
    """Split a column name into its evaluator and dBm overrides."""
    overrides = {}
    base = name
    while m := _MODIFIER.search(base):
        value = float(m.group(3).replace("p", "."))
        overrides[_MODIFIER_FIELDS[m.group(1)]] = dbm_to_linear(-value if m.group(2) else value)
        base = base[: m.start()]
    base = _ALIASES.get(base, base)
    if base not in _COLUMNS:
        raise ValueError(f"unknown output column {name!r}")
    return _COLUMNS[base], overrides


PRESETS = {
    "fig2a": SweepSpec(
        "P_F_dbm", -5, 25, 1,
        ("x_opt_m_pa15", "x_subopt_m_pa15", "x_opt_m_pa20", "x_subopt_m_pa20"),
        preset="fig2a",
    ),
    "fig2b": SweepSpec(
        "N", 50, 800, 25,
        ("rate_active_pf0", "rate_active_pf5", "rate_passive"),
        preset="fig2b",
    ),
    "fig3a": SweepSpec(
        "w_DL", 0, 1, 0.05,
        ("sumrate_active_pf0", "sumrate_active_pf5", "sumrate_passive"),
        preset="fig3a",
    ),
    "fig3b": SweepSpec(
        "H", 1, 15, 0.5,
        ("sumrate_active", "sumrate_passive"),
        preset="fig3b",
        overrides={"num_elements": 600},
    ),
}


def sweep_values(spec: SweepSpec) -> list[float]:
    count = int(math.floor((spec.stop - spec.start) / spec.step + 1e-9)) + 1
    return [round(spec.start + k * spec.step, 12) for k in range(count)]


def _point_for(params: ScenarioParams, spec: SweepSpec, value: float) -> _Point:
    weights, x_ai = spec.weights, None
    if spec.variable == "P_F_dbm":
        params = params.replace(irs_amp_power=dbm_to_linear(value))
    elif spec.variable == "N":
        if value != int(value) or value < 1:
            raise ValueError(f"N sweep needs positive integers, got {value}")
        params = params.replace(num_elements=int(value))
    elif spec.variable == "H":
        params = params.replace(irs_altitude=value)
    elif spec.variable == "w_DL":
        weights = RateWeights.downlink(value)
    else:
        x_ai = value
    return _Point(params, weights, x_ai)


def _fmt(value: float) -> str:
    return format(value, ".10g")


def _evaluate_row(args) -> list[str]:
    params, spec, value = args
    if spec.overrides:
        params = params.replace(**spec.overrides)
    point = _point_for(params, spec, value)
    row = [str(int(value)) if spec.variable == "N" else _fmt(value)]
    for name in spec.outputs:
        column, overrides = _parse_column(name)
        pt = point
        if overrides:
            pt = _Point(point.params.replace(**overrides), point.weights, point.x_ai)
        try:
            row.append(_fmt(column(pt)))
        except (InfeasibleError, ValueError):
            row.append("")
    return row


def run_sweep(params: ScenarioParams, spec: SweepSpec, jobs: int = 1) -> tuple[list[str], list[list[str]]]:
    """Evaluate ``spec`` and return ``(header, rows)`` as strings, rows in sweep order.

    Infeasible points yield empty cells. Results do not depend on ``jobs``.
    """
    tasks = [(params, spec, v) for v in sweep_values(spec)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_evaluate_row(t) for t in tasks]
    return spec.header, rows


def write_csv(path: str | os.PathLike, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def read_csv(path: str | os.PathLike) -> dict[str, list[float | None]]:
    """Read a sweep CSV back into columns; empty cells become None."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        columns: dict[str, list[float | None]] = {name: [] for name in header}
        for row in reader:
            for name, cell in zip(header, row):
                columns[name].append(float(cell) if cell else None)
    return columns
