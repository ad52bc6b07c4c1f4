"""IRS placement optimizers.

Exact optimizers scan a uniform grid over the feasible interval and then
refine around the best grid point with a bounded scalar search. The grid
guards against bimodal objectives (passive links, weighted sums); the
refinement makes the argmax smooth in the parameters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .config import ScenarioParams
from .exceptions import JointInfeasibleError, PlacementInfeasibleError
from .link import (
    Direction,
    active_coefficients,
    active_snr_curve,
    is_feasible,
    min_tx_side_distance,
    passive_snr_curve,
    rate_from_snr,
    tx_power_for,
)

__all__ = [
    "Method",
    "PlacementResult",
    "RateWeights",
    "GRID_POINTS",
    "REFINE_TOL",
    "maximize_1d",
    "active_dl_interval",
    "active_sum_interval",
    "optimize_active_dl",
    "optimize_active",
    "suboptimal_active_dl",
    "approx_active_dl_snr",
    "approx_condition_margin",
    "split_point",
    "passive_endpoint_snr",
    "optimize_passive",
    "optimize_active_sum",
    "optimize_passive_sum",
]

GRID_POINTS = 2048
REFINE_TOL = 1e-4


class Method(enum.Enum):
    EXACT_SEARCH = "exact"
    CLOSED_FORM = "closed-form"
    APPROX = "approx"


@dataclass(frozen=True)
class RateWeights:
    w_ul: float = 0.5
    w_dl: float = 0.5

    def __post_init__(self):
        for w in (self.w_ul, self.w_dl):
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weights must lie in [0, 1], got ({self.w_ul}, {self.w_dl})")
        if not math.isclose(self.w_ul + self.w_dl, 1.0, abs_tol=1e-12):
            raise ValueError(f"weights must sum to 1, got {self.w_ul} + {self.w_dl}")

    @classmethod
    def downlink(cls, w_dl: float) -> RateWeights:
        return cls(w_ul=1.0 - w_dl, w_dl=w_dl)


@dataclass(frozen=True)
class PlacementResult:
    """Optimizer output.

    ``x_opt`` is the AP-IRS horizontal distance. ``objective`` is a rate in
    bits/s/Hz (a weighted sum for the joint problems) unless ``objective_kind``
    says otherwise; ``snr`` is the linear SNR at ``x_opt`` for single-link problems.
    """

    x_opt: float
    objective: float
    method: Method
    feasible_interval: tuple[float, float]
    grid_points: int = 0
    refinement_tolerance: float = 0.0
    objective_kind: str = "rate"
    snr: float | None = None
    closed_form_objective: float | None = None
    mirror_x: float | None = None
    extras: dict = field(default_factory=dict)


def maximize_1d(
    objective: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    grid_points: int = GRID_POINTS,
    tol: float = REFINE_TOL,
) -> tuple[float, float]:
    """Maximize a vectorized scalar objective on ``[lo, hi]``.

    Returns ``(x, f(x))``. Grid ties resolve to the lowest x; the refined point
    replaces the grid point only when it is strictly better.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if hi - lo <= tol:
        x = 0.5 * (lo + hi)
        return x, float(objective(np.array([x]))[0])
    grid = np.linspace(lo, hi, grid_points)
    values = objective(grid)
    i = int(np.argmax(values))
    best_x, best_f = float(grid[i]), float(values[i])

    a, b = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, grid_points - 1)])
    res = minimize_scalar(
        lambda x: -float(objective(np.array([x]))[0]),
        bounds=(a, b),
        method="bounded",
        options={"xatol": tol},
    )
    if res.success and -res.fun > best_f:
        best_x, best_f = float(res.x), float(-res.fun)
    return best_x, best_f


def active_dl_interval(params: ScenarioParams) -> tuple[float, float]:
    """Feasible x_AI interval ``[x0, D]`` for the active downlink."""
    if not is_feasible(params, params.ap_power):
        raise PlacementInfeasibleError(
            "infeasible: requires P_F >= N*P_A*beta/(D^2+H^2) + N*sigma_F^2"
        )
    return min_tx_side_distance(params.ap_power, params), params.ap_user_distance


def active_sum_interval(params: ScenarioParams) -> tuple[float, float]:
    """Feasible x_AI interval ``[x0, D - x1]`` when both directions must keep eta >= 1."""
    x0 = min_tx_side_distance(params.ap_power, params)
    x1 = min_tx_side_distance(params.user_power, params)
    D = params.ap_user_distance
    if x0 + x1 > D:
        raise JointInfeasibleError(f"x0 + x1 = {x0:.6g} + {x1:.6g} m exceeds D = {D:.6g} m")
    return x0, D - x1


def optimize_active(params: ScenarioParams, direction: Direction = Direction.DL, **search) -> PlacementResult:
    """Exact single-link active placement; uplink is the mirror problem in x_IU."""
    D = params.ap_user_distance
    p = tx_power_for(direction, params)
    if not is_feasible(params, p):
        raise PlacementInfeasibleError(
            "infeasible: requires P_F >= N*P*beta/(D^2+H^2) + N*sigma_F^2 "
            f"(P_F = {params.irs_amp_power:.6g} mW, floor for P = {p:.6g} mW)"
        )
    x_min = min_tx_side_distance(p, params)
    x_tx, snr = maximize_1d(lambda x: active_snr_curve(x, p, params), x_min, D, **search)
    if direction is Direction.DL:
        x_opt, interval = x_tx, (x_min, D)
    else:
        x_opt, interval = D - x_tx, (0.0, D - x_min)
    return PlacementResult(
        x_opt=x_opt,
        objective=float(rate_from_snr(snr)),
        method=Method.EXACT_SEARCH,
        feasible_interval=interval,
        grid_points=search.get("grid_points", GRID_POINTS),
        refinement_tolerance=search.get("tol", REFINE_TOL),
        snr=snr,
        extras={"direction": direction},
    )


def optimize_active_dl(params: ScenarioParams, **search) -> PlacementResult:
    """Maximize the active downlink rate over ``x_AI in [x0, D]``."""
    return optimize_active(params, Direction.DL, **search)


def split_point(params: ScenarioParams) -> float:
    s2p = params.rx_noise * params.ap_power
    return s2p / (s2p + params.amp_noise * params.irs_amp_power) * params.ap_user_distance


def suboptimal_active_dl(params: ScenarioParams) -> PlacementResult:
    """Closed-form placement maximizing the active SNR with the cross term dropped."""
    lo, hi = active_dl_interval(params)
    x = max(split_point(params), lo)
    snr = float(active_snr_curve(x, params.ap_power, params))
    return PlacementResult(
        x_opt=x,
        objective=float(rate_from_snr(snr)),
        method=Method.CLOSED_FORM,
        feasible_interval=(lo, hi),
        snr=snr,
    )


def approx_condition_margin(params: ScenarioParams) -> float:
    """``(sqrt(P_A beta)/sigma_F + sqrt(P_F beta)/sigma) / D``; the cross term is negligible when >> 1."""
    beta = params.ref_gain
    lhs = math.sqrt(params.ap_power * beta / params.amp_noise) + math.sqrt(
        params.irs_amp_power * beta / params.rx_noise
    )
    return lhs / params.ap_user_distance


def approx_active_dl_snr(params: ScenarioParams) -> float:
    """Approximate optimized active downlink SNR (linear).

    With x0 not binding this is ``(N beta / D^2) (P_A / sigma_F^2 + P_F / sigma^2)``;
    otherwise the cross-term-free SNR at ``x0`` with the H^2 terms dropped.
    """
    x0, _ = active_dl_interval(params)
    n, beta, D = params.num_elements, params.ref_gain, params.ap_user_distance
    if x0 <= split_point(params):
        return n * beta / D**2 * (params.ap_power / params.amp_noise + params.irs_amp_power / params.rx_noise)
    c1, c2, _ = active_coefficients(params.ap_power, params)
    return params.ap_power * beta**2 * n / (c1 * x0**2 + c2 * (D - x0) ** 2)


def passive_endpoint_snr(params: ScenarioParams, direction: Direction = Direction.DL) -> float:
    """Passive SNR with the IRS directly above an endpoint."""
    h2, D, n = params.irs_altitude**2, params.ap_user_distance, params.num_elements
    p = tx_power_for(direction, params)
    return p * params.ref_gain**2 * n * n / (h2 * (D**2 + h2) * params.rx_noise)


def _passive_result(x, objective, params, snr, closed_form, search) -> PlacementResult:
    D = params.ap_user_distance
    # Passive objectives are mirror-symmetric; report the AP-side optimum.
    mirror = D - x
    if mirror < x:
        x, mirror = mirror, x
    return PlacementResult(
        x_opt=x,
        objective=objective,
        method=Method.EXACT_SEARCH,
        feasible_interval=(0.0, D),
        grid_points=search.get("grid_points", GRID_POINTS),
        refinement_tolerance=search.get("tol", REFINE_TOL),
        snr=snr,
        closed_form_objective=closed_form,
        mirror_x=mirror,
    )


def optimize_passive(params: ScenarioParams, direction: Direction = Direction.DL, **search) -> PlacementResult:
    """Exact passive placement over ``[0, D]`` with the above-endpoint value attached."""
    p = tx_power_for(direction, params)
    x, snr = maximize_1d(lambda x: passive_snr_curve(x, p, params), 0.0, params.ap_user_distance, **search)
    endpoint = passive_endpoint_snr(params, direction)
    result = _passive_result(x, float(rate_from_snr(snr)), params, snr, float(rate_from_snr(endpoint)), search)
    result.extras.update(direction=direction, endpoint_snr=endpoint)
    return result


def optimize_active_sum(params: ScenarioParams, weights: RateWeights, **search) -> PlacementResult:
    """Maximize ``w_UL R_UL + w_DL R_DL`` for the active IRS over ``[x0, D - x1]``."""
    lo, hi = active_sum_interval(params)
    D = params.ap_user_distance

    def objective(x):
        r_dl = rate_from_snr(active_snr_curve(x, params.ap_power, params))
        r_ul = rate_from_snr(active_snr_curve(D - x, params.user_power, params))
        return weights.w_ul * r_ul + weights.w_dl * r_dl

    x, value = maximize_1d(objective, lo, hi, **search)
    return PlacementResult(
        x_opt=x,
        objective=value,
        method=Method.EXACT_SEARCH,
        feasible_interval=(lo, hi),
        grid_points=search.get("grid_points", GRID_POINTS),
        refinement_tolerance=search.get("tol", REFINE_TOL),
        extras={
            "weights": weights,
            "rate_dl": float(rate_from_snr(active_snr_curve(x, params.ap_power, params))),
            "rate_ul": float(rate_from_snr(active_snr_curve(D - x, params.user_power, params))),
        },
    )


def optimize_passive_sum(params: ScenarioParams, weights: RateWeights, **search) -> PlacementResult:
    """Maximize the passive weighted sum-rate over ``[0, D]``; attaches the above-endpoint value."""

    def objective(x):
        r_dl = rate_from_snr(passive_snr_curve(x, params.ap_power, params))
        r_ul = rate_from_snr(passive_snr_curve(x, params.user_power, params))
        return weights.w_ul * r_ul + weights.w_dl * r_dl

    x, value = maximize_1d(objective, 0.0, params.ap_user_distance, **search)
    closed = weights.w_ul * rate_from_snr(passive_endpoint_snr(params, Direction.UL)) + weights.w_dl * rate_from_snr(
        passive_endpoint_snr(params, Direction.DL)
    )
    result = _passive_result(x, value, params, None, float(closed), search)
    result.extras.update(
        weights=weights,
        rate_dl=float(rate_from_snr(passive_snr_curve(result.x_opt, params.ap_power, params))),
        rate_ul=float(rate_from_snr(passive_snr_curve(result.x_opt, params.user_power, params))),
    )
    return result
