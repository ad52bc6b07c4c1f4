"""Active-versus-passive comparisons and element-count crossover."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .config import ScenarioParams
from .link import Direction
from .placement import (
    RateWeights,
    active_dl_interval,
    approx_active_dl_snr,
    optimize_active,
    optimize_active_sum,
    optimize_passive,
    optimize_passive_sum,
    passive_endpoint_snr,
    split_point,
)

__all__ = [
    "Winner",
    "ComparisonVerdict",
    "TIE_RTOL",
    "prop1_sides",
    "prop1_test",
    "exact_compare",
    "crossover_n",
    "crossover_n_closed_form",
]

TIE_RTOL = 1e-9


class Winner(enum.Enum):
    ACTIVE = "active"
    PASSIVE = "passive"
    TIE = "tie"


@dataclass(frozen=True)
class ComparisonVerdict:
    winner: Winner
    prop1_lhs: float
    prop1_rhs: float
    prop1_applicable: bool
    approx_active_snr: float | None = None
    approx_passive_snr: float | None = None
    exact_active_rate: float | None = None
    exact_passive_rate: float | None = None
    exact_active_x: float | None = None
    exact_passive_x: float | None = None

    @property
    def exact_margin(self) -> float | None:
        """Passive minus active exact rate, bits/s/Hz."""
        if self.exact_active_rate is None or self.exact_passive_rate is None:
            return None
        return self.exact_passive_rate - self.exact_active_rate


def prop1_sides(params: ScenarioParams) -> tuple[float, float]:
    """Element-count side and power side of the approximate passive-wins test."""
    D2, H2 = params.ap_user_distance**2, params.irs_altitude**2
    lhs = params.num_elements * D2 * params.ref_gain / (H2 * (D2 + H2))
    rhs = params.irs_amp_power / params.ap_power + params.rx_noise / params.amp_noise
    return lhs, rhs


def prop1_test(params: ScenarioParams) -> ComparisonVerdict:
    """Approximate downlink verdict from the closed-form optimized SNRs.

    ``prop1_applicable`` is False when x0 binds, in which case the test does not
    describe the approximate SNRs it is meant to compare.
    """
    x0, _ = active_dl_interval(params)
    lhs, rhs = prop1_sides(params)
    return ComparisonVerdict(
        winner=Winner.PASSIVE if lhs >= rhs else Winner.ACTIVE,
        prop1_lhs=lhs,
        prop1_rhs=rhs,
        prop1_applicable=x0 <= split_point(params),
        approx_active_snr=approx_active_dl_snr(params),
        approx_passive_snr=passive_endpoint_snr(params, Direction.DL),
    )


def _winner(active: float, passive: float) -> Winner:
    if math.isclose(active, passive, rel_tol=TIE_RTOL, abs_tol=0.0):
        return Winner.TIE
    return Winner.PASSIVE if passive > active else Winner.ACTIVE


def exact_compare(
    params: ScenarioParams,
    direction: Direction = Direction.DL,
    weights: RateWeights | None = None,
) -> ComparisonVerdict:
    """Compare exactly optimized active and passive rates.

    With ``weights`` the weighted sum-rates of the joint uplink/downlink problems are
    compared and ``direction`` is ignored.
    """
    if weights is not None:
        act = optimize_active_sum(params, weights)
        pas = optimize_passive_sum(params, weights)
    else:
        act = optimize_active(params, direction)
        pas = optimize_passive(params, direction)
    approx = prop1_test(params)
    return ComparisonVerdict(
        winner=_winner(act.objective, pas.objective),
        prop1_lhs=approx.prop1_lhs,
        prop1_rhs=approx.prop1_rhs,
        prop1_applicable=approx.prop1_applicable,
        approx_active_snr=approx.approx_active_snr,
        approx_passive_snr=approx.approx_passive_snr,
        exact_active_rate=act.objective,
        exact_passive_rate=pas.objective,
        exact_active_x=act.x_opt,
        exact_passive_x=pas.x_opt,
    )


def _passive_wins(params, direction, weights) -> bool:
    if weights is not None:
        act = optimize_active_sum(params, weights).objective
        pas = optimize_passive_sum(params, weights).objective
    else:
        act = optimize_active(params, direction).objective
        pas = optimize_passive(params, direction).objective
    return pas >= act or _winner(act, pas) is Winner.TIE


def crossover_n(
    params: ScenarioParams,
    direction: Direction = Direction.DL,
    weights: RateWeights | None = None,
    n_start: int = 1,
    n_stop: int = 2000,
) -> int | None:
    """Smallest N in ``[n_start, n_stop]`` at which the optimized passive rate meets the active one.

    Returns None when no crossover occurs in the scanned range.
    """
    for n in range(n_start, n_stop + 1):
        if _passive_wins(params.replace(num_elements=n), direction, weights):
            return n
    return None


def crossover_n_closed_form(params: ScenarioParams) -> int:
    """Smallest N satisfying the approximate passive-wins inequality."""
    D2, H2 = params.ap_user_distance**2, params.irs_altitude**2
    _, rhs = prop1_sides(params)
    return max(1, math.ceil(rhs * H2 * (D2 + H2) / (D2 * params.ref_gain)))
