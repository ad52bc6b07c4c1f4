import math

import numpy as np
import pytest

from irsplace.config import dbm_to_linear, default_scenario
from irsplace.exceptions import JointInfeasibleError, PlacementInfeasibleError
from irsplace.link import Direction, Mode, evaluate_link
from irsplace.placement import (
    Method,
    RateWeights,
    active_sum_interval,
    approx_active_dl_snr,
    approx_condition_margin,
    maximize_1d,
    optimize_active,
    optimize_active_dl,
    optimize_active_sum,
    optimize_passive,
    optimize_passive_sum,
    suboptimal_active_dl,
)

DENSE = 400_001


def brute_active_dl(p, points=DENSE):
    """Dense-grid argmax of the active downlink SNR written out from scratch."""
    b, s2, sf2, pf, pa, n = p.ref_gain, p.rx_noise, p.amp_noise, p.irs_amp_power, p.ap_power, p.num_elements
    x0 = math.sqrt(max(0.0, n * pa * b / (pf - n * sf2) - p.irs_altitude**2))
    x = np.linspace(x0, p.ap_user_distance, points)
    da = x**2 + p.irs_altitude**2
    du = (p.ap_user_distance - x) ** 2 + p.irs_altitude**2
    eta2 = pf / (n * (pa * b / da + sf2))
    snr = eta2 * pa * b**2 * n**2 / (da * du) / (eta2 * sf2 * b * n / du + s2)
    i = int(np.argmax(snr))
    return x[i], snr[i]


def test_maximize_1d_simple():
    x, f = maximize_1d(lambda x: -((x - 0.3217) ** 2), 0.0, 1.0)
    assert x == pytest.approx(0.3217, abs=1e-4)
    assert f == pytest.approx(0.0, abs=1e-8)
    x, _ = maximize_1d(lambda x: x, 2.0, 5.0)
    assert x == 5.0
    x, _ = maximize_1d(lambda x: np.ones_like(x), 0.0, 1.0)
    assert x == 0.0  # ties resolve to the lowest x


def test_maximize_1d_bimodal_takes_global():
    f = lambda x: np.exp(-((x - 0.1) ** 2) / 1e-4) + 1.2 * np.exp(-((x - 0.8) ** 2) / 1e-4)
    x, _ = maximize_1d(f, 0.0, 1.0)
    assert x == pytest.approx(0.8, abs=1e-4)


def test_optimize_active_dl_matches_brute_force(params):
    res = optimize_active_dl(params)
    xb, snr_b = brute_active_dl(params)
    assert res.method is Method.EXACT_SEARCH
    assert res.x_opt == pytest.approx(xb, abs=2e-3)
    assert res.snr >= snr_b * (1 - 1e-12)
    lo, hi = res.feasible_interval
    assert lo <= res.x_opt <= hi
    assert lo == pytest.approx(6.1443, abs=1e-4)


def test_optimize_active_dl_near_closed_form(params):
    exact = optimize_active_dl(params)
    sub = suboptimal_active_dl(params)
    assert abs(exact.x_opt - sub.x_opt) < 2.0
    assert exact.objective >= sub.objective


def test_optimize_active_dl_large_budget_goes_to_ap(params):
    res = optimize_active_dl(params.replace(irs_amp_power=1e9))
    assert res.x_opt < 0.05


def test_optimize_active_dl_infeasible(params):
    with pytest.raises(PlacementInfeasibleError):
        optimize_active_dl(params.replace(irs_amp_power=0.01))


def test_x_opt_monotone_in_pf(params):
    xs = [optimize_active_dl(params.replace(irs_amp_power=dbm_to_linear(pf))).x_opt for pf in (0, 5, 10, 15, 20)]
    assert all(b <= a + 1e-3 for a, b in zip(xs, xs[1:]))
    assert xs[0] > xs[-1] + 10


@pytest.mark.parametrize(
    "pf, expected",
    [(1.0, 1e-8 * 100 / (1e-8 * 100 + 1e-7 * 1.0) * 50), (100.0, 50 / 11)],
)
def test_suboptimal_examples(params, pf, expected):
    res = suboptimal_active_dl(params.replace(irs_amp_power=pf))
    assert res.method is Method.CLOSED_FORM
    assert res.x_opt == pytest.approx(expected, rel=1e-12)


def test_suboptimal_reference_values(params):
    assert suboptimal_active_dl(params).x_opt == pytest.approx(45.4545, abs=1e-4)
    assert suboptimal_active_dl(params.replace(irs_amp_power=100.0)).x_opt == pytest.approx(4.5455, abs=1e-4)


def test_suboptimal_clamped_by_x0():
    # strong amplification noise pulls the split point below x0
    p = default_scenario(amp_noise=1e-5)
    res = suboptimal_active_dl(p)
    x0 = math.sqrt(40 / (1 - 400 * 1e-5) - 2.25)
    assert 1e-6 / (1e-6 + 1e-5) * 50 < x0
    assert res.x_opt == pytest.approx(x0, rel=1e-12)
    assert res.x_opt == pytest.approx(res.feasible_interval[0])


def test_suboptimal_maximizes_cross_term_free_objective(params):
    # minimize C1 d_AI^2 + C2 d_IU^2 on a dense grid
    b, s2, sf2, pf, pa = 1e-3, 1e-8, 1e-7, 1.0, 100.0
    x = np.linspace(6.1443, 50, 400_001)
    den = b * sf2 * (x**2 + 2.25) + pa * b * s2 / pf * ((50 - x) ** 2 + 2.25)
    assert suboptimal_active_dl(params).x_opt == pytest.approx(x[np.argmin(den)], abs=2e-4)


def test_approx_snr_branch_one(params):
    assert approx_active_dl_snr(params) == pytest.approx(1.6e-4 * (1e9 + 1e8), rel=1e-12)
    assert approx_active_dl_snr(params) == pytest.approx(1.76e5, rel=1e-12)
    exact = optimize_active_dl(params).snr
    assert abs(approx_active_dl_snr(params) - exact) / exact < 0.05


def test_approx_condition_at_defaults(params):
    margin = approx_condition_margin(params)
    assert margin * 50 == pytest.approx(math.sqrt(0.1 / 1e-7) + math.sqrt(1e-3 / 1e-8), rel=1e-12)
    assert margin * 50 == pytest.approx(1000 + 316.23, rel=1e-4)
    assert margin > 25


def test_approx_snr_branch_two():
    p = default_scenario(amp_noise=1e-5)
    x0 = math.sqrt(40 / (1 - 400 * 1e-5) - 2.25)
    c1, c2 = 1e-3 * 1e-5, 100 * 1e-3 * 1e-8
    assert approx_active_dl_snr(p) == pytest.approx(100 * 1e-6 * 400 / (c1 * x0**2 + c2 * (50 - x0) ** 2), rel=1e-12)


def exact_passive_argmax(p):
    """Stationary points of the distance product are D/2 and the roots of x (D - x) = H^2."""
    D, H = p.ap_user_distance, p.irs_altitude
    return (D - math.sqrt(D**2 - 4 * H**2)) / 2


def test_optimize_passive_defaults(params):
    res = optimize_passive(params)
    assert res.x_opt == pytest.approx(exact_passive_argmax(params), abs=2e-4)
    assert res.x_opt < 0.1  # above the AP, within H^2/D
    assert res.mirror_x == pytest.approx(50 - res.x_opt)
    assert res.extras["endpoint_snr"] == pytest.approx(2.8419e5, rel=1e-4)
    assert res.snr >= res.extras["endpoint_snr"]
    assert res.snr == pytest.approx(res.extras["endpoint_snr"], rel=2e-3)
    assert res.closed_form_objective == pytest.approx(math.log2(1 + 16 / (2.25 * 2502.25 * 1e-8)), rel=1e-12)


def test_passive_midpoint_is_worst(params):
    mid = evaluate_link(25.0, params, Mode.PASSIVE, Direction.DL).snr
    assert mid == pytest.approx(16 / (627.25**2 * 1e-8), rel=1e-12)
    assert mid == pytest.approx(4.07e3, rel=1e-3)
    assert optimize_passive(params).extras["endpoint_snr"] / mid == pytest.approx(70, rel=0.01)


def test_passive_endpoints_symmetric(params):
    a = evaluate_link(0.0, params, Mode.PASSIVE, Direction.DL).snr
    b = evaluate_link(50.0, params, Mode.PASSIVE, Direction.DL).snr
    assert a == pytest.approx(b, rel=1e-14)


def test_active_sum_interval(params):
    lo, hi = active_sum_interval(params)
    assert lo == pytest.approx(6.1443, abs=1e-4)
    assert hi == pytest.approx(46.7752, abs=1e-4)


def test_active_sum_half_weights_interior(params):
    res = optimize_active_sum(params, RateWeights())
    dl = optimize_active(params, Direction.DL).x_opt
    ul = optimize_active(params, Direction.UL).x_opt
    assert ul < res.x_opt < dl
    lo, hi = res.feasible_interval
    assert lo < res.x_opt < hi


def test_active_sum_matches_brute_force(params):
    w = RateWeights(0.3, 0.7)
    lo, hi = active_sum_interval(params)
    xs = np.linspace(lo, hi, 4001)
    obj = [
        0.7 * evaluate_link(x, params, Mode.ACTIVE, Direction.DL).rate
        + 0.3 * evaluate_link(x, params, Mode.ACTIVE, Direction.UL).rate
        for x in xs
    ]
    coarse_best = xs[int(np.argmax(obj))]
    res = optimize_active_sum(params, w)
    assert res.objective >= max(obj)
    assert res.x_opt == pytest.approx(coarse_best, abs=0.02)


def test_active_sum_degenerate_weights(params):
    dl = optimize_active_sum(params, RateWeights(0.0, 1.0))
    assert dl.x_opt == pytest.approx(min(optimize_active_dl(params).x_opt, 50 - 3.2248), abs=1e-3)
    ul = optimize_active_sum(params, RateWeights(1.0, 0.0))
    assert ul.x_opt < 25
    assert ul.x_opt == pytest.approx(optimize_active(params, Direction.UL).x_opt, abs=1e-3)


def test_active_sum_joint_infeasible():
    p = default_scenario(irs_amp_power=0.02)
    with pytest.raises(JointInfeasibleError):
        optimize_active_sum(p, RateWeights())


def test_passive_sum_reference(params):
    res = optimize_passive_sum(params, RateWeights())
    assert res.closed_form_objective == pytest.approx(0.5 * 16.46 + 0.5 * 18.12, abs=5e-3)
    assert res.objective >= res.closed_form_objective
    assert res.x_opt < 0.1


@pytest.mark.parametrize("w_dl", [0.0, 0.2, 0.5, 0.9, 1.0])
def test_passive_sum_weight_invariant(params, w_dl):
    res = optimize_passive_sum(params, RateWeights.downlink(w_dl))
    assert res.x_opt == pytest.approx(exact_passive_argmax(params), abs=2e-4)


def test_passive_sum_dl_only_equals_passive(params):
    a = optimize_passive_sum(params, RateWeights(0.0, 1.0))
    b = optimize_passive(params)
    assert a.objective == pytest.approx(b.objective, rel=1e-12)
    assert a.x_opt == pytest.approx(b.x_opt, abs=1e-6)


@pytest.mark.parametrize("w", [(0.6, 0.6), (-0.1, 1.1)])
def test_rate_weights_validation(w):
    with pytest.raises(ValueError):
        RateWeights(*w)


def test_dominance_over_sampled_placements(params):
    exact = optimize_active_dl(params)
    for x in np.linspace(exact.feasible_interval[0], 50, 97):
        assert evaluate_link(x, params, Mode.ACTIVE, Direction.DL).rate <= exact.objective + 1e-12


def test_search_is_deterministic(params):
    a = optimize_active_sum(params, RateWeights())
    b = optimize_active_sum(params, RateWeights())
    assert a.x_opt == b.x_opt and a.objective == b.objective
