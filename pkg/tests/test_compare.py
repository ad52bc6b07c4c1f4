import math

import numpy as np
import pytest

from irsplace.compare import (
    Winner,
    crossover_n,
    crossover_n_closed_form,
    exact_compare,
    prop1_sides,
    prop1_test,
)
from irsplace.config import dbm_to_linear, default_scenario
from irsplace.exceptions import PlacementInfeasibleError
from irsplace.link import Direction
from irsplace.placement import RateWeights


def test_prop1_reference_values(params):
    v = prop1_test(params)
    assert v.prop1_lhs == pytest.approx(400 * 2500 * 1e-3 / (2.25 * 2502.25), rel=1e-12)
    assert v.prop1_lhs == pytest.approx(0.17762, rel=1e-4)
    assert v.prop1_rhs == pytest.approx(0.11, rel=1e-12)
    assert v.prop1_applicable
    assert v.winner is Winner.PASSIVE


def test_prop1_small_panel_prefers_active(params):
    v = prop1_test(params.replace(num_elements=100))
    assert v.prop1_lhs == pytest.approx(0.04440, rel=1e-3)
    assert v.winner is Winner.ACTIVE


def test_prop1_ratio_identity(params):
    v = prop1_test(params)
    assert v.prop1_lhs / v.prop1_rhs == pytest.approx(v.approx_passive_snr / v.approx_active_snr, rel=1e-12)
    assert v.prop1_lhs / v.prop1_rhs == pytest.approx(1.615, rel=1e-3)


def test_prop1_infeasible(params):
    with pytest.raises(PlacementInfeasibleError):
        prop1_test(params.replace(irs_amp_power=0.01))


def test_exact_compare_defaults(params):
    v = exact_compare(params)
    assert v.winner is Winner.PASSIVE
    assert v.exact_passive_rate > v.exact_active_rate
    assert exact_compare(params.replace(num_elements=100)).winner is Winner.ACTIVE


def test_exact_compare_weighted_margin_exceeds_downlink(params):
    dl = exact_compare(params)
    joint = exact_compare(params, weights=RateWeights())
    assert joint.winner is Winner.PASSIVE
    assert joint.exact_margin > dl.exact_margin


def test_exact_compare_uplink(params):
    v = exact_compare(params, Direction.UL)
    assert v.exact_active_x < 25  # uplink receiver is the AP
    assert v.winner in (Winner.ACTIVE, Winner.PASSIVE)


def brute_crossover(p, n_range):
    """Independent dense-grid scan: passive uses its closed-form stationary point."""
    D, H = p.ap_user_distance, p.irs_altitude
    b, s2, sf2, pf, pa = p.ref_gain, p.rx_noise, p.amp_noise, p.irs_amp_power, p.ap_power
    x_pas = (D - math.sqrt(D**2 - 4 * H**2)) / 2
    prod = (x_pas**2 + H**2) * ((D - x_pas) ** 2 + H**2)
    for n in n_range:
        pas = pa * b**2 * n**2 / (prod * s2)
        x0 = math.sqrt(max(0.0, n * pa * b / (pf - n * sf2) - H**2))
        x = np.linspace(x0, D, 200_001)
        da, du = x**2 + H**2, (D - x) ** 2 + H**2
        act = np.max(pa * b**2 * n / (b * sf2 * da + pa * b * s2 / pf * du + s2 * sf2 / pf * da * du))
        if pas >= act:
            return n
    return None


@pytest.mark.parametrize("pf_dbm, window", [(0, (240, 260)), (5, (290, 310))])
def test_crossover_n(params, pf_dbm, window):
    p = params.replace(irs_amp_power=dbm_to_linear(pf_dbm))
    n = crossover_n(p)
    assert window[0] <= n <= window[1]
    assert n == brute_crossover(p, range(window[0], window[1] + 1))


def test_crossover_closed_form(params):
    assert crossover_n_closed_form(params) == math.ceil(0.11 * 2.25 * 2502.25 / 2.5)
    assert crossover_n_closed_form(params) == 248
    assert crossover_n_closed_form(params.replace(irs_amp_power=dbm_to_linear(5))) == 297


def test_crossover_shrinks_with_amplification_noise(params):
    ns = [crossover_n(params.replace(amp_noise=sf2)) for sf2 in (1e-7, 1e-6, 1e-5, 1e-4)]
    assert ns == sorted(ns, reverse=True)
    assert ns[-1] < 30


def test_crossover_none_in_range(params):
    assert crossover_n(params, n_start=1, n_stop=50) is None


def test_crossover_monotone_in_pf(params):
    ns = [crossover_n(params.replace(irs_amp_power=dbm_to_linear(pf))) for pf in (-5, 0, 5, 10)]
    assert ns == sorted(ns)


def test_prop1_sides_scaling(params):
    lhs1, rhs1 = prop1_sides(params)
    lhs2, rhs2 = prop1_sides(params.replace(num_elements=800))
    assert lhs2 == pytest.approx(2 * lhs1)
    assert rhs2 == rhs1
