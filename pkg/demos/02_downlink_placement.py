"""
Where to put the IRS in the downlink
====================================

Exact one-dimensional search versus the closed-form placement for the
active IRS, and the passive IRS's preference for the link endpoints.
"""

import irsplace as ip

params = ip.default_scenario()

###############################################################################
# Less amplification power pushes the active IRS toward the user.
print(f"{'P_F [dBm]':>10} {'exact x*':>9} {'closed x~':>10} {'rate loss':>10}")
for pf_dbm in range(-5, 26, 5):
    p = params.replace(irs_amp_power=ip.dbm_to_linear(pf_dbm))
    exact = ip.optimize_active_dl(p)
    sub = ip.suboptimal_active_dl(p)
    print(f"{pf_dbm:10d} {exact.x_opt:9.3f} {sub.x_opt:10.3f} {exact.objective - sub.objective:10.2e}")

###############################################################################
# The passive optimum sits just beside an endpoint; both sides are equivalent.
res = ip.optimize_passive(params)
print(f"passive x* = {res.x_opt:.4f} m (mirror {res.mirror_x:.4f} m), rate {res.objective:.4f} bps/Hz")
print(f"IRS exactly above the AP: {res.closed_form_objective:.4f} bps/Hz")
