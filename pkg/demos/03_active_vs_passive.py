"""
Active or passive?
==================

With optimized placement, the passive IRS overtakes the active one once the
panel is large enough. Compare the exact crossover with its closed-form
prediction for two amplification budgets.
"""

import irsplace as ip

params = ip.default_scenario()

for pf_dbm in (0, 5):
    p = params.replace(irs_amp_power=ip.dbm_to_linear(pf_dbm))
    n_exact = ip.crossover_n(p)
    n_pred = ip.crossover_n_closed_form(p)
    print(f"P_F = {pf_dbm} dBm: passive wins from N = {n_exact} (closed-form prediction {n_pred})")

###############################################################################
# Rates at a few panel sizes.
print(f"{'N':>5} {'active':>8} {'passive':>8}  winner")
for n in (100, 200, 300, 400, 600, 800):
    v = ip.exact_compare(params.replace(num_elements=n))
    print(f"{n:5d} {v.exact_active_rate:8.3f} {v.exact_passive_rate:8.3f}  {v.winner.value}")
