"""
Serving both directions with one IRS
====================================

The active IRS wants to sit near whichever end receives, so a single
placement for uplink and downlink must compromise. The passive IRS does
not face that trade-off. This script writes the weighted sum-rate and
altitude sweeps to CSV.
"""

import sys

import irsplace as ip
from irsplace.sweep import read_csv

params = ip.default_scenario()

for w_dl in (0.0, 0.5, 1.0):
    w = ip.RateWeights.downlink(w_dl)
    act = ip.optimize_active_sum(params, w)
    pas = ip.optimize_passive_sum(params, w)
    print(f"w_DL={w_dl:.1f}: active {act.objective:.3f} at {act.x_opt:6.2f} m | "
          f"passive {pas.objective:.3f} at {pas.x_opt:5.3f} m")

###############################################################################
# Figure-style sweeps (columns documented in the README).
out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
for name in ("fig3a", "fig3b"):
    path = f"{out_dir}/{name}.csv"
    ip.write_csv(path, *ip.run_sweep(params, ip.PRESETS[name], jobs=2))
    cols = read_csv(path)
    print(f"{path}: {len(next(iter(cols.values())))} rows, columns {list(cols)}")
