"""Placement optimization and rate comparison for active and passive IRS-aided LoS links."""

from .channel import Endpoint, Geometry, LosChannel, los_channel, make_geometry, steering_vector
from .compare import (
    ComparisonVerdict,
    Winner,
    crossover_n,
    crossover_n_closed_form,
    exact_compare,
    prop1_test,
)
from .config import (
    ScenarioParams,
    db_to_linear,
    dbm_to_linear,
    default_scenario,
    linear_to_db,
    linear_to_dbm,
    load_scenario_file,
)
from .exceptions import (
    AmplifierInfeasibleError,
    InfeasibleError,
    JointInfeasibleError,
    PlacementInfeasibleError,
    ScenarioError,
)
from .link import (
    Direction,
    LinkEvaluation,
    Mode,
    ReflectionDesign,
    active_snr,
    align_phases,
    amp_factor,
    evaluate_link,
    feasibility_floor,
    min_tx_side_distance,
    passive_snr,
    vector_snr,
)
from .placement import (
    Method,
    PlacementResult,
    RateWeights,
    approx_active_dl_snr,
    optimize_active,
    optimize_active_dl,
    optimize_active_sum,
    optimize_passive,
    optimize_passive_sum,
    suboptimal_active_dl,
)
from .sweep import PRESETS, SweepSpec, run_sweep, write_csv

__version__ = "0.1.0"
