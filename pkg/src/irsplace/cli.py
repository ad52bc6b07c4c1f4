"""Command-line front end.

Exit codes: 0 success, 2 infeasible scenario, 3 bad arguments, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from .compare import crossover_n, crossover_n_closed_form, exact_compare, prop1_test
from .config import ScenarioParams, db_to_linear, dbm_to_linear, default_scenario, load_scenario_file
from .exceptions import InfeasibleError, ScenarioError
from .link import Direction, Mode, evaluate_link, feasibility_floor, tx_power_for
from .placement import (
    RateWeights,
    approx_active_dl_snr,
    optimize_active,
    optimize_active_sum,
    optimize_passive,
    optimize_passive_sum,
    suboptimal_active_dl,
)
from .sweep import PRESETS, VARIABLES, SweepSpec, run_sweep, write_csv

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_IO = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# flag -> (field, converter)
_OVERRIDES = {
    "pa_dbm": ("ap_power", dbm_to_linear),
    "pu_dbm": ("user_power", dbm_to_linear),
    "pf_dbm": ("irs_amp_power", dbm_to_linear),
    "noise_dbm": ("rx_noise", dbm_to_linear),
    "amp_noise_dbm": ("amp_noise", dbm_to_linear),
    "beta_db": ("ref_gain", db_to_linear),
    "wavelength": ("wavelength", float),
    "n": ("num_elements", int),
    "nx": ("panel_rows", int),
    "ny": ("panel_cols", int),
    "spacing": ("element_spacing", float),
    "d": ("ap_user_distance", float),
    "h": ("irs_altitude", float),
}


def _scenario_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("scenario")
    g.add_argument("--scenario", metavar="FILE", help="key = value scenario file")
    g.add_argument("--pa-dbm", type=float, help="AP transmit power")
    g.add_argument("--pu-dbm", type=float, help="user transmit power")
    g.add_argument("--pf-dbm", type=float, help="active-IRS amplification power")
    g.add_argument("--noise-dbm", type=float, help="receiver noise power")
    g.add_argument("--amp-noise-dbm", type=float, help="amplification noise power per element")
    g.add_argument("--beta-db", type=float, help="reference channel gain at 1 m")
    g.add_argument("--wavelength", type=float, help="carrier wavelength [m]")
    g.add_argument("--n", type=int, help="number of reflecting elements")
    g.add_argument("--nx", type=int, help="elements along x")
    g.add_argument("--ny", type=int, help="elements along y")
    g.add_argument("--spacing", type=float, help="element spacing [m]")
    g.add_argument("--d", type=float, help="AP-user horizontal distance [m]")
    g.add_argument("--h", type=float, help="IRS altitude [m]")
    return p


def _link_args(p: argparse.ArgumentParser, weights: bool = True) -> None:
    p.add_argument("--mode", choices=[m.value for m in Mode], default="active")
    p.add_argument("--direction", choices=[d.value for d in Direction], default="dl")
    if weights:
        p.add_argument("--w-dl", type=float, help="downlink weight; switches to the weighted sum-rate problem")


def build_parser() -> argparse.ArgumentParser:
    parent = _scenario_parent()
    parser = _Parser(prog="irsplace", description="Active vs passive IRS placement and rate analysis.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rate", parents=[parent], help="evaluate one placement")
    _link_args(p, weights=False)
    p.add_argument("--x-ai", type=float, required=True, help="AP-IRS horizontal distance [m]")

    p = sub.add_parser("place", parents=[parent], help="optimize IRS placement")
    _link_args(p)
    p.add_argument("--method", choices=["exact", "closed-form", "approx"], default="exact")

    p = sub.add_parser("compare", parents=[parent], help="active vs passive verdict")
    p.add_argument("--direction", choices=[d.value for d in Direction], default="dl")
    p.add_argument("--w-dl", type=float, help="compare weighted sum-rates instead")

    p = sub.add_parser("crossover", parents=[parent], help="smallest N where passive wins")
    p.add_argument("--direction", choices=[d.value for d in Direction], default="dl")
    p.add_argument("--w-dl", type=float, help="use weighted sum-rates")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=2000)

    p = sub.add_parser("sweep", parents=[parent], help="parameter sweep to CSV")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--variable", choices=sorted(VARIABLES))
    p.add_argument("--range", nargs=3, type=float, metavar=("START", "STOP", "STEP"))
    p.add_argument("--outputs", nargs="+", metavar="COLUMN")
    p.add_argument("--w-dl", type=float, default=0.5, help="downlink weight for sum-rate columns")
    p.add_argument("--out", required=True, metavar="CSV")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def scenario_from_args(args: argparse.Namespace) -> ScenarioParams:
    overrides = {}
    for flag, (field, conv) in _OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = conv(value)
    if args.scenario:
        return load_scenario_file(args.scenario, **overrides)
    return default_scenario(**overrides)


def _weights(w_dl: float | None) -> RateWeights | None:
    return None if w_dl is None else RateWeights.downlink(w_dl)


def _g(x: float) -> str:
    return format(x, ".6g")


def _snr_line(snr: float) -> str:
    db = 10 * math.log10(snr) if snr > 0 else -math.inf
    return f"snr: {_g(snr)} ({_g(db)} dB)"


def cmd_rate(params: ScenarioParams, args) -> int:
    mode, direction = Mode(args.mode), Direction(args.direction)
    if mode is Mode.ACTIVE:
        p = tx_power_for(direction, params)
        floor = feasibility_floor(params, p)
        if params.irs_amp_power < floor:
            raise InfeasibleError(
                f"infeasible: requires P_F >= N*P*beta/(D^2+H^2) + N*sigma_F^2 = {_g(floor)} mW "
                f"(P_F = {_g(params.irs_amp_power)} mW)"
            )
    ev = evaluate_link(args.x_ai, params, mode, direction)
    print(f"mode: {mode.value}  direction: {direction.value}  x_ai: {_g(args.x_ai)} m")
    print(_snr_line(ev.snr))
    print(f"rate: {_g(ev.rate)} bps/Hz")
    print(f"eta: {_g(ev.amp_factor)}")
    return EXIT_OK


def cmd_place(params: ScenarioParams, args) -> int:
    mode, direction, weights = Mode(args.mode), Direction(args.direction), _weights(args.w_dl)
    if args.method != "exact" and (mode is Mode.PASSIVE or weights or direction is Direction.UL):
        raise ValueError(f"--method {args.method} is only defined for the active downlink")
    if args.method == "approx":
        snr = approx_active_dl_snr(params)
        print("method: approx")
        print(_snr_line(snr))
        print(f"rate: {_g(math.log2(1 + snr))} bps/Hz")
        return EXIT_OK
    if args.method == "closed-form":
        res = suboptimal_active_dl(params)
    elif weights is not None:
        res = (optimize_active_sum if mode is Mode.ACTIVE else optimize_passive_sum)(params, weights)
    else:
        res = (optimize_active if mode is Mode.ACTIVE else optimize_passive)(params, direction)
    lo, hi = res.feasible_interval
    print(f"method: {res.method.value}  mode: {mode.value}")
    print(f"x_ai_opt: {_g(res.x_opt)} m")
    if res.mirror_x is not None:
        print(f"mirror optimum: {_g(res.mirror_x)} m")
    label = "weighted sum-rate" if weights is not None else "rate"
    print(f"{label}: {_g(res.objective)} bps/Hz")
    if res.closed_form_objective is not None:
        print(f"above-endpoint value: {_g(res.closed_form_objective)} bps/Hz")
    print(f"feasible interval: [{_g(lo)}, {_g(hi)}] m")
    return EXIT_OK


def cmd_compare(params: ScenarioParams, args) -> int:
    verdict = exact_compare(params, Direction(args.direction), _weights(args.w_dl))
    approx = prop1_test(params)
    print(f"winner: {verdict.winner.value}")
    print(f"active rate: {_g(verdict.exact_active_rate)} bps/Hz at x_ai = {_g(verdict.exact_active_x)} m")
    print(f"passive rate: {_g(verdict.exact_passive_rate)} bps/Hz at x_ai = {_g(verdict.exact_passive_x)} m")
    print(
        f"approx test: lhs {_g(approx.prop1_lhs)} vs rhs {_g(approx.prop1_rhs)} -> {approx.winner.value}"
        f" (applicable: {'yes' if approx.prop1_applicable else 'no'})"
    )
    return EXIT_OK


def cmd_crossover(params: ScenarioParams, args) -> int:
    n = crossover_n(params, Direction(args.direction), _weights(args.w_dl), args.n_min, args.n_max)
    print(f"crossover N: {n if n is not None else 'none in range'}")
    print(f"closed-form prediction: {crossover_n_closed_form(params)}")
    return EXIT_OK


def cmd_sweep(params: ScenarioParams, args) -> int:
    if args.preset:
        spec = SweepSpec.from_preset(args.preset)
    else:
        if not (args.variable and args.range and args.outputs):
            raise ValueError("sweep needs --preset, or --variable, --range and --outputs")
        spec = SweepSpec(args.variable, *args.range, tuple(args.outputs), weights=RateWeights.downlink(args.w_dl))
    header, rows = run_sweep(params, spec, jobs=max(1, args.jobs))
    write_csv(args.out, header, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "rate": cmd_rate,
    "place": cmd_place,
    "compare": cmd_compare,
    "crossover": cmd_crossover,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        params = scenario_from_args(args)
        return _COMMANDS[args.command](params, args)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
