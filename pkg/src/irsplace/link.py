"""Reflection design, active-IRS feasibility and link SNR evaluation.

Closed-form SNRs are written in terms of the *transmitter-side* horizontal
distance so that the same expression serves downlink (AP transmits, distance
x_AI) and uplink (user transmits, distance x_IU = D - x_AI). ``vector_snr``
evaluates the received-signal expression directly from explicit channel
vectors and is kept independent of the closed forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import Endpoint, LosChannel, los_channel, make_geometry
from .config import ScenarioParams
from .exceptions import AmplifierInfeasibleError, PlacementInfeasibleError

__all__ = [
    "Mode",
    "Direction",
    "ReflectionDesign",
    "LinkEvaluation",
    "rate_from_snr",
    "tx_power_for",
    "align_phases",
    "feasibility_floor",
    "is_feasible",
    "min_tx_side_distance",
    "amp_factor",
    "active_coefficients",
    "active_snr_curve",
    "passive_snr_curve",
    "active_snr",
    "passive_snr",
    "evaluate_link",
    "vector_snr",
]

# Amplification factors this close below one are treated as rounding of eta == 1.
ETA_TOLERANCE = 1e-9


class Mode(enum.Enum):
    ACTIVE = "active"
    PASSIVE = "passive"


class Direction(enum.Enum):
    DL = "dl"
    UL = "ul"


def rate_from_snr(snr):
    return np.log2(1.0 + snr)


def tx_power_for(direction: Direction, params: ScenarioParams) -> float:
    return params.ap_power if direction is Direction.DL else params.user_power


@dataclass(frozen=True)
class ReflectionDesign:
    phase_shifts: np.ndarray
    amp_factor: float
    mode: Mode

    def __post_init__(self):
        if self.mode is Mode.PASSIVE and self.amp_factor != 1.0:
            raise ValueError("passive reflection requires amp_factor == 1")
        if self.mode is Mode.ACTIVE and self.amp_factor < 1.0 - ETA_TOLERANCE:
            raise ValueError(f"active reflection requires amp_factor >= 1, got {self.amp_factor}")

    @property
    def matrix_diagonal(self) -> np.ndarray:
        return self.amp_factor * np.exp(1j * self.phase_shifts)


@dataclass(frozen=True)
class LinkEvaluation:
    snr: float
    direction: Direction
    mode: Mode
    amp_factor: float = 1.0
    coefficients: tuple[float, float, float] | None = None

    @property
    def rate(self) -> float:
        return float(rate_from_snr(self.snr))

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.snr) if self.snr > 0 else -math.inf


def _as_vector(h) -> np.ndarray:
    return h.vector if isinstance(h, LosChannel) else np.asarray(h, dtype=complex)


def align_phases(incident, outgoing) -> np.ndarray:
    """Phase shifts that co-phase the cascaded channel ``outgoing^H diag(e^{j phi}) incident``.

    ``incident`` is the transmitter-to-IRS channel and ``outgoing`` the IRS-to-receiver
    channel (column convention, so the receiver sees ``outgoing^H``).
    """
    g, h = _as_vector(outgoing), _as_vector(incident)
    if g.shape != h.shape:
        raise ValueError(f"channel length mismatch: {g.shape} vs {h.shape}")
    return -(np.angle(np.conj(g)) + np.angle(h))


def feasibility_floor(params: ScenarioParams, tx_power: float | None = None) -> float:
    """Smallest amplification budget P_F for which some placement gives eta >= 1.

    Attained with the IRS above the receiver, i.e. at transmitter distance sqrt(D^2 + H^2).
    """
    p = params.ap_power if tx_power is None else tx_power
    n = params.num_elements
    return n * p * params.ref_gain / (params.ap_user_distance**2 + params.irs_altitude**2) + n * params.amp_noise


def is_feasible(params: ScenarioParams, tx_power: float | None = None) -> bool:
    return params.irs_amp_power >= feasibility_floor(params, tx_power)


def _amp_headroom(params: ScenarioParams) -> float:
    headroom = params.irs_amp_power - params.num_elements * params.amp_noise
    if headroom <= 0.0:
        raise AmplifierInfeasibleError(
            f"P_F = {params.irs_amp_power:.6g} mW does not exceed N*sigma_F^2 = "
            f"{params.num_elements * params.amp_noise:.6g} mW"
        )
    return headroom


def min_tx_side_distance(tx_power: float, params: ScenarioParams) -> float:
    """Minimum horizontal distance from the transmitter at which eta >= 1 holds."""
    headroom = _amp_headroom(params)
    arg = params.num_elements * tx_power * params.ref_gain / headroom - params.irs_altitude**2
    return math.sqrt(max(0.0, arg))


def amp_factor(x_tx_side: float, tx_power: float, params: ScenarioParams) -> float:
    """Common amplification factor with the amplifier power constraint met with equality."""
    _amp_headroom(params)
    d2 = x_tx_side**2 + params.irs_altitude**2
    eta = math.sqrt(
        params.irs_amp_power / (params.num_elements * (tx_power * params.ref_gain / d2 + params.amp_noise))
    )
    if eta < 1.0 - ETA_TOLERANCE:
        raise PlacementInfeasibleError(
            f"amplification factor {eta:.6g} < 1 at transmitter distance {x_tx_side:.6g} m "
            f"(minimum {min_tx_side_distance(tx_power, params):.6g} m)"
        )
    return max(eta, 1.0)


def active_coefficients(tx_power: float, params: ScenarioParams) -> tuple[float, float, float]:
    """Denominator weights of the active SNR: transmitter-side, receiver-side and cross terms."""
    beta, s2, sf2, pf = params.ref_gain, params.rx_noise, params.amp_noise, params.irs_amp_power
    return beta * sf2, tx_power * beta * s2 / pf, s2 * sf2 / pf


def active_snr_curve(x_tx_side, tx_power: float, params: ScenarioParams):
    """Vectorized active SNR over transmitter-side distances; no feasibility check."""
    x = np.asarray(x_tx_side, dtype=float)
    h2 = params.irs_altitude**2
    d_tx2 = x**2 + h2
    d_rx2 = (params.ap_user_distance - x) ** 2 + h2
    c1, c2, c3 = active_coefficients(tx_power, params)
    num = tx_power * params.ref_gain**2 * params.num_elements
    return num / (c1 * d_tx2 + c2 * d_rx2 + c3 * d_tx2 * d_rx2)


def passive_snr_curve(x_ai, tx_power: float, params: ScenarioParams):
    """Vectorized passive SNR; symmetric in x_AI <-> D - x_AI."""
    x = np.asarray(x_ai, dtype=float)
    h2 = params.irs_altitude**2
    prod = (x**2 + h2) * ((params.ap_user_distance - x) ** 2 + h2)
    n = params.num_elements
    return tx_power * params.ref_gain**2 * n * n / (prod * params.rx_noise)


def _check_range(x: float, params: ScenarioParams) -> None:
    D = params.ap_user_distance
    if not (0.0 <= x <= D * (1 + 1e-12)):
        raise ValueError(f"placement {x} outside [0, {D}]")


def active_snr(
    x_tx_side: float,
    tx_power: float,
    params: ScenarioParams,
    direction: Direction = Direction.DL,
) -> LinkEvaluation:
    """Active-IRS SNR at transmitter-side horizontal distance ``x_tx_side``.

    Raises :class:`PlacementInfeasibleError` when the placement forces eta < 1.
    """
    _check_range(x_tx_side, params)
    eta = amp_factor(x_tx_side, tx_power, params)
    snr = float(active_snr_curve(x_tx_side, tx_power, params))
    return LinkEvaluation(snr, direction, Mode.ACTIVE, eta, active_coefficients(tx_power, params))


def passive_snr(
    x_ai: float,
    tx_power: float,
    params: ScenarioParams,
    direction: Direction = Direction.DL,
) -> LinkEvaluation:
    _check_range(x_ai, params)
    return LinkEvaluation(float(passive_snr_curve(x_ai, tx_power, params)), direction, Mode.PASSIVE)


def evaluate_link(x_ai: float, params: ScenarioParams, mode: Mode, direction: Direction) -> LinkEvaluation:
    """Closed-form evaluation at AP-IRS horizontal distance ``x_ai``."""
    p = tx_power_for(direction, params)
    if mode is Mode.PASSIVE:
        return passive_snr(x_ai, p, params, direction)
    x_tx = x_ai if direction is Direction.DL else params.ap_user_distance - x_ai
    return active_snr(x_tx, p, params, direction)


def vector_snr(x_ai: float, direction: Direction, mode: Mode, params: ScenarioParams) -> LinkEvaluation:
    """SNR from explicit channel vectors, aligned phases and the literal power constraint.

    Builds both LoS channels, co-phases the cascade, solves the amplifier power
    constraint ``eta^2 (P ||Theta h||^2 + sigma_F^2 ||Theta||_F^2) = P_F`` from the
    vectors themselves and evaluates ``P |g^H eta Theta h|^2 / (||g^H eta Theta||^2 sigma_F^2 + sigma^2)``.
    """
    geom = make_geometry(x_ai, params)
    h_ap = los_channel(Endpoint.AP, geom, params).vector
    h_user = los_channel(Endpoint.USER, geom, params).vector
    if direction is Direction.DL:
        incident, outgoing, p = h_ap, h_user, params.ap_power
    else:
        incident, outgoing, p = h_user, h_ap, params.user_power

    theta = np.exp(1j * align_phases(incident, outgoing))
    if mode is Mode.ACTIVE:
        _amp_headroom(params)
        incident_power = np.vdot(theta * incident, theta * incident).real
        eta = math.sqrt(params.irs_amp_power / (p * incident_power + params.amp_noise * np.sum(np.abs(theta) ** 2)))
        if eta < 1.0 - ETA_TOLERANCE:
            raise PlacementInfeasibleError(f"amplification factor {eta:.6g} < 1 at x_AI = {x_ai:.6g} m")
        amp_noise = params.amp_noise
    else:
        eta, amp_noise = 1.0, 0.0

    row = np.conj(outgoing) * eta * theta
    signal = p * abs(row @ incident) ** 2
    noise = np.vdot(row, row).real * amp_noise + params.rx_noise
    coeffs = active_coefficients(p, params) if mode is Mode.ACTIVE else None
    return LinkEvaluation(float(signal / noise), direction, mode, eta, coeffs)
