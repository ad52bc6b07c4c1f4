"""Deployment geometry and explicit line-of-sight channel vectors.

Coordinates: AP at (0, 0, 0), user at (D, 0, 0), IRS panel centered at
(x_AI, 0, H), parallel to the ground with element axes along x and y.
Elevation is measured from the panel's downward normal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import ScenarioParams

__all__ = ["Endpoint", "Geometry", "LosChannel", "make_geometry", "steering_vector", "los_channel"]

# Slack for x_AI values that land a hair outside [0, D] through float arithmetic.
_RANGE_SLACK = 1e-9


class Endpoint(enum.Enum):
    AP = "ap"
    USER = "user"


@dataclass(frozen=True)
class Geometry:
    x_ai: float
    x_iu: float
    d_ai: float
    d_iu: float


def make_geometry(x_ai: float, params: ScenarioParams) -> Geometry:
    """Geometry for an IRS at horizontal distance ``x_ai`` from the AP."""
    D, H = params.ap_user_distance, params.irs_altitude
    x_ai = float(x_ai)
    if not (-_RANGE_SLACK * D <= x_ai <= D * (1 + _RANGE_SLACK)):
        raise ValueError(f"x_AI = {x_ai} outside [0, {D}]")
    x_ai = min(max(x_ai, 0.0), D)
    x_iu = D - x_ai
    return Geometry(x_ai, x_iu, math.hypot(x_ai, H), math.hypot(x_iu, H))


def steering_vector(phase: float, size: int) -> np.ndarray:
    """Uniform linear steering vector ``[1, e^{-j pi s}, ..., e^{-j (M-1) pi s}]``."""
    if size < 1:
        raise ValueError(f"steering vector length must be >= 1, got {size}")
    return np.exp(-1j * np.pi * phase * np.arange(size))


@dataclass(frozen=True)
class LosChannel:
    """Single-path channel ``gain * response`` between one endpoint and the IRS."""

    gain: complex
    response: np.ndarray
    azimuth: float
    elevation: float

    @property
    def vector(self) -> np.ndarray:
        return self.gain * self.response

    def __len__(self) -> int:
        return self.response.size


def los_channel(endpoint: Endpoint, geom: Geometry, params: ScenarioParams) -> LosChannel:
    """LoS channel between ``endpoint`` and the IRS for placement ``geom``.

    The same vector serves as the arrival channel when the endpoint transmits and
    (through reciprocity) as the departure channel when it receives.
    """
    if endpoint is Endpoint.AP:
        dist, dx = geom.d_ai, -geom.x_ai
    else:
        dist, dx = geom.d_iu, geom.x_iu
    # dy = 0: every node lies in the x-z plane.
    elevation = math.acos(min(params.irs_altitude / dist, 1.0))
    azimuth = math.pi if dx < 0 else 0.0
    scale = 2.0 * params.element_spacing / params.wavelength
    sx = scale * math.cos(azimuth) * math.sin(elevation)
    sy = scale * math.sin(azimuth) * math.sin(elevation)
    response = np.kron(
        steering_vector(sx, params.panel_rows),
        steering_vector(sy, params.panel_cols),
    )
    gain = math.sqrt(params.ref_gain / dist**2) * np.exp(-2j * np.pi * dist / params.wavelength)
    return LosChannel(complex(gain), response, azimuth, elevation)
