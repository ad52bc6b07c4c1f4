"""Scenario parameters, unit conversion and scenario-file parsing.

All powers are stored in milliwatts and all lengths in meters. Conversion
from dBm/dB happens only here, at the configuration boundary.
"""

from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass
from typing import Mapping

from .exceptions import ScenarioError

__all__ = [
    "ScenarioParams",
    "dbm_to_linear",
    "linear_to_dbm",
    "db_to_linear",
    "linear_to_db",
    "default_scenario",
    "near_square_factors",
    "load_scenario_file",
    "parse_scenario_text",
]


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"expected a finite value, got {x!r}")
    return x


def dbm_to_linear(x_dbm: float) -> float:
    """Convert decibel-milliwatts to milliwatts.

    >>> dbm_to_linear(20.0)
    100.0
    """
    return 10.0 ** (_check_finite(x_dbm) / 10.0)


def linear_to_dbm(p_mw: float) -> float:
    """Convert milliwatts to decibel-milliwatts."""
    p_mw = _check_finite(p_mw)
    if p_mw <= 0.0:
        raise ValueError(f"power must be positive, got {p_mw!r}")
    return 10.0 * math.log10(p_mw)


def db_to_linear(x_db: float) -> float:
    """Convert a power ratio in dB to a linear ratio.

    >>> db_to_linear(-30.0)
    0.001
    """
    return 10.0 ** (_check_finite(x_db) / 10.0)


def linear_to_db(ratio: float) -> float:
    ratio = _check_finite(ratio)
    if ratio <= 0.0:
        raise ValueError(f"ratio must be positive, got {ratio!r}")
    return 10.0 * math.log10(ratio)


def near_square_factors(n: int) -> tuple[int, int]:
    """Split ``n`` into ``(rows, cols)`` with ``rows <= cols`` as close to square as possible.

    >>> near_square_factors(400)
    (20, 20)
    >>> near_square_factors(600)
    (24, 25)
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    rows = math.isqrt(n)
    while n % rows:
        rows -= 1
    return rows, n // rows


@dataclass(frozen=True)
class ScenarioParams:
    """Physical constants of one deployment, in linear units.

    Powers are in mW, lengths in m. ``panel_rows``/``panel_cols`` default to a
    near-square factorization of ``num_elements`` and ``element_spacing``
    defaults to half a wavelength.
    """

    ap_power: float = 100.0
    user_power: float = 10.0**1.5
    irs_amp_power: float = 1.0
    rx_noise: float = 1e-8
    amp_noise: float = 1e-7
    ref_gain: float = 1e-3
    wavelength: float = 0.4
    num_elements: int = 400
    panel_rows: int | None = None
    panel_cols: int | None = None
    element_spacing: float | None = None
    ap_user_distance: float = 50.0
    irs_altitude: float = 1.5

    def __post_init__(self) -> None:
        n = self.num_elements
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise ScenarioError(f"num_elements must be a positive integer, got {n!r}")
        object.__setattr__(self, "num_elements", int(n))

        rows, cols = self.panel_rows, self.panel_cols
        if rows is None and cols is None:
            rows, cols = near_square_factors(self.num_elements)
        elif rows is None:
            rows = self.num_elements // cols if cols else 0
        elif cols is None:
            cols = self.num_elements // rows if rows else 0
        if int(rows) < 1 or int(cols) < 1:
            raise ScenarioError("panel dimensions must be positive integers")
        if int(rows) * int(cols) != self.num_elements:
            raise ScenarioError(
                f"panel_rows * panel_cols = {rows} * {cols} != num_elements = {self.num_elements}"
            )
        object.__setattr__(self, "panel_rows", int(rows))
        object.__setattr__(self, "panel_cols", int(cols))

        if self.element_spacing is None:
            object.__setattr__(self, "element_spacing", self.wavelength / 2.0)

        for name in (
            "ap_power",
            "user_power",
            "irs_amp_power",
            "rx_noise",
            "amp_noise",
            "wavelength",
            "element_spacing",
            "ap_user_distance",
            "irs_altitude",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ScenarioError(f"{name} must be finite and strictly positive, got {value!r}")
        if not (0.0 < self.ref_gain <= 1.0):
            raise ScenarioError(f"ref_gain must lie in (0, 1], got {self.ref_gain!r}")

    def replace(self, **changes) -> ScenarioParams:
        """Return a copy with ``changes`` applied.

        Changing ``num_elements`` without giving panel dimensions re-derives them;
        changing ``wavelength`` without ``element_spacing`` keeps half-wavelength spacing
        only if the current spacing was half-wavelength.
        """
        if "num_elements" in changes and not ({"panel_rows", "panel_cols"} & changes.keys()):
            changes["panel_rows"] = changes["panel_cols"] = None
        if "wavelength" in changes and "element_spacing" not in changes:
            if math.isclose(self.element_spacing, self.wavelength / 2.0):
                changes["element_spacing"] = None
        return dataclasses.replace(self, **changes)

    @property
    def user_ap_power_ratio(self) -> float:
        return self.user_power / self.ap_power


def default_scenario(**overrides) -> ScenarioParams:
    """Reference deployment: N=400 at 1.5 m altitude over a 50 m AP-user span.

    P_A = 20 dBm, P_U = 15 dBm, P_F = 0 dBm, sigma^2 = -80 dBm, sigma_F^2 = -70 dBm,
    beta = -30 dB, lambda = 0.4 m.
    """
    params = ScenarioParams()
    return params.replace(**overrides) if overrides else params


# Power fields accept ``<field>_dbm`` or ``<field>_mw``; ref_gain also accepts ``ref_gain_db``.
_POWER_FIELDS = ("ap_power", "user_power", "irs_amp_power", "rx_noise", "amp_noise")
_INT_FIELDS = ("num_elements", "panel_rows", "panel_cols")
_FLOAT_FIELDS = ("ref_gain", "wavelength", "element_spacing", "ap_user_distance", "irs_altitude")


def _coerce_entries(entries: Mapping[str, str], source: str) -> dict:
    fields: dict = {}
    for key, raw in entries.items():
        try:
            if key in _INT_FIELDS:
                value = float(raw)
                if value != int(value):
                    raise ValueError
                fields[key] = int(value)
            elif key in _FLOAT_FIELDS:
                fields[key] = float(raw)
            elif key == "ref_gain_db":
                fields["ref_gain"] = db_to_linear(float(raw))
            elif key.endswith("_dbm") and key[:-4] in _POWER_FIELDS:
                fields[key[:-4]] = dbm_to_linear(float(raw))
            elif key.endswith("_mw") and key[:-3] in _POWER_FIELDS:
                fields[key[:-3]] = float(raw)
            else:
                raise ScenarioError(f"{source}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(f"{source}: bad value for {key!r}: {raw!r}") from None
    return fields


def parse_scenario_text(text: str, source: str = "<scenario>") -> dict:
    """Parse ``key = value`` lines into :class:`ScenarioParams` keyword arguments.

    Blank lines and ``#`` comments are ignored. Returns only the keys present, so the
    result can be layered over defaults.
    """
    entries: dict[str, str] = {}
    seen_fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ScenarioError(f"{source}:{lineno}: empty key or value")
        field = key.removesuffix("_dbm").removesuffix("_mw").removesuffix("_db")
        if field in seen_fields:
            raise ScenarioError(
                f"{source}:{lineno}: {key!r} duplicates {seen_fields[field]!r}"
            )
        seen_fields[field] = key
        entries[key] = value
    return _coerce_entries(entries, source)


def load_scenario_file(path: str | os.PathLike, **overrides) -> ScenarioParams:
    """Load a scenario file on top of the defaults; ``overrides`` win over file values."""
    with open(path, encoding="utf-8") as fh:
        fields = parse_scenario_text(fh.read(), source=os.fspath(path))
    fields.update(overrides)
    return default_scenario(**fields)
