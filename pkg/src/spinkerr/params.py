"""Experimental inputs of the spinning resonator and the rates derived from them.

All derived rates are angular frequencies in rad/s. The resonator spins
counterclockwise; the drive direction only selects the sign of the
Sagnac-Fizeau shift (positive for a CW drive, negative for a CCW drive).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import hbar as HBAR

__all__ = [
    "PhysicalParams",
    "DerivedRates",
    "derive_rates",
    "CONFIG_KEYS",
    "parse_config",
    "load_config",
    "params_from_config",
]

DRIVES = ("cw", "ccw")


@dataclass(frozen=True)
class PhysicalParams:
    """Resonator and drive parameters in SI units.

    Defaults are the silica microtoroid set: 1550 nm, Q = 5e9,
    V_eff = 150 um^3, n2 = 2e-15 m^2/W, n0 = 1.4, P_in = 0.2 fW, r = 30 um.
    ``n1`` is the index entering the Sagnac shift; ``None`` means "same as n0".
    """

    wavelength: float = 1550e-9
    quality_factor: float = 5e9
    mode_volume: float = 150e-18
    n0: float = 1.4
    n2: float = 2e-15
    radius: float = 30e-6
    power: float = 0.2e-15
    omega: float = 0.0
    drive: str = "cw"
    n1: float | None = None
    dn1_dlambda: float = 0.0

    def __post_init__(self):
        positive = {
            "wavelength": self.wavelength,
            "quality_factor": self.quality_factor,
            "mode_volume": self.mode_volume,
            "n0": self.n0,
            "n2": self.n2,
            "radius": self.radius,
            "power": self.power,
            "n1": self.sagnac_index,
        }
        for name, value in positive.items():
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if not np.isfinite(self.omega) or self.omega < 0:
            raise ValueError(f"omega must be >= 0 rad/s, got {self.omega!r}")
        if not np.isfinite(self.dn1_dlambda):
            raise ValueError("dn1_dlambda must be finite")
        if self.drive not in DRIVES:
            raise ValueError(f"drive must be one of {DRIVES}, got {self.drive!r}")

    @property
    def sagnac_index(self) -> float:
        return self.n0 if self.n1 is None else self.n1

    def replace(self, **changes) -> "PhysicalParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class DerivedRates:
    """Rates entering the Hamiltonians, all in rad/s."""

    omega0: float
    gamma: float
    chi: float
    xi: float
    delta_f_abs: float
    delta_f: float

    def in_units_of_gamma(self) -> dict[str, float]:
        return {
            "chi": self.chi / self.gamma,
            "xi": self.xi / self.gamma,
            "delta_f_abs": self.delta_f_abs / self.gamma,
            "delta_f": self.delta_f / self.gamma,
        }


def sagnac_shift(p: PhysicalParams, omega0: float) -> float:
    """Magnitude of the Sagnac-Fizeau shift, dispersion term included."""
    n1 = p.sagnac_index
    factor = 1.0 - 1.0 / n1**2 - (p.wavelength / n1) * p.dn1_dlambda
    return abs(n1 * p.radius * p.omega * omega0 / SPEED_OF_LIGHT * factor)


def derive_rates(p: PhysicalParams) -> DerivedRates:
    """Derive omega0, gamma, chi, xi and the signed Sagnac shift.

    The drive frequency in the pump amplitude is approximated by omega0;
    the detunings are ~1e5 rad/s against omega0 ~1e15 rad/s.
    """
    omega0 = 2.0 * np.pi * SPEED_OF_LIGHT / p.wavelength
    gamma = omega0 / p.quality_factor
    chi = HBAR * omega0**2 * SPEED_OF_LIGHT * p.n2 / (p.n0**2 * p.mode_volume)
    xi = np.sqrt(gamma * p.power / (HBAR * omega0))
    shift = sagnac_shift(p, omega0)
    signed = shift if p.drive == "cw" else -shift
    return DerivedRates(
        omega0=float(omega0),
        gamma=float(gamma),
        chi=float(chi),
        xi=float(xi),
        delta_f_abs=float(shift),
        delta_f=float(signed),
    )


# Flat ``key = value`` configuration files. Physical keys map onto
# PhysicalParams fields; the rest are run settings used by the CLI.
_PHYSICAL_KEYS = {
    "wavelength_m": ("wavelength", float),
    "quality_factor": ("quality_factor", float),
    "mode_volume_m3": ("mode_volume", float),
    "n0": ("n0", float),
    "n1": ("n1", float),
    "n2_m2_per_w": ("n2", float),
    "radius_m": ("radius", float),
    "power_w": ("power", float),
    "omega_rad_s": ("omega", float),
    "dn1_dlambda_per_m": ("dn1_dlambda", float),
    "drive": ("drive", str),
}
_RUN_KEYS = {
    "j_over_gamma": float,
    "delta_l_over_gamma": float,
    "model": str,
    "engine": str,
    "nmax": int,
}
CONFIG_KEYS = tuple(_PHYSICAL_KEYS) + tuple(_RUN_KEYS)


def parse_config(text: str) -> dict[str, object]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in _PHYSICAL_KEYS:
            conv = _PHYSICAL_KEYS[key][1]
        elif key in _RUN_KEYS:
            conv = _RUN_KEYS[key]
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = conv(value.lower() if conv is str else value)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad value for {key!r}: {value!r}") from exc
    return out


def load_config(path: str | Path) -> dict[str, object]:
    return parse_config(Path(path).read_text())


def params_from_config(config: dict[str, object], base: PhysicalParams | None = None) -> PhysicalParams:
    """Build PhysicalParams from the physical keys of a parsed config."""
    base = PhysicalParams() if base is None else base
    changes = {
        _PHYSICAL_KEYS[key][0]: value
        for key, value in config.items()
        if key in _PHYSICAL_KEYS
    }
    return base.replace(**changes)
